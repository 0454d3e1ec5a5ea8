#pragma once

#include "gobm/types.hpp"

namespace gobm {

/// Log-price drifts from the appreciation rates: b = mu - sigma^2/2.
/// Throws invalid_parameter when a volatility is not strictly positive.
std::pair<double, double> derive_drifts(double mu_minus, double mu_plus,
                                        double sigma_minus, double sigma_plus);

/// Regime of the shifted log-price from the signs of the drift pair.
/// Zeros are compared exactly; |b| < dead_band is treated as zero when a
/// positive dead_band is supplied.
Regime classify_regime(double b_minus, double b_plus, double dead_band = 0.0);

/// Transition density of the zero-drift oscillating Brownian motion with
/// threshold at 0, via the skew-Brownian-motion transform: with
/// s(u) = sigma_- for u < 0 and sigma_+ for u >= 0, Phi(u) = u / s(u) and
/// kappa = (sigma_- - sigma_+) / (sigma_- + sigma_+),
///
///   p0_t(x, y) = [ g_t(Phi(y) - Phi(x))
///                  + kappa * sgn(y) * g_t(|Phi(x)| + |Phi(y)|) ] / s(y)
///
/// where g_t is the centered Gaussian density of variance t.
double obm_density_zero_drift(double t, double x, double y,
                              double sigma_minus, double sigma_plus);

/// Approximate transition density of the drifted process over a step of
/// length dt: the drift is frozen at the regime of the starting point x,
///
///   p~(dt, x, y) = p0(dt, x - r, y - r - b(x) dt).
///
/// Throws invalid_parameter for dt <= 0.
double obm_density(double dt, double x, double y, const GobmParams& params);

} // namespace gobm
