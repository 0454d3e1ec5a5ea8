#pragma once

#include <optional>
#include <string>

#include "gobm/types.hpp"

namespace gobm {

/// Estimates at a fixed threshold plus diagnostics. Volatility variances are
/// reported raw (may be <= 0, flagged, never clamped); sigma hats are the
/// square roots where positive and NaN otherwise. Units are annualized.
struct FitReport {
    double r = 0.0;
    double var_minus_hat = 0.0; // raw sigma_-^2 estimate
    double var_plus_hat = 0.0;  // raw sigma_+^2 estimate
    double sigma_minus_hat = 0.0;
    double sigma_plus_hat = 0.0;
    double b_minus_hat = 0.0;
    double b_plus_hat = 0.0;
    double q_minus = 0.0; // occupation time below, years
    double q_plus = 0.0;  // occupation time at/above, years
    double local_time_hat = 0.0;
    std::size_t n = 0;
    double dt = 0.0;
    Regime regime = Regime::NullRecurrent0;
    std::optional<double> loglik;
    FitFlags flags;

    double horizon() const { return static_cast<double>(n) * dt; }
    double m() const { return std::exp(r); }
    /// Usable for likelihoods and the equal-volatility test.
    bool estimable() const { return flags.clean(); }
};

/// xi = X - r; dt is preserved.
LogSeries shift_series(const LogSeries& series, double r);

/// Occupation times (T/n) sum_{i=1..n} 1{xi_i on each side}, with xi_i = 0
/// assigned to the "+" side only, so q_minus + q_plus = T exactly.
std::pair<double, double> occupation_times(const LogSeries& xi);

/// The sums [xi^-, xi]_n and [xi^+, xi]_n with xi^+ = max(xi, 0) and
/// xi^- = -min(xi, 0). Returned raw; cov_plus - cov_minus equals the
/// realized quadratic variation exactly.
std::pair<double, double> signed_covariation(const LogSeries& xi);

/// One-sided realized-variance estimates of (sigma_-^2, sigma_+^2).
/// Values are raw; non-positive estimates and zero-occupation sides are
/// flagged rather than clamped or thrown.
struct VolatilityEstimate {
    double var_minus = 0.0;
    double var_plus = 0.0;
    FitFlags flags;
};
VolatilityEstimate estimate_volatility(const LogSeries& xi);

/// Discrete local time: sum of |xi_{i+1}| over strict sign changes.
double discrete_local_time(const LogSeries& xi);

/// Drift estimates beta_+- = +-(xi_n^+- - xi_0^+- - L/2) / q_+-.
/// A side with zero occupation time is reported as NaN.
std::pair<double, double> estimate_drift(const LogSeries& xi);

/// Shift, run all estimators at threshold r, classify the regime from the
/// drift estimates and attach flags. Deterministic; throws only on an
/// empty/invalid series.
FitReport fit_at_threshold(const LogSeries& series, double r);

/// Flat JSON object per the published schema (schema/fit_report.schema.json).
std::string fit_report_to_json(const FitReport& fit);

} // namespace gobm
