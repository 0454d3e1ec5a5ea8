#pragma once

#include <iosfwd>

#include "gobm/estimators.hpp"

namespace gobm {

/// Confidence-ellipse geometry for (sigma_-^2, sigma_+^2) and the
/// equal-volatility decision. The ellipse is axis-aligned, centered at the
/// raw variance estimates, with semi-axes
///   a_+- = (q_alpha / sqrt(n)) * sqrt(2 T) * var_+-_hat / sqrt(q_+-).
struct EllipseTest {
    double center_minus = 0.0;
    double center_plus = 0.0;
    double semi_axis_minus = 0.0;
    double semi_axis_plus = 0.0;
    double alpha = 0.0;
    double q_alpha = 0.0;
    bool reject = false;
};

/// chi^2(2) closed form: q_alpha = sqrt(-2 ln alpha), so that a centered
/// isotropic Gaussian pair G satisfies P[|G| <= q_alpha] = 1 - alpha.
double q_alpha(double alpha);

/// Ellipse geometry from a fit; requires positive variance estimates and
/// positive occupation times on both sides.
EllipseTest confidence_ellipse(const FitReport& fit, double alpha);

/// Rejects the null "sigma_- = sigma_+" iff the diagonal line {(s, s)}
/// misses the confidence region:
///   |var_plus_hat - var_minus_hat| > sqrt(a_-^2 + a_+^2).
EllipseTest test_equal_volatility(const FitReport& fit, double alpha);

/// Ellipse boundary as CSV `theta,x,y`, 360 samples.
void write_ellipse_csv(std::ostream& os, const EllipseTest& test);

/// JSON fragment stored under the `equal_vol_test` key of a fit report.
std::string ellipse_test_to_json(const EllipseTest& test);

} // namespace gobm
