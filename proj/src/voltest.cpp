#include "gobm/voltest.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"

namespace gobm {

double q_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw invalid_parameter("q_alpha: alpha must be in (0, 1)");
    return std::sqrt(-2.0 * std::log(alpha));
}

EllipseTest confidence_ellipse(const FitReport& fit, double alpha) {
    if (!fit.estimable())
        throw invalid_parameter("confidence_ellipse: fit carries quality flags");
    if (!(fit.q_minus > 0.0) || !(fit.q_plus > 0.0))
        throw invalid_parameter("confidence_ellipse: zero occupation time");

    EllipseTest t;
    t.alpha = alpha;
    t.q_alpha = q_alpha(alpha);
    t.center_minus = fit.var_minus_hat;
    t.center_plus = fit.var_plus_hat;
    const double scale =
        t.q_alpha / std::sqrt(static_cast<double>(fit.n)) * std::sqrt(2.0 * fit.horizon());
    t.semi_axis_minus = scale * fit.var_minus_hat / std::sqrt(fit.q_minus);
    t.semi_axis_plus = scale * fit.var_plus_hat / std::sqrt(fit.q_plus);
    return t;
}

EllipseTest test_equal_volatility(const FitReport& fit, double alpha) {
    EllipseTest t = confidence_ellipse(fit, alpha);
    // The diagonal {(s, s)} meets the region iff some theta solves
    // a_- cos(theta) - a_+ sin(theta) = c_+ - c_-; the left side spans
    // [-sqrt(a_-^2 + a_+^2), +sqrt(a_-^2 + a_+^2)].
    const double gap = std::fabs(t.center_plus - t.center_minus);
    const double reach = std::hypot(t.semi_axis_minus, t.semi_axis_plus);
    t.reject = gap > reach;
    return t;
}

void write_ellipse_csv(std::ostream& os, const EllipseTest& test) {
    os << "theta,x,y\n";
    os.precision(12);
    for (int k = 0; k < 360; ++k) {
        const double theta = 2.0 * M_PI * static_cast<double>(k) / 360.0;
        os << theta << ',' << test.center_minus + test.semi_axis_minus * std::cos(theta)
           << ',' << test.center_plus + test.semi_axis_plus * std::sin(theta) << '\n';
    }
}

std::string ellipse_test_to_json(const EllipseTest& test) {
    nlohmann::json j;
    j["alpha"] = test.alpha;
    j["q_alpha"] = test.q_alpha;
    j["center"] = {test.center_minus, test.center_plus};
    j["semi_axes"] = {test.semi_axis_minus, test.semi_axis_plus};
    j["reject"] = test.reject;
    return j.dump();
}

} // namespace gobm
