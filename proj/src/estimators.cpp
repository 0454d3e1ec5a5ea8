#include "gobm/estimators.hpp"

#include <cmath>
#include <limits>

#include "gobm/model.hpp"
#include "json.hpp"

namespace gobm {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline double pos_part(double v) { return v > 0.0 ? v : 0.0; }
inline double neg_part(double v) { return v < 0.0 ? -v : 0.0; }
} // namespace

LogSeries shift_series(const LogSeries& series, double r) {
    if (!std::isfinite(r)) throw invalid_parameter("shift_series: non-finite r");
    LogSeries out = series;
    for (double& v : out.values) v -= r;
    return out;
}

std::pair<double, double> occupation_times(const LogSeries& xi) {
    const std::size_t n = xi.n();
    if (n < 1) throw invalid_parameter("occupation_times: need n >= 1");
    std::size_t count_plus = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (xi.values[i] >= 0.0) ++count_plus;
    const double T = xi.horizon();
    const double q_plus = static_cast<double>(count_plus) * xi.dt;
    // q_minus is the partition complement T - q_plus by definition, so
    // the partition identity is exact by construction.
    return {T - q_plus, q_plus};
}

std::pair<double, double> signed_covariation(const LogSeries& xi) {
    const std::size_t n = xi.n();
    if (n < 1) throw invalid_parameter("signed_covariation: need n >= 1");
    double cov_minus = 0.0;
    double cov_plus = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = xi.values[i] - xi.values[i - 1];
        cov_plus += (pos_part(xi.values[i]) - pos_part(xi.values[i - 1])) * d;
        cov_minus += (neg_part(xi.values[i]) - neg_part(xi.values[i - 1])) * d;
    }
    return {cov_minus, cov_plus};
}

VolatilityEstimate estimate_volatility(const LogSeries& xi) {
    const auto [q_minus, q_plus] = occupation_times(xi);
    const auto [cov_minus, cov_plus] = signed_covariation(xi);

    VolatilityEstimate est;
    // The minus-side covariation accumulates -(d xi)^2 below the threshold,
    // so the variance estimate carries the opposite sign.
    if (q_minus > 0.0) {
        est.var_minus = -cov_minus / q_minus;
        if (!(est.var_minus > 0.0)) est.flags.set(FitFlag::NonPositiveVarMinus);
    } else {
        est.var_minus = kNaN;
        est.flags.set(FitFlag::MinusSideInestimable);
    }
    if (q_plus > 0.0) {
        est.var_plus = cov_plus / q_plus;
        if (!(est.var_plus > 0.0)) est.flags.set(FitFlag::NonPositiveVarPlus);
    } else {
        est.var_plus = kNaN;
        est.flags.set(FitFlag::PlusSideInestimable);
    }
    return est;
}

double discrete_local_time(const LogSeries& xi) {
    const std::size_t n = xi.n();
    if (n < 1) throw invalid_parameter("discrete_local_time: need n >= 1");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (xi.values[i] * xi.values[i + 1] < 0.0)
            sum += std::fabs(xi.values[i + 1]);
    return sum;
}

std::pair<double, double> estimate_drift(const LogSeries& xi) {
    const auto [q_minus, q_plus] = occupation_times(xi);
    const double half_local = discrete_local_time(xi) / 2.0;
    const double d_plus = pos_part(xi.back()) - pos_part(xi.front());
    const double d_minus = neg_part(xi.back()) - neg_part(xi.front());
    const double b_minus = q_minus > 0.0 ? -(d_minus - half_local) / q_minus : kNaN;
    const double b_plus = q_plus > 0.0 ? (d_plus - half_local) / q_plus : kNaN;
    return {b_minus, b_plus};
}

FitReport fit_at_threshold(const LogSeries& series, double r) {
    const LogSeries xi = shift_series(series, r);

    FitReport fit;
    fit.r = r;
    fit.n = xi.n();
    fit.dt = xi.dt;
    std::tie(fit.q_minus, fit.q_plus) = occupation_times(xi);

    const VolatilityEstimate vol = estimate_volatility(xi);
    fit.var_minus_hat = vol.var_minus;
    fit.var_plus_hat = vol.var_plus;
    fit.flags = vol.flags;
    fit.sigma_minus_hat = vol.var_minus > 0.0 ? std::sqrt(vol.var_minus) : kNaN;
    fit.sigma_plus_hat = vol.var_plus > 0.0 ? std::sqrt(vol.var_plus) : kNaN;

    fit.local_time_hat = discrete_local_time(xi);
    std::tie(fit.b_minus_hat, fit.b_plus_hat) = estimate_drift(xi);

    const double bm = std::isfinite(fit.b_minus_hat) ? fit.b_minus_hat : 0.0;
    const double bp = std::isfinite(fit.b_plus_hat) ? fit.b_plus_hat : 0.0;
    fit.regime = classify_regime(bm, bp);
    return fit;
}

std::string fit_report_to_json(const FitReport& fit) {
    nlohmann::json j;
    const auto num = [](double v) {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    j["r"] = fit.r;
    j["m"] = fit.m();
    j["sigma_minus_hat"] = num(fit.sigma_minus_hat);
    j["sigma_plus_hat"] = num(fit.sigma_plus_hat);
    j["var_minus_hat"] = num(fit.var_minus_hat);
    j["var_plus_hat"] = num(fit.var_plus_hat);
    j["b_minus_hat"] = num(fit.b_minus_hat);
    j["b_plus_hat"] = num(fit.b_plus_hat);
    j["q_minus"] = fit.q_minus;
    j["q_plus"] = fit.q_plus;
    j["local_time_hat"] = fit.local_time_hat;
    j["n"] = fit.n;
    j["dt"] = fit.dt;
    j["regime"] = to_string(fit.regime);
    j["loglik"] = fit.loglik ? nlohmann::json(*fit.loglik) : nlohmann::json(nullptr);
    j["flags"] = fit.flags.to_strings();
    return j.dump(2);
}

} // namespace gobm
