#include "gobm/model.hpp"

#include <cmath>

namespace gobm {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Ergodic: return "ergodic";
        case Regime::NullRecurrent0: return "null_recurrent_0";
        case Regime::NullRecurrent1: return "null_recurrent_1";
        case Regime::Transient0: return "transient_0";
        case Regime::Transient1: return "transient_1";
    }
    return "unknown";
}

std::vector<std::string> FitFlags::to_strings() const {
    std::vector<std::string> out;
    if (has(FitFlag::NonPositiveVarMinus)) out.push_back("non_positive_var_minus");
    if (has(FitFlag::NonPositiveVarPlus)) out.push_back("non_positive_var_plus");
    if (has(FitFlag::MinusSideInestimable)) out.push_back("minus_side_inestimable");
    if (has(FitFlag::PlusSideInestimable)) out.push_back("plus_side_inestimable");
    return out;
}

GobmParams::GobmParams(double sm, double sp, double bm, double bp, double r_)
    : sigma_minus(sm), sigma_plus(sp), b_minus(bm), b_plus(bp), r(r_) {
    if (!(sm > 0.0) || !(sp > 0.0))
        throw invalid_parameter("GobmParams: volatilities must be > 0");
    if (!std::isfinite(bm) || !std::isfinite(bp) || !std::isfinite(r_))
        throw invalid_parameter("GobmParams: non-finite parameter");
}

GobmParams GobmParams::from_mu(double sigma_minus, double sigma_plus,
                               double mu_minus, double mu_plus, double m) {
    if (!(m > 0.0)) throw invalid_parameter("GobmParams: price threshold must be > 0");
    auto [bm, bp] = derive_drifts(mu_minus, mu_plus, sigma_minus, sigma_plus);
    return GobmParams(sigma_minus, sigma_plus, bm, bp, std::log(m));
}

LogSeries::LogSeries(std::vector<double> vals, double dt_)
    : values(std::move(vals)), dt(dt_) {
    if (!(dt > 0.0)) throw invalid_parameter("LogSeries: dt must be > 0");
    if (values.empty()) throw invalid_parameter("LogSeries: empty series");
    for (double v : values)
        if (!std::isfinite(v)) throw invalid_parameter("LogSeries: non-finite value");
}

std::pair<double, double> derive_drifts(double mu_minus, double mu_plus,
                                        double sigma_minus, double sigma_plus) {
    if (!(sigma_minus > 0.0) || !(sigma_plus > 0.0))
        throw invalid_parameter("derive_drifts: volatilities must be > 0");
    return {mu_minus - sigma_minus * sigma_minus / 2.0,
            mu_plus - sigma_plus * sigma_plus / 2.0};
}

Regime classify_regime(double b_minus, double b_plus, double dead_band) {
    if (!std::isfinite(b_minus) || !std::isfinite(b_plus))
        throw invalid_parameter("classify_regime: non-finite drift");
    const auto sign = [dead_band](double b) -> int {
        if (std::fabs(b) <= dead_band) return 0;
        return b > 0.0 ? 1 : -1;
    };
    const int sm = sign(b_minus);
    const int sp = sign(b_plus);
    if (sm > 0 && sp < 0) return Regime::Ergodic;
    if (sm == 0 && sp == 0) return Regime::NullRecurrent0;
    if ((sm > 0 && sp == 0) || (sm == 0 && sp < 0)) return Regime::NullRecurrent1;
    if (sm < 0 && sp > 0) return Regime::Transient1;
    return Regime::Transient0;
}

namespace {

inline double gauss_density(double t, double u) {
    return std::exp(-u * u / (2.0 * t)) / std::sqrt(2.0 * M_PI * t);
}

} // namespace

double obm_density_zero_drift(double t, double x, double y,
                              double sigma_minus, double sigma_plus) {
    const double s_y = y >= 0.0 ? sigma_plus : sigma_minus;
    const double phi_x = x / (x >= 0.0 ? sigma_plus : sigma_minus);
    const double phi_y = y / s_y;
    const double kappa = (sigma_minus - sigma_plus) / (sigma_minus + sigma_plus);
    const double sgn_y = y >= 0.0 ? 1.0 : -1.0;
    const double direct = gauss_density(t, phi_y - phi_x);
    const double image = gauss_density(t, std::fabs(phi_x) + std::fabs(phi_y));
    return (direct + kappa * sgn_y * image) / s_y;
}

double obm_density(double dt, double x, double y, const GobmParams& params) {
    if (!(dt > 0.0)) throw invalid_parameter("obm_density: dt must be > 0");
    const double b = params.drift_at(x);
    return obm_density_zero_drift(dt, x - params.r, y - params.r - b * dt,
                                  params.sigma_minus, params.sigma_plus);
}

} // namespace gobm
