#include "gobm/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "gobm/model.hpp"
#include "json.hpp"

namespace gobm {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double level) {
    // Linear interpolation between order statistics (the common "type 7").
    const double h = level * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median_of(const LogSeries& series) {
    std::vector<double> sorted = series.values;
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, 0.5);
}

} // namespace

std::vector<double> threshold_grid(const LogSeries& series, const GridConfig& cfg) {
    if (cfg.k < 1) throw invalid_parameter("threshold_grid: k must be >= 1");
    if (!(cfg.min_side_fraction >= 0.0) || !(cfg.min_side_fraction < 0.5))
        throw invalid_parameter("threshold_grid: min_side_fraction must be in [0, 0.5)");

    std::vector<double> sorted = series.values;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw invalid_parameter("threshold_grid: degenerate series (all values equal)");

    std::vector<double> grid;
    grid.reserve(cfg.k);
    for (std::size_t j = 0; j < cfg.k; ++j) {
        const double level =
            cfg.k == 1 ? 0.5
                       : cfg.min_side_fraction +
                             (1.0 - 2.0 * cfg.min_side_fraction) *
                                 static_cast<double>(j) / static_cast<double>(cfg.k - 1);
        grid.push_back(quantile_sorted(sorted, level));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

double approx_loglik(const LogSeries& series, const FitReport& fit) {
    if (!fit.estimable())
        throw invalid_parameter("approx_loglik: fit carries quality flags");
    const GobmParams params(fit.sigma_minus_hat, fit.sigma_plus_hat,
                            fit.b_minus_hat, fit.b_plus_hat, fit.r);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
        const double p =
            obm_density(series.dt, series.values[i], series.values[i + 1], params);
        if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
        sum += std::log(p);
    }
    return sum;
}

double constant_model_loglik(const LogSeries& series) {
    const std::size_t n = series.n();
    if (n < 2) throw invalid_parameter("constant_model_loglik: need n >= 2");
    const double T = series.horizon();
    double qv = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = series.values[i] - series.values[i - 1];
        qv += d * d;
    }
    if (!(qv > 0.0))
        throw invalid_parameter("constant_model_loglik: zero realized variance");
    const double var = qv / T;
    const double b = (series.back() - series.front()) / T;
    const double step_var = var * series.dt;
    double sum = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = series.values[i] - series.values[i - 1] - b * series.dt;
        sum += -0.5 * std::log(2.0 * M_PI * step_var) - d * d / (2.0 * step_var);
    }
    return sum;
}

ThresholdScan select_threshold(const LogSeries& series, const GridConfig& cfg) {
    const std::vector<double> grid = threshold_grid(series, cfg);
    const double median = median_of(series);

    ThresholdScan scan;
    scan.reference_loglik = constant_model_loglik(series);
    scan.candidates.reserve(grid.size());

    bool have_best = false;
    for (double r : grid) {
        ThresholdScan::Candidate cand;
        cand.r = r;
        cand.fit = fit_at_threshold(series, r);
        if (cand.fit.estimable()) {
            const double ll = approx_loglik(series, cand.fit);
            if (std::isfinite(ll)) {
                cand.loglik = ll;
                cand.fit.loglik = ll;
            }
        }
        scan.candidates.push_back(std::move(cand));

        const auto& c = scan.candidates.back();
        if (!c.loglik) continue;
        if (!have_best) {
            scan.best_index = scan.candidates.size() - 1;
            have_best = true;
            continue;
        }
        const auto& b = scan.candidates[scan.best_index];
        if (*c.loglik > *b.loglik ||
            (*c.loglik == *b.loglik &&
             std::fabs(c.r - median) < std::fabs(b.r - median)))
            scan.best_index = scan.candidates.size() - 1;
    }
    if (!have_best)
        throw std::runtime_error("select_threshold: no valid candidate in the grid");
    return scan;
}

void write_scan_csv(std::ostream& os, const ThresholdScan& scan) {
    os << "r,m,loglik,sigma_minus,sigma_plus,b_minus,b_plus,q_minus_frac,flags\n";
    os.precision(12);
    for (const auto& c : scan.candidates) {
        const FitReport& f = c.fit;
        os << c.r << ',' << f.m() << ',';
        if (c.loglik) os << *c.loglik;
        os << ',';
        if (std::isfinite(f.sigma_minus_hat)) os << f.sigma_minus_hat;
        os << ',';
        if (std::isfinite(f.sigma_plus_hat)) os << f.sigma_plus_hat;
        os << ',';
        if (std::isfinite(f.b_minus_hat)) os << f.b_minus_hat;
        os << ',';
        if (std::isfinite(f.b_plus_hat)) os << f.b_plus_hat;
        os << ',' << f.q_minus / f.horizon() << ',';
        bool first = true;
        for (const auto& s : f.flags.to_strings()) {
            if (!first) os << ';';
            os << s;
            first = false;
        }
        os << '\n';
    }
}

std::string scan_summary_json(const ThresholdScan& scan) {
    const auto& best = scan.best();
    nlohmann::json j;
    j["r_hat"] = best.r;
    j["m_hat"] = best.fit.m();
    j["loglik"] = best.loglik ? nlohmann::json(*best.loglik) : nlohmann::json(nullptr);
    j["reference_loglik"] = scan.reference_loglik;
    j["n_candidates"] = scan.candidates.size();
    j["sigma_minus_hat"] = best.fit.sigma_minus_hat;
    j["sigma_plus_hat"] = best.fit.sigma_plus_hat;
    j["b_minus_hat"] = best.fit.b_minus_hat;
    j["b_plus_hat"] = best.fit.b_plus_hat;
    return j.dump();
}

} // namespace gobm
