#include "gobm/mc_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "gobm/data_io.hpp"
#include "gobm/simulate.hpp"
#include "json.hpp"

namespace gobm {

GobmParams study_set_params(int set) {
    switch (set) {
        case 1: return GobmParams::from_mu(0.80, 0.30, 0.0, 0.0, 1.0);
        case 2: return GobmParams::from_mu(0.50, 0.30, 0.0, 0.0, 1.0);
        case 3: return GobmParams::from_mu(0.30, 0.30, 0.0, 0.0, 1.0);
        default: throw invalid_parameter("study_set_params: set must be 1, 2 or 3");
    }
}

namespace {

PathResult run_one_path(const ExperimentSpec& spec, std::size_t path_id) {
    PathResult res;
    res.path_id = path_id;

    SimulationSpec sim;
    sim.params = spec.params;
    sim.x0 = std::log(spec.s0);
    sim.n = static_cast<std::size_t>(
        std::llround(spec.years * static_cast<double>(spec.observations_per_year)));
    sim.dt = 1.0 / static_cast<double>(spec.observations_per_year);
    sim.seed = spec.seed;
    sim.stream = path_id;
    const LogSeries path = simulate_logpath_refined(sim, spec.sim_substeps);

    try {
        FitReport fit;
        if (spec.search_threshold) {
            const ThresholdScan scan = select_threshold(path, spec.grid);
            fit = scan.best().fit;
        } else {
            fit = fit_at_threshold(path, spec.fixed_r);
        }

        if (fit.estimable()) {
            const EllipseTest test = test_equal_volatility(fit, spec.alpha);
            res.reject = test.reject;
            res.tested = true;
        }

        const QcVerdict qc = qc_filter(fit, spec.qc_min_side_fraction);
        if (!qc.accept) {
            res.excluded = true;
            res.exclusion_reason = qc.reason;
        }
        res.sigma_minus = fit.sigma_minus_hat;
        res.sigma_plus = fit.sigma_plus_hat;
        res.m_hat = fit.m();
        res.b_minus = fit.b_minus_hat;
        res.b_plus = fit.b_plus_hat;
    } catch (const std::exception& e) {
        res.excluded = true;
        res.exclusion_reason = e.what();
    }
    return res;
}

Aggregate aggregate_of(std::vector<double> values) {
    Aggregate agg;
    agg.count = values.size();
    if (values.empty()) return agg;
    double sum = 0.0;
    for (double v : values) sum += v;
    agg.mean = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const auto quant = [&values](double level) {
        const double h = level * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (h - lo) * (values[hi] - values[lo]);
    };
    agg.median = quant(0.5);
    agg.q05 = quant(0.05);
    agg.q95 = quant(0.95);
    return agg;
}

} // namespace

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
    if (spec.n_paths < 1) throw invalid_parameter("run_experiment: n_paths must be >= 1");
    if (!(spec.years > 0.0)) throw invalid_parameter("run_experiment: years must be > 0");

    ExperimentSummary summary;
    summary.spec = spec;
    summary.paths.resize(spec.n_paths);

    unsigned n_threads = spec.n_threads;
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, spec.n_paths);

    // Work stealing over path indices; every result lands in its own slot,
    // so the outcome does not depend on the schedule.
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= spec.n_paths) break;
            summary.paths[i] = run_one_path(spec, i);
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<double> sm, sp, mh, bm, bp;
    for (const PathResult& p : summary.paths) {
        if (p.tested && p.reject) ++summary.n_rejections;
        if (p.excluded) {
            ++summary.n_excluded;
            continue;
        }
        sm.push_back(p.sigma_minus);
        sp.push_back(p.sigma_plus);
        mh.push_back(p.m_hat);
        bm.push_back(p.b_minus);
        bp.push_back(p.b_plus);
    }
    summary.rejection_rate = static_cast<double>(summary.n_rejections) /
                             static_cast<double>(spec.n_paths);
    summary.sigma_minus = aggregate_of(std::move(sm));
    summary.sigma_plus = aggregate_of(std::move(sp));
    summary.m_hat = aggregate_of(std::move(mh));
    summary.b_minus = aggregate_of(std::move(bm));
    summary.b_plus = aggregate_of(std::move(bp));
    return summary;
}

namespace {

nlohmann::json aggregate_json(const Aggregate& a) {
    return {{"mean", a.mean}, {"median", a.median}, {"q05", a.q05},
            {"q95", a.q95},   {"count", a.count}};
}

} // namespace

std::string summary_to_json(const ExperimentSummary& s) {
    nlohmann::json j;
    j["spec"] = {{"sigma_minus", s.spec.params.sigma_minus},
                 {"sigma_plus", s.spec.params.sigma_plus},
                 {"b_minus", s.spec.params.b_minus},
                 {"b_plus", s.spec.params.b_plus},
                 {"m", s.spec.params.m()},
                 {"s0", s.spec.s0},
                 {"n_paths", s.spec.n_paths},
                 {"years", s.spec.years},
                 {"observations_per_year", s.spec.observations_per_year},
                 {"alpha", s.spec.alpha},
                 {"seed", s.spec.seed},
                 {"search_threshold", s.spec.search_threshold},
                 {"sim_substeps", s.spec.sim_substeps}};
    j["rejection_rate"] = s.rejection_rate;
    j["n_rejections"] = s.n_rejections;
    j["n_excluded"] = s.n_excluded;
    j["sigma_minus"] = aggregate_json(s.sigma_minus);
    j["sigma_plus"] = aggregate_json(s.sigma_plus);
    j["m_hat"] = aggregate_json(s.m_hat);
    j["b_minus"] = aggregate_json(s.b_minus);
    j["b_plus"] = aggregate_json(s.b_plus);
    return j.dump(2);
}

void write_paths_csv(std::ostream& os, const ExperimentSummary& summary) {
    os << "path_id,sigma_minus,sigma_plus,m_hat,b_minus,b_plus,reject\n";
    os.precision(12);
    for (const PathResult& p : summary.paths) {
        os << p.path_id << ',';
        if (!p.excluded)
            os << p.sigma_minus << ',' << p.sigma_plus << ',' << p.m_hat << ','
               << p.b_minus << ',' << p.b_plus;
        else
            os << ",,,,";
        os << ',' << (p.reject ? 1 : 0) << '\n';
    }
}

DensityExport export_densities(const ExperimentSummary& summary) {
    std::vector<double> sm, sp, mh;
    for (const PathResult& p : summary.paths) {
        if (p.excluded) continue;
        sm.push_back(p.sigma_minus);
        sp.push_back(p.sigma_plus);
        mh.push_back(p.m_hat);
    }
    if (sm.size() < 2)
        throw std::runtime_error(
            "export_densities: need at least 2 included paths for a density");
    return {kernel_density(sm), kernel_density(sp), kernel_density(mh)};
}

} // namespace gobm
