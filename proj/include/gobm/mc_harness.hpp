#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "gobm/nonparam.hpp"
#include "gobm/threshold.hpp"
#include "gobm/voltest.hpp"

namespace gobm {

/// One simulation-study run: parameters -> paths -> (optional) threshold
/// search -> estimation -> equal-volatility test.
struct ExperimentSpec {
    GobmParams params;
    double s0 = 1.0;
    std::size_t n_paths = 1000;
    double years = 5.0;
    std::size_t observations_per_year = 252;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool search_threshold = true;     // false: fit at fixed_r
    double fixed_r = 0.0;
    GridConfig grid;
    std::size_t sim_substeps = 20;    // Euler refinement below the observation grid
    double qc_min_side_fraction = 0.05;
    unsigned n_threads = 0;           // 0: hardware concurrency
};

/// Per-path outcome. Excluded paths keep their exclusion reason and do not
/// enter the aggregates; the rejection count runs over all tested paths.
struct PathResult {
    std::size_t path_id = 0;
    double sigma_minus = 0.0;
    double sigma_plus = 0.0;
    double m_hat = 0.0;
    double b_minus = 0.0;
    double b_plus = 0.0;
    bool reject = false;
    bool tested = false;   // equal-volatility test was performed
    bool excluded = false; // failed qc / no valid candidate
    std::string exclusion_reason;
};

struct Aggregate {
    double mean = 0.0;
    double median = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
    std::size_t count = 0;
};

struct ExperimentSummary {
    ExperimentSpec spec;
    std::vector<PathResult> paths;
    std::size_t n_rejections = 0;
    std::size_t n_excluded = 0;
    double rejection_rate = 0.0; // n_rejections / n_paths exactly
    Aggregate sigma_minus, sigma_plus, m_hat, b_minus, b_plus;
};

/// Benchmark simulation-study parameter sets (1-based). mu_+- = 0, m = 1;
/// volatilities 0.80/0.30, 0.50/0.30, 0.30/0.30 per year.
GobmParams study_set_params(int set);

/// Deterministic given the spec: per-path streams come from
/// (seed, path index) and the reduction is by path index, so results do
/// not depend on the thread count or schedule. Per-path failures are
/// counted as exclusions, never abort the batch.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

/// Summary JSON (spec echo, rejection rate, aggregates).
std::string summary_to_json(const ExperimentSummary& summary);

/// Per-path CSV: path_id,sigma_minus,sigma_plus,m_hat,b_minus,b_plus,reject.
void write_paths_csv(std::ostream& os, const ExperimentSummary& summary);

/// Kernel-density tables for sigma_-, sigma_+ and m over included paths.
/// Throws when fewer than two paths are available.
struct DensityExport {
    DensityTable sigma_minus, sigma_plus, m_hat;
};
DensityExport export_densities(const ExperimentSummary& summary);

} // namespace gobm
