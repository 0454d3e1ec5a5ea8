#pragma once

#include <cstdint>
#include <iosfwd>

#include "gobm/types.hpp"

namespace gobm {

/// Inputs for one Euler path of the log-price.
///
/// The per-path stream contract: the generator state is derived from
/// (seed, stream) alone, so batches of paths can be produced in any order
/// or thread layout with identical results.
struct SimulationSpec {
    GobmParams params;
    double x0 = 0.0;          // initial log-price
    std::size_t n = 0;        // number of steps
    double dt = 1.0 / 252.0;  // step, years
    std::uint64_t seed = 0;
    std::uint64_t stream = 0; // path index within a batch
};

/// Explicit Euler scheme for the log-price:
///   X_{k+1} = X_k + sqrt(dt) sigma(X_k) eta_k + b(X_k) dt,
/// with the coefficients evaluated against the threshold (x = r counts as
/// the "+" side). Identical spec => bit-identical path.
LogSeries simulate_logpath(const SimulationSpec& spec);

/// Price path S = exp(X), elementwise over simulate_logpath.
std::vector<double> simulate_pricepath(const SimulationSpec& spec);

/// Euler path refined below the observation grid: `substeps` Euler steps
/// per recorded observation (substeps = 1 is simulate_logpath).
LogSeries simulate_logpath_refined(const SimulationSpec& spec, std::size_t substeps);

/// CSV export: header `step,time,logprice,price`, one row per observation.
void write_path_csv(std::ostream& os, const LogSeries& path);

} // namespace gobm
