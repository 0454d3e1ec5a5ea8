#include "gobm/simulate.hpp"

#include <cmath>
#include <ostream>

#include "gobm/rng.hpp"

namespace gobm {

LogSeries simulate_logpath_refined(const SimulationSpec& spec, std::size_t substeps) {
    if (!(spec.dt > 0.0)) throw invalid_parameter("simulate: dt must be > 0");
    if (substeps == 0) throw invalid_parameter("simulate: substeps must be >= 1");
    if (!std::isfinite(spec.x0)) throw invalid_parameter("simulate: non-finite x0");

    Rng rng(spec.seed, spec.stream);
    const double dt_fine = spec.dt / static_cast<double>(substeps);
    const double sqdt = std::sqrt(dt_fine);
    const GobmParams& p = spec.params;

    std::vector<double> values;
    values.reserve(spec.n + 1);
    values.push_back(spec.x0);
    double x = spec.x0;
    for (std::size_t k = 0; k < spec.n; ++k) {
        for (std::size_t j = 0; j < substeps; ++j)
            x += sqdt * p.sigma_at(x) * rng.next_gaussian() + p.drift_at(x) * dt_fine;
        values.push_back(x);
    }
    return LogSeries(std::move(values), spec.dt);
}

LogSeries simulate_logpath(const SimulationSpec& spec) {
    return simulate_logpath_refined(spec, 1);
}

std::vector<double> simulate_pricepath(const SimulationSpec& spec) {
    const LogSeries log_path = simulate_logpath(spec);
    std::vector<double> prices(log_path.values.size());
    for (std::size_t i = 0; i < prices.size(); ++i)
        prices[i] = std::exp(log_path.values[i]);
    return prices;
}

void write_path_csv(std::ostream& os, const LogSeries& path) {
    os << "step,time,logprice,price\n";
    os.precision(17);
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        const double t = static_cast<double>(i) * path.dt;
        os << i << ',' << t << ',' << path.values[i] << ','
           << std::exp(path.values[i]) << '\n';
    }
}

} // namespace gobm
