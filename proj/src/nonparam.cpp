#include "gobm/nonparam.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace gobm {

namespace {

double sample_sd(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (v.size() - 1));
}

double quantile_sorted(const std::vector<double>& sorted, double level) {
    const double h = level * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

} // namespace

double normal_reference_bandwidth(const std::vector<double>& values) {
    if (values.size() < 2)
        throw invalid_parameter("normal_reference_bandwidth: need at least 2 values");
    return 1.06 * sample_sd(values) *
           std::pow(static_cast<double>(values.size()), -0.2);
}

std::vector<double> default_curve_grid(const LogSeries& series, std::size_t points) {
    std::vector<double> sorted = series.values;
    std::sort(sorted.begin(), sorted.end());
    const double lo = quantile_sorted(sorted, 0.02);
    const double hi = quantile_sorted(sorted, 0.98);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(points - 1);
    return grid;
}

CurveEstimate nw_estimate(const LogSeries& series, double bandwidth,
                          const std::vector<double>& grid) {
    if (!(bandwidth > 0.0)) throw invalid_parameter("nw_estimate: bandwidth must be > 0");
    if (grid.empty()) throw invalid_parameter("nw_estimate: empty grid");
    const std::size_t n = series.n();
    if (n < 2) throw invalid_parameter("nw_estimate: need n >= 2");

    CurveEstimate out;
    out.grid = grid;
    out.bandwidth = bandwidth;
    out.sigma2.resize(grid.size(), 0.0);
    out.drift.resize(grid.size(), 0.0);
    out.missing.resize(grid.size(), false);

    for (std::size_t g = 0; g < grid.size(); ++g) {
        double mass = 0.0, num_drift = 0.0, num_var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = (series.values[i] - grid[g]) / bandwidth;
            const double w = std::exp(-0.5 * u * u);
            const double d = series.values[i + 1] - series.values[i];
            mass += w;
            num_drift += w * d;
            num_var += w * d * d;
        }
        if (mass < 1e-12) {
            out.missing[g] = true;
            continue;
        }
        out.drift[g] = num_drift / (series.dt * mass);
        out.sigma2[g] = num_var / (series.dt * mass);
    }
    return out;
}

void write_curve_csv(std::ostream& os, const CurveEstimate& curve) {
    os << "x,sigma2,sigma,drift,missing\n";
    os.precision(12);
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        os << curve.grid[i] << ',';
        if (!curve.missing[i])
            os << curve.sigma2[i] << ',' << std::sqrt(std::max(curve.sigma2[i], 0.0))
               << ',' << curve.drift[i];
        else
            os << ",,";
        os << ',' << (curve.missing[i] ? 1 : 0) << '\n';
    }
}

DensityTable kernel_density(const std::vector<double>& sample, std::size_t points) {
    if (sample.size() < 2)
        throw invalid_parameter("kernel_density: need at least 2 values");
    DensityTable table;
    table.bandwidth = normal_reference_bandwidth(sample);
    if (!(table.bandwidth > 0.0))
        throw invalid_parameter("kernel_density: degenerate sample (zero spread)");
    const auto [mn, mx] = std::minmax_element(sample.begin(), sample.end());
    const double lo = *mn - 3.0 * table.bandwidth;
    const double hi = *mx + 3.0 * table.bandwidth;
    table.x.resize(points);
    table.density.resize(points);
    const double norm =
        1.0 / (sample.size() * table.bandwidth * std::sqrt(2.0 * M_PI));
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(points - 1);
        double acc = 0.0;
        for (double s : sample) {
            const double u = (s - x) / table.bandwidth;
            acc += std::exp(-0.5 * u * u);
        }
        table.x[i] = x;
        table.density[i] = norm * acc;
    }
    return table;
}

void write_density_csv(std::ostream& os, const DensityTable& table) {
    os << "x,density\n";
    os.precision(12);
    for (std::size_t i = 0; i < table.x.size(); ++i)
        os << table.x[i] << ',' << table.density[i] << '\n';
}

} // namespace gobm
