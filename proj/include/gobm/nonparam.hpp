#pragma once

#include <iosfwd>

#include "gobm/types.hpp"

namespace gobm {

/// Nadaraya-Watson kernel estimates of the drift and squared-volatility
/// functions of the log-price, on a grid of evaluation points.
struct CurveEstimate {
    std::vector<double> grid;   // strictly increasing
    std::vector<double> sigma2; // >= 0 where not missing
    std::vector<double> drift;
    std::vector<bool> missing;  // kernel mass below threshold at this point
    double bandwidth = 0.0;
};

/// Normal reference rule: h = 1.06 * sd(X) * n^(-1/5).
double normal_reference_bandwidth(const std::vector<double>& values);

/// Default grid: 101 equally spaced points between the 2% and 98%
/// quantiles of the observations.
std::vector<double> default_curve_grid(const LogSeries& series, std::size_t points = 101);

/// Gaussian-kernel Nadaraya-Watson regression of increments on levels:
///   drift(x)  = sum K_h(X_i - x) dX_i   / (dt sum K_h(X_i - x))
///   sigma2(x) = sum K_h(X_i - x) dX_i^2 / (dt sum K_h(X_i - x))
/// Points with total kernel mass below 1e-12 are marked missing.
CurveEstimate nw_estimate(const LogSeries& series, double bandwidth,
                          const std::vector<double>& grid);

/// CSV export: x,sigma2,sigma,drift,missing.
void write_curve_csv(std::ostream& os, const CurveEstimate& curve);

/// Gaussian kernel density estimate of a sample on a uniform grid
/// (reused by the Monte Carlo harness for the estimate densities).
struct DensityTable {
    std::vector<double> x;
    std::vector<double> density;
    double bandwidth = 0.0;
};
DensityTable kernel_density(const std::vector<double>& sample, std::size_t points = 201);

void write_density_csv(std::ostream& os, const DensityTable& table);

} // namespace gobm
