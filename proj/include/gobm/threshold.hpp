#pragma once

#include <iosfwd>
#include <optional>

#include "gobm/estimators.hpp"

namespace gobm {

struct GridConfig {
    std::size_t k = 99;              // number of candidate thresholds
    double min_side_fraction = 0.05; // quantile floor per side
};

/// Candidate-threshold scan. Candidates are sorted by r, strictly
/// increasing; best_index points at the maximizer of the approximate
/// log-likelihood among unflagged candidates.
struct ThresholdScan {
    struct Candidate {
        double r = 0.0;
        FitReport fit;
        std::optional<double> loglik; // absent when the fit is flagged
    };
    std::vector<Candidate> candidates;
    std::size_t best_index = 0;
    double reference_loglik = 0.0; // constant-coefficient (Black-Scholes) fit

    const Candidate& best() const { return candidates[best_index]; }
};

/// k empirical quantiles (linear-interpolation convention) of the observed
/// log-prices at levels equally spaced in
/// [min_side_fraction, 1 - min_side_fraction], deduplicated.
/// Throws on a degenerate (constant) series.
std::vector<double> threshold_grid(const LogSeries& series, const GridConfig& cfg = {});

/// Approximate log-likelihood sum_i log p~(dt, X_i, X_{i+1}) under the
/// fitted (r, sigma_hat, b_hat). Requires positive variance estimates on
/// both sides.
double approx_loglik(const LogSeries& series, const FitReport& fit);

/// Gaussian-increment log-likelihood of the constant-coefficient model with
/// sigma^2 = realized variance / T and b = (X_n - X_0) / T.
/// Throws when the realized variance is zero.
double constant_model_loglik(const LogSeries& series);

/// Fit every candidate, evaluate the approximate log-likelihood, select the
/// maximizer; ties break toward the candidate closest to the median
/// log-price. Throws when no candidate is valid.
ThresholdScan select_threshold(const LogSeries& series, const GridConfig& cfg = {});

/// CSV export: r,m,loglik,sigma_minus,sigma_plus,b_minus,b_plus,q_minus_frac,flags.
void write_scan_csv(std::ostream& os, const ThresholdScan& scan);

/// One-line JSON summary with the best candidate and reference_loglik.
std::string scan_summary_json(const ThresholdScan& scan);

} // namespace gobm
