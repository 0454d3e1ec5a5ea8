#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gobm {

/// Long-run behavior of the shifted log-price, determined by the signs
/// of the two drift values.
enum class Regime {
    Ergodic,        // b_- > 0, b_+ < 0 (mean-reverting)
    NullRecurrent0, // b_- = 0, b_+ = 0
    NullRecurrent1, // (b_- > 0, b_+ = 0) or (b_- = 0, b_+ < 0)
    Transient0,     // drifts push away on at least one side, not T1
    Transient1,     // b_- < 0, b_+ > 0 (pushed away from threshold on both sides)
};

std::string to_string(Regime r);

/// Full parameterization of the geometric oscillating Brownian motion.
///
/// Volatilities are per sqrt(year), drifts and appreciation rates per year.
/// The log-price threshold r and the price threshold m = exp(r) are kept in
/// sync; the log-price drifts b and the appreciation rates mu are related by
/// b = mu - sigma^2/2.
struct GobmParams {
    double sigma_minus = 0.0; // volatility below the threshold, > 0
    double sigma_plus = 0.0;  // volatility at or above the threshold, > 0
    double b_minus = 0.0;     // log-price drift below
    double b_plus = 0.0;      // log-price drift at or above
    double r = 0.0;           // log-price threshold

    GobmParams() = default;
    GobmParams(double sm, double sp, double bm, double bp, double r_);

    /// Build from appreciation rates of the price process.
    static GobmParams from_mu(double sigma_minus, double sigma_plus,
                              double mu_minus, double mu_plus, double m);

    double m() const { return std::exp(r); }
    double mu_minus() const { return b_minus + sigma_minus * sigma_minus / 2.0; }
    double mu_plus() const { return b_plus + sigma_plus * sigma_plus / 2.0; }

    double sigma_at(double x) const { return x >= r ? sigma_plus : sigma_minus; }
    double drift_at(double x) const { return x >= r ? b_plus : b_minus; }
};

/// Uniformly sampled log-price observations X_0..X_n with time step dt
/// (in years). The horizon is T = n * dt.
struct LogSeries {
    std::vector<double> values;
    double dt = 0.0;

    LogSeries() = default;
    LogSeries(std::vector<double> vals, double dt_);

    std::size_t n() const { return values.empty() ? 0 : values.size() - 1; }
    double horizon() const { return static_cast<double>(n()) * dt; }
    double front() const { return values.front(); }
    double back() const { return values.back(); }
};

/// Quality flags attached to a fit.
enum class FitFlag : unsigned {
    NonPositiveVarMinus = 1u << 0,
    NonPositiveVarPlus = 1u << 1,
    MinusSideInestimable = 1u << 2, // zero occupation time below
    PlusSideInestimable = 1u << 3,  // zero occupation time above
};

struct FitFlags {
    unsigned bits = 0;

    void set(FitFlag f) { bits |= static_cast<unsigned>(f); }
    bool has(FitFlag f) const { return bits & static_cast<unsigned>(f); }
    bool any() const { return bits != 0; }
    bool clean() const { return bits == 0; }
    std::vector<std::string> to_strings() const;
};

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace gobm
