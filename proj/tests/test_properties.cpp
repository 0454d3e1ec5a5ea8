// Property-style tests over randomly generated series.

#include <cmath>

#include "doctest.h"
#include "gobm/rng.hpp"
#include "gobm/simulate.hpp"
#include "gobm/threshold.hpp"

using namespace gobm;

namespace {

// Random walk series with occasional threshold-hugging values.
LogSeries random_series(Rng& rng, std::size_t n, double dt) {
    std::vector<double> v(n + 1);
    double x = (rng.next_uniform() - 0.5) * 2.0;
    for (auto& vi : v) {
        vi = x;
        x += 0.3 * std::sqrt(dt) * rng.next_gaussian();
        if (rng.next_uniform() < 0.05) x = 0.0; // exact zeros exercise the convention
    }
    return LogSeries(std::move(v), dt);
}

} // namespace

TEST_CASE("occupation partition: q_- + q_+ == T exactly") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_uniform() * 400);
        const double dt = 0.001 + rng.next_uniform();
        const LogSeries xi = random_series(rng, n, dt);
        const auto [qm, qp] = occupation_times(xi);
        CHECK(qm == xi.horizon() - qp); // partition, exact by construction
        CHECK(qm + qp == doctest::Approx(xi.horizon()).epsilon(1e-15));
        CHECK(qm >= 0.0);
        CHECK(qp >= 0.0);
    }
}

TEST_CASE("covariation identity: cov_+ - cov_- equals the quadratic variation") {
    Rng rng(102);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_uniform() * 400);
        const LogSeries xi = random_series(rng, n, 1.0 / 252.0);
        const auto [cm, cp] = signed_covariation(xi);
        double qv = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const double d = xi.values[i] - xi.values[i - 1];
            qv += d * d;
        }
        CHECK(cp - cm == doctest::Approx(qv).epsilon(1e-12));
    }
}

TEST_CASE("shift equivariance of the whole fit") {
    Rng rng(103);
    for (int trial = 0; trial < 50; ++trial) {
        const LogSeries x = random_series(rng, 300, 1.0 / 252.0);
        const double r = (rng.next_uniform() - 0.5) * 0.4;
        const double c = (rng.next_uniform() - 0.5) * 10.0;

        LogSeries shifted = x;
        for (double& v : shifted.values) v += c;

        const FitReport a = fit_at_threshold(x, r);
        const FitReport b = fit_at_threshold(shifted, r + c);
        const auto same = [](double u, double v) {
            if (std::isnan(u) || std::isnan(v)) return std::isnan(u) && std::isnan(v);
            return u == doctest::Approx(v).epsilon(1e-9);
        };
        CHECK(a.q_minus == doctest::Approx(b.q_minus).epsilon(1e-12));
        CHECK(a.q_plus == doctest::Approx(b.q_plus).epsilon(1e-12));
        CHECK(same(a.var_minus_hat, b.var_minus_hat));
        CHECK(same(a.var_plus_hat, b.var_plus_hat));
        CHECK(same(a.local_time_hat, b.local_time_hat));
        CHECK(same(a.b_minus_hat, b.b_minus_hat));
        CHECK(same(a.b_plus_hat, b.b_plus_hat));
        CHECK(a.regime == b.regime);
    }
}

TEST_CASE("time-scaling equivariance: volatility invariant, drift scales by sqrt(c)") {
    // Viewing xi_k' = xi_k / sqrt(c) on the time step dt/c leaves the
    // variance estimates unchanged and multiplies drift estimates by sqrt(c).
    Rng rng(104);
    for (int trial = 0; trial < 50; ++trial) {
        const LogSeries xi = random_series(rng, 250, 1.0 / 252.0);
        const double c = 0.1 + rng.next_uniform() * 10.0;

        std::vector<double> scaled(xi.values.size());
        for (std::size_t i = 0; i < scaled.size(); ++i)
            scaled[i] = xi.values[i] / std::sqrt(c);
        const LogSeries zeta(std::move(scaled), xi.dt / c);

        const VolatilityEstimate v0 = estimate_volatility(xi);
        const VolatilityEstimate v1 = estimate_volatility(zeta);
        if (v0.flags.clean() && v1.flags.clean()) {
            CHECK(v1.var_minus == doctest::Approx(v0.var_minus).epsilon(1e-9));
            CHECK(v1.var_plus == doctest::Approx(v0.var_plus).epsilon(1e-9));
        }
        const auto [bm0, bp0] = estimate_drift(xi);
        const auto [bm1, bp1] = estimate_drift(zeta);
        if (std::isfinite(bm0))
            CHECK(bm1 == doctest::Approx(bm0 * std::sqrt(c)).epsilon(1e-9));
        if (std::isfinite(bp0))
            CHECK(bp1 == doctest::Approx(bp0 * std::sqrt(c)).epsilon(1e-9));
    }
}

TEST_CASE("threshold selection shifts with the data") {
    SimulationSpec spec;
    spec.params = GobmParams(0.8, 0.3, -0.32, -0.045, 0.0);
    spec.n = 700;
    spec.seed = 55;
    const LogSeries x = simulate_logpath(spec);
    const ThresholdScan base = select_threshold(x, {33, 0.05});

    const double c = 0.83;
    LogSeries shifted = x;
    for (double& v : shifted.values) v += c;
    const ThresholdScan moved = select_threshold(shifted, {33, 0.05});

    CHECK(moved.best().r - base.best().r == doctest::Approx(c).epsilon(1e-9));
    CHECK(*moved.best().loglik == doctest::Approx(*base.best().loglik).epsilon(1e-9));
    CHECK(moved.reference_loglik == doctest::Approx(base.reference_loglik).epsilon(1e-9));
}

TEST_CASE("drift estimator degeneracy without crossings") {
    Rng rng(105);
    for (int trial = 0; trial < 50; ++trial) {
        // strictly positive series: no crossings, L = 0
        std::vector<double> v(101);
        double x = 1.0 + rng.next_uniform();
        for (auto& vi : v) {
            vi = x;
            x = std::max(0.05, x + 0.02 * rng.next_gaussian());
        }
        const LogSeries xi(std::move(v), 1.0 / 252.0);
        CHECK(discrete_local_time(xi) == 0.0);
        const auto [bm, bp] = estimate_drift(xi);
        CHECK(std::isnan(bm));
        CHECK(bp == doctest::Approx((xi.back() - xi.front()) / xi.horizon()).epsilon(1e-12));
    }
}

TEST_CASE("volatility estimates converge under in-fill refinement") {
    // Nested observation of the same path at dt and dt/2: over many paths the
    // root-mean-square error of the variance estimate shrinks by about sqrt(2).
    const double sigma_m = 0.8, sigma_p = 0.3;
    const std::size_t n_paths = 400;
    double se_coarse = 0.0, se_fine = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        SimulationSpec spec;
        spec.params = GobmParams(sigma_m, sigma_p, 0.0, 0.0, 0.0);
        spec.n = 1000; // fine grid over T = 2y
        spec.dt = 2.0 / 1000.0;
        spec.seed = 808;
        spec.stream = i;
        const LogSeries fine = simulate_logpath(spec);
        std::vector<double> half;
        for (std::size_t k = 0; k < fine.values.size(); k += 2)
            half.push_back(fine.values[k]);
        const LogSeries coarse(std::move(half), 2.0 * spec.dt);

        const VolatilityEstimate ef = estimate_volatility(fine);
        const VolatilityEstimate ec = estimate_volatility(coarse);
        if (!ef.flags.clean() || !ec.flags.clean()) continue;
        se_fine += std::pow(ef.var_plus - 0.09, 2) + std::pow(ef.var_minus - 0.64, 2);
        se_coarse += std::pow(ec.var_plus - 0.09, 2) + std::pow(ec.var_minus - 0.64, 2);
        ++used;
    }
    REQUIRE(used > 300);
    const double ratio = std::sqrt(se_coarse / se_fine);
    CHECK(ratio > 1.15);
    CHECK(ratio < 1.75);
}

TEST_CASE("rng streams are deterministic and distinct") {
    Rng a(7, 3), b(7, 3), c(7, 4);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    Rng a2(7, 3);
    for (int i = 0; i < 100; ++i) differs |= a2.next_u64() != c.next_u64();
    CHECK(differs);
}

TEST_CASE("gaussian moments from the rng") {
    Rng rng(31337);
    const int n = 200000;
    double s = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_gaussian();
        s += z;
        s2 += z * z;
        s3 += z * z * z;
        s4 += z * z * z * z;
    }
    CHECK(std::fabs(s / n) < 0.01);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::fabs(s3 / n) < 0.05);
    CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}
