#include <cmath>

#include "doctest.h"
#include "gobm/model.hpp"
#include "quadrature.hpp"

using namespace gobm;

TEST_CASE("derive_drifts follows b = mu - sigma^2/2") {
    auto [bm, bp] = derive_drifts(0.0, 0.0, 0.80, 0.30);
    CHECK(bm == doctest::Approx(-0.32).epsilon(1e-14));
    CHECK(bp == doctest::Approx(-0.045).epsilon(1e-14));

    // inverse map recovers the inputs
    GobmParams p(0.80, 0.30, bm, bp, 0.0);
    CHECK(p.mu_minus() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(p.mu_plus() == doctest::Approx(0.0).epsilon(1e-14));

    auto [b2, _] = derive_drifts(0.1, 0.1, 1e-9, 1e-9);
    CHECK(b2 == doctest::Approx(0.1).epsilon(1e-9));

    CHECK_THROWS_AS(derive_drifts(0.0, 0.0, 0.0, 0.3), invalid_parameter);
    CHECK_THROWS_AS(derive_drifts(0.0, 0.0, 0.3, -0.1), invalid_parameter);
}

TEST_CASE("parameter maps keep m = exp(r)") {
    GobmParams p = GobmParams::from_mu(0.5, 0.3, 0.0, 0.0, 2.0);
    CHECK(p.r == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(p.m() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("classify_regime matches the sign table") {
    CHECK(classify_regime(0.5, -0.5) == Regime::Ergodic);
    CHECK(classify_regime(0.0, 0.0) == Regime::NullRecurrent0);
    CHECK(classify_regime(0.5, 0.0) == Regime::NullRecurrent1);
    CHECK(classify_regime(0.0, -0.5) == Regime::NullRecurrent1);
    CHECK(classify_regime(-0.1, 0.1) == Regime::Transient1);
    CHECK(classify_regime(0.1, 0.1) == Regime::Transient0);
    CHECK(classify_regime(-0.1, -0.1) == Regime::Transient0);
    CHECK(classify_regime(-0.1, 0.0) == Regime::Transient0);
    CHECK(classify_regime(0.0, 0.1) == Regime::Transient0);

    SUBCASE("dead band maps small values to zero") {
        CHECK(classify_regime(1e-6, -1e-6, 1e-3) == Regime::NullRecurrent0);
        CHECK(classify_regime(0.5, -1e-6, 1e-3) == Regime::NullRecurrent1);
    }

    SUBCASE("sign-flip symmetry across the anti-diagonal") {
        const double vals[] = {-0.7, -0.1, 0.0, 0.1, 0.7};
        for (double bm : vals)
            for (double bp : vals)
                CHECK(classify_regime(bm, bp) == classify_regime(-bp, -bm));
    }
}

TEST_CASE("obm_density reduces to the Gaussian when kappa = 0") {
    GobmParams p(1.0, 1.0, 0.0, 0.0, 0.0);
    CHECK(obm_density(1.0, 0.0, 0.0, p) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));

    // pointwise agreement with the Gaussian of mean x + b dt, variance sigma^2 dt
    GobmParams q(0.4, 0.4, 0.07, 0.07, 0.3);
    const double dt = 1.0 / 252.0;
    for (double x : {-0.5, 0.1, 0.3, 0.9}) {
        for (double y : {-0.4, 0.0, 0.3, 0.8}) {
            const double var = 0.4 * 0.4 * dt;
            const double u = y - x - 0.07 * dt;
            const double gauss = std::exp(-u * u / (2.0 * var)) / std::sqrt(2.0 * M_PI * var);
            CHECK(obm_density(dt, x, y, q) == doctest::Approx(gauss).epsilon(1e-12));
        }
    }
}

TEST_CASE("obm_density crossing mass matches (1+kappa)/2") {
    // sigma_- = 2, sigma_+ = 1, x at the threshold: P(X_dt >= r) = 2/3
    GobmParams p(2.0, 1.0, 0.0, 0.0, 0.0);
    const double mass_above = testutil::simpson(
        [&p](double y) { return obm_density(1.0, 0.0, y, p); }, 0.0, 30.0, 40000);
    CHECK(mass_above == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("obm_density integrates to one") {
    const double dts[] = {1.0 / 252.0, 0.1, 1.0};
    GobmParams sets[] = {GobmParams(0.8, 0.3, -0.32, -0.045, 0.0),
                         GobmParams(0.3, 0.7, 0.1, -0.2, 0.5),
                         GobmParams(1.0, 1.0, 0.0, 0.0, -1.0)};
    for (const auto& p : sets) {
        for (double dt : dts) {
            for (double x : {p.r - 0.4, p.r, p.r + 0.02}) {
                const double span = 10.0 * std::max(p.sigma_minus, p.sigma_plus) *
                                        std::sqrt(dt) +
                                    std::fabs(p.b_minus) * dt + std::fabs(p.b_plus) * dt;
                const double total = testutil::simpson_split(
                    [&](double y) { return obm_density(dt, x, y, p); }, x - span,
                    x + span, p.r + p.drift_at(x) * dt, 20000);
                CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("zero-drift density satisfies Chapman-Kolmogorov") {
    const double sm = 0.8, sp = 0.3;
    const double s = 0.4, t = 0.6;
    for (double x : {-0.3, 0.0, 0.2}) {
        for (double y : {-0.25, 0.05, 0.4}) {
            const double direct = obm_density_zero_drift(s + t, x, y, sm, sp);
            const double span = 10.0 * sm;
            const double composed = testutil::simpson_split(
                [&](double z) {
                    return obm_density_zero_drift(s, x, z, sm, sp) *
                           obm_density_zero_drift(t, z, y, sm, sp);
                },
                -span, span, 0.0, 8000);
            CHECK(composed == doctest::Approx(direct).epsilon(1e-4));
        }
    }
}

TEST_CASE("obm_density rejects non-positive dt") {
    GobmParams p(1.0, 1.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(obm_density(0.0, 0.0, 0.0, p), invalid_parameter);
    CHECK_THROWS_AS(obm_density(-1.0, 0.0, 0.0, p), invalid_parameter);
}

TEST_CASE("density is nonnegative across the kink") {
    GobmParams p(1.3, 0.2, 0.0, 0.0, 0.0);
    for (double x = -2.0; x <= 2.0; x += 0.17)
        for (double y = -2.0; y <= 2.0; y += 0.0913)
            CHECK(obm_density(0.5, x, y, p) >= 0.0);
}
