#include <cmath>

#include "doctest.h"
#include "survest/errors.hpp"
#include "survest/exact.hpp"
#include "survest/kahan.hpp"
#include "survest/montecarlo.hpp"
#include "survest/rng.hpp"
#include "survest/theory.hpp"
#include "test_helpers.hpp"

using namespace survest;
using survest::testing::p0;

namespace {

SummaryParams rao() {
    return params_from_constants(4, 2, 4.87, 43.9175, 31.8575, 4.3118, -0.7036, 0.1109,
                                 0.3099);
}

// A random but internally consistent parameter point with rho in (-1, 0)
// and an arbitrary transform attached.
SummaryParams random_params(SplitMix64& rng) {
    const auto unit = [&] { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; };
    const int N = 5 + static_cast<int>(rng.bounded(200));
    const int n = 2 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(N - 2)));
    const double Xbar = 5.0 + 95.0 * unit();
    const double Ybar = 1.0 + 30.0 * unit();
    const double Sx2 = 0.5 + 50.0 * unit();
    const double Sy2 = 0.5 + 20.0 * unit();
    const double rho = -0.05 - 0.9 * unit();
    SummaryParams p = params_from_constants(N, n, Ybar, Xbar, Sx2, Sy2, rho, Ybar / Xbar,
                                            (0.1 + unit()) * Ybar / Xbar);
    return with_transform_approx(p, Xbar + (2.0 + 50.0 * unit()));
}

}  // namespace

TEST_CASE("variance formulas at the published constants") {
    const SummaryParams p = rao();
    const double v_ybar = variance_first_order(EstimatorKind::SampleMean, p).variance;
    CHECK(v_ybar == doctest::Approx(0.25 * 4.3118).epsilon(1e-12));

    const double v_d1u = variance_first_order(EstimatorKind::RobsonD1u, p).variance;
    CHECK(relative_efficiency(v_d1u, v_ybar) == doctest::Approx(150.0).epsilon(0.001));

    const double v_d2u = variance_first_order(EstimatorKind::SinghSinghD2u, p).variance;
    CHECK(relative_efficiency(v_d2u, v_ybar) == doctest::Approx(190.8).epsilon(0.003));

    SUBCASE("maximum efficiency from the minimum variance") {
        const double re_max = relative_efficiency(min_variance_du(p), v_ybar);
        CHECK(re_max == doctest::Approx(100.0 / (1.0 - 0.7036 * 0.7036)).epsilon(1e-12));
        CHECK(re_max == doctest::Approx(198.04).epsilon(0.001));
    }
    SUBCASE("du efficiency near and far from the optimum") {
        const auto re_at = [&](double L) {
            const SummaryParams q = with_transform_approx(p, L);
            return relative_efficiency(
                variance_first_order(EstimatorKind::UnbiasedDu, q).variance, v_ybar);
        };
        CHECK(re_at(62.5) == doctest::Approx(198.02).epsilon(0.002));
        CHECK(re_at(300.0) == doctest::Approx(107.50).epsilon(0.001));
        CHECK(re_at(500.0) == doctest::Approx(104.15).epsilon(0.001));
    }
}

TEST_CASE("min variance limits") {
    SummaryParams p = rao();
    p.rho = 0.0;
    p.beta = 0.0;
    CHECK(min_variance_du(p) ==
          doctest::Approx(variance_first_order(EstimatorKind::SampleMean, p).variance));
    p.rho = -1.0;
    CHECK(min_variance_du(p) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
}

TEST_CASE("relative efficiency basics") {
    CHECK(relative_efficiency(2.0, 2.0) == 100.0);
    CHECK_THROWS_AS(relative_efficiency(0.0, 1.0), DivisionByZero);
    SplitMix64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const double a = 0.1 + static_cast<double>(rng.bounded(1000)) / 100.0;
        const double b = 0.1 + static_cast<double>(rng.bounded(1000)) / 100.0;
        CHECK(relative_efficiency(a, b) * relative_efficiency(b, a) ==
              doctest::Approx(10000.0).epsilon(1e-12));
    }
}

TEST_CASE("first-order bias of dstar") {
    SUBCASE("P0, L = 10: corrected expansion gives 1/15") {
        const SummaryParams p = summarize(p0(), 2, TransformConfig{10.0});
        CHECK(bias_first_order_dstar(p) == doctest::Approx(1.0 / 15.0).epsilon(1e-12));
    }
    SUBCASE("K = -theta is a root") {
        SummaryParams p = summarize(p0(), 2, TransformConfig{10.0});
        p.K = -p.theta;
        CHECK(bias_first_order_dstar(p) == 0.0);
    }
    SUBCASE("sign matches the Monte-Carlo bias of dstar") {
        // larger synthetic population, rho < 0, L above the data range
        Population pop;
        SplitMix64 rng(31);
        for (int i = 0; i < 60; ++i) {
            const double x = 10.0 + 0.5 * i;
            pop.x.push_back(x);
            pop.y.push_back(120.0 - 2.0 * x +
                            6.0 * std::sin(0.7 * i) );
        }
        const double L = 100.0;
        const SummaryParams p = summarize(pop, 12, TransformConfig{L});
        REQUIRE(p.rho < 0.0);
        const double fo = bias_first_order_dstar(p);
        const auto reports = simulate(pop, 12, {EstimatorKind::TransformedRatioDstar},
                                      TransformConfig{L}, MCOptions{100'000, 2024, 2});
        const double mc_bias = reports[0].mean - p.Ybar;
        REQUIRE(std::abs(mc_bias) > 4.0 * reports[0].std_error_of_mean);
        CHECK(std::signbit(mc_bias) == std::signbit(fo));
    }
}

TEST_CASE("exact bias identity for plain d") {
    const SummaryParams p = summarize(p0(), 2, TransformConfig{10.0});
    SUBCASE("matches enumeration on P0") {
        CHECK(bias_exact_plain_d(p) == doctest::Approx(0.3020833).epsilon(1e-6));
        const auto dist =
            exact_distribution(p0(), 2, EstimatorKind::PlainD, TransformConfig{10.0});
        CHECK(dist.mean == doctest::Approx(6.3020833).epsilon(1e-6));
        CHECK(dist.bias == doctest::Approx(bias_exact_plain_d(p)).epsilon(1e-12));
    }
    SUBCASE("zero when Suv = 0") {
        SummaryParams q = p;
        q.Suv = 0.0;
        CHECK(bias_exact_plain_d(q) == 0.0);
    }
    SUBCASE("requires raw data") {
        CHECK_THROWS_AS(bias_exact_plain_d(with_transform_approx(rao(), 62.5)), MissingParam);
    }
}

TEST_CASE("variance gap identity (perfect square) at random points") {
    SplitMix64 rng(404);
    for (int i = 0; i < 100; ++i) {
        const SummaryParams p = random_params(rng);
        const double gap =
            variance_first_order(EstimatorKind::UnbiasedDu, p).variance - min_variance_du(p);
        const double k = (1.0 - p.f) / p.n;
        const double sq = p.Vbar * std::sqrt(p.Sx2) + p.rho * std::sqrt(p.Sy2);
        const double expected = k * sq * sq;
        CHECK(gap == doctest::Approx(expected).scale(1).epsilon(1e-11));
        CHECK(gap >= -1e-12 * std::max(1.0, expected));
    }
}

TEST_CASE("du variance formula generalizes the d2u and dstar formulas") {
    SplitMix64 rng(808);
    for (int i = 0; i < 20; ++i) {
        SummaryParams p = random_params(rng);
        p.Vbar = p.Rstar_bar * p.g;
        CHECK(variance_first_order(EstimatorKind::UnbiasedDu, p).variance ==
              doctest::Approx(variance_first_order(EstimatorKind::SinghSinghD2u, p).variance)
                  .epsilon(1e-12));
        p.Vbar = p.theta * p.R;
        CHECK(variance_first_order(EstimatorKind::UnbiasedDu, p).variance ==
              doctest::Approx(
                  variance_first_order(EstimatorKind::TransformedRatioDstar, p).variance)
                  .epsilon(1e-12));
    }
}

TEST_CASE("efficiency conditions") {
    SUBCASE("published constants at L = 62.5") {
        const SummaryParams p = with_transform_approx(rao(), 62.5);
        const EfficiencyReport r = efficiency_conditions(p);
        CHECK(r.vbar == doctest::Approx(0.2621).epsilon(1e-3));
        // beta = -0.2589 < -Vbar/2 = -0.1310
        CHECK(r.cond_beats_ybar.holds);
        CHECK(r.cond_beats_ybar.margin == doctest::Approx(0.2589 - 0.1310).epsilon(0.01));
        // the optimum sits essentially on the Theorem-3.3 boundary
        CHECK(std::abs(r.thm_beats_dstar.margin) < 1e-4);
    }
    SUBCASE("optimum point Vbar = -beta") {
        SummaryParams p = with_transform_approx(rao(), 62.5);
        p.Vbar = -p.beta;
        const EfficiencyReport r = efficiency_conditions(p);
        CHECK(r.cond_beats_ybar.holds);
        CHECK(r.re_vs_ybar ==
              doctest::Approx(relative_efficiency(
                  min_variance_du(p),
                  variance_first_order(EstimatorKind::SampleMean, p).variance))
                  .epsilon(1e-12));
    }
    SUBCASE("band predicate implies du beats both ybar and d1u") {
        SplitMix64 rng(99);
        int band_hits = 0;
        for (int i = 0; i < 100; ++i) {
            const SummaryParams p = random_params(rng);
            const EfficiencyReport r = efficiency_conditions(p);
            const double v_du = variance_first_order(EstimatorKind::UnbiasedDu, p).variance;
            const double v_ybar = variance_first_order(EstimatorKind::SampleMean, p).variance;
            const double v_d1u = variance_first_order(EstimatorKind::RobsonD1u, p).variance;
            if (r.thm_beats_ybar_and_d1u.holds) {
                ++band_hits;
                CHECK(v_du < v_ybar);
                // the band bounds beta; beating d1u needs the Vbar < R side
                // condition on top of it
                if (p.Vbar < p.R) CHECK(v_du < v_d1u);
            }
            if (r.cond_beats_d1u_high.holds || r.cond_beats_d1u_low.holds)
                CHECK(v_du < v_d1u);
            // Theorem 3.3 predicate is exactly the variance comparison
            const double v_dstar =
                variance_first_order(EstimatorKind::TransformedRatioDstar, p).variance;
            if (std::abs(r.thm_beats_dstar.margin) > 1e-10)
                CHECK(r.thm_beats_dstar.holds == (v_dstar > v_du));
        }
        CHECK(band_hits > 0);  // the sweep must actually exercise the band
    }
}

TEST_CASE("optimal L") {
    SUBCASE("approximate closed form at the published constants") {
        CHECK(optimal_l_approx(rao()) == doctest::Approx(62.73).epsilon(0.001));
    }
    SUBCASE("exact solve on P0 lands at L = 11") {
        // at L = 11, u = (9,7,5,3) = y, so Vbar = 1 = -beta exactly
        const SummaryParams p = summarize(p0(), 2);
        const double L = optimal_l_exact(p0(), p);
        CHECK(L == doctest::Approx(11.0).epsilon(1e-7));
    }
    SUBCASE("exact solve agrees with a grid search") {
        const SummaryParams p = summarize(p0(), 2);
        const double L = optimal_l_exact(p0(), p);
        double best = 0.0, best_err = 1e300;
        for (double cand = 8.001; cand <= 50.0; cand += 0.001) {
            KahanAccumulator acc;
            for (int i = 0; i < 4; ++i) acc.add(p0().y[i] / (cand - p0().x[i]));
            const double err = std::abs(acc.mean() + p.beta);
            if (err < best_err) {
                best_err = err;
                best = cand;
            }
        }
        CHECK(L == doctest::Approx(best).epsilon(1e-3));
    }
    SUBCASE("beta >= 0 has no solution") {
        Population pos{{1, 2, 3, 4}, {2, 4, 5, 8}};  // positive correlation
        const SummaryParams p = summarize(pos, 2);
        REQUIRE(p.beta > 0.0);
        CHECK_THROWS_AS(optimal_l_approx(p), NoSolution);
        CHECK_THROWS_AS(optimal_l_exact(pos, p), NoSolution);
    }
}
