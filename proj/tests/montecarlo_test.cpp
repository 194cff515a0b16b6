#include <cmath>

#include "doctest.h"
#include "survest/errors.hpp"
#include "survest/montecarlo.hpp"
#include "survest/rng.hpp"
#include "test_helpers.hpp"

using namespace survest;
using survest::testing::p0;

TEST_CASE("simulate is deterministic and schedule independent") {
    const std::vector<EstimatorKind> kinds = {EstimatorKind::SampleMean,
                                              EstimatorKind::UnbiasedDu};
    const auto a = simulate(p0(), 2, kinds, TransformConfig{10.0}, MCOptions{5000, 77, 1});
    const auto b = simulate(p0(), 2, kinds, TransformConfig{10.0}, MCOptions{5000, 77, 1});
    const auto c = simulate(p0(), 2, kinds, TransformConfig{10.0}, MCOptions{5000, 77, 4});
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        CHECK(a[k].mean == b[k].mean);
        CHECK(a[k].variance == b[k].variance);
        CHECK(a[k].mean == c[k].mean);  // bit-identical across worker counts
        CHECK(a[k].variance == c[k].variance);
        CHECK(a[k].std_error_of_mean ==
              doctest::Approx(std::sqrt(a[k].variance / 5000)).epsilon(1e-14));
    }
}

TEST_CASE("common random numbers: both estimators see the same replicate sample") {
    // ybar simulated alone vs. alongside du must match exactly
    const auto alone =
        simulate(p0(), 2, {EstimatorKind::SampleMean}, std::nullopt, MCOptions{2000, 9, 1});
    const auto paired = simulate(p0(), 2, {EstimatorKind::UnbiasedDu, EstimatorKind::SampleMean},
                                 TransformConfig{10.0}, MCOptions{2000, 9, 1});
    CHECK(alone[0].mean == paired[1].mean);
    CHECK(alone[0].variance == paired[1].variance);
}

TEST_CASE("du MC mean agrees with the exact design expectation") {
    const auto r = simulate(p0(), 2, {EstimatorKind::UnbiasedDu}, TransformConfig{10.0},
                            MCOptions{1'000'000, 4242, 4});
    CHECK(r[0].failed_reps == 0);
    CHECK(std::abs(r[0].mean - 6.0) < 4.0 * r[0].std_error_of_mean);
}

TEST_CASE("doubling reps moves the mean by less than 6 SE of the smaller run") {
    for (EstimatorKind k :
         {EstimatorKind::SampleMean, EstimatorKind::RobsonD1u, EstimatorKind::UnbiasedDu}) {
        const auto small =
            simulate(p0(), 2, {k}, TransformConfig{10.0}, MCOptions{50'000, 31, 2});
        const auto big =
            simulate(p0(), 2, {k}, TransformConfig{10.0}, MCOptions{100'000, 31, 2});
        CHECK(std::abs(big[0].mean - small[0].mean) < 6.0 * small[0].std_error_of_mean);
    }
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(
        simulate(p0(), 2, {EstimatorKind::SampleMean}, std::nullopt, MCOptions{1, 1, 1}),
        InvalidDesign);
    CHECK_THROWS_AS(
        simulate(p0(), 5, {EstimatorKind::SampleMean}, std::nullopt, MCOptions{10, 1, 1}),
        InvalidDesign);
    CHECK_THROWS_AS(
        simulate(p0(), 2, {EstimatorKind::UnbiasedDu}, std::nullopt, MCOptions{10, 1, 1}),
        MissingParam);
    CHECK_THROWS_AS(simulate(p0(), 2, {EstimatorKind::UnbiasedDu}, TransformConfig{5.0},
                             MCOptions{10, 1, 1}),
                    DegenerateTransform);
}

TEST_CASE("child seeds differ across replicates") {
    CHECK(child_seed(1, 0) != child_seed(1, 1));
    CHECK(child_seed(1, 0) != child_seed(2, 0));
}
