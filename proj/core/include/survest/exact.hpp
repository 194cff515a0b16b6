#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "survest/estimators.hpp"
#include "survest/population.hpp"

namespace survest {

/// The full SRSWOR sampling distribution of an estimator on a small
/// population: one value per subset, exact moments.
struct ExactDistribution {
    EstimatorKind estimator = EstimatorKind::SampleMean;
    std::vector<double> values;  // lexicographic subset order, failures skipped
    double mean = 0.0;
    double variance = 0.0;  // divide by the number of values (complete set)
    double bias = 0.0;      // mean - Ybar
    double mse = 0.0;
    std::uint64_t failed_samples = 0;
};

struct UnbiasednessCheck {
    bool unbiased = false;
    double margin = 0.0;  // signed exact bias
};

using EstimatorFn = std::function<double(const SampleStats&, const DesignContext&)>;

/// Evaluates an arbitrary per-sample statistic on every n-subset.
ExactDistribution exact_distribution_fn(const Population& pop, int n, const EstimatorFn& fn,
                                        std::optional<TransformConfig> config = std::nullopt,
                                        std::uint64_t cap = kDefaultEnumerationCap);

ExactDistribution exact_distribution(const Population& pop, int n, EstimatorKind kind,
                                     std::optional<TransformConfig> config = std::nullopt,
                                     std::uint64_t cap = kDefaultEnumerationCap);

/// True iff the exact design expectation equals Ybar within
/// tol * max(1, |Ybar|). Requires zero failed samples.
UnbiasednessCheck verify_unbiased(const Population& pop, int n, EstimatorKind kind,
                                  std::optional<TransformConfig> config, double tol,
                                  std::uint64_t cap = kDefaultEnumerationCap);

/// Checks E(s_uv) == S_uv by enumeration; margin is the relative error.
UnbiasednessCheck exact_suv_unbiasedness(const Population& pop, int n,
                                         const TransformConfig& config,
                                         std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace survest
