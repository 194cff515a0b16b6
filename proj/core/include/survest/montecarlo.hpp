#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "survest/estimators.hpp"
#include "survest/population.hpp"

namespace survest {

struct MCReport {
    EstimatorKind estimator = EstimatorKind::SampleMean;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample variance over replicates (reps - 1)
    double std_error_of_mean = 0.0;
    std::uint64_t failed_reps = 0;
};

struct MCOptions {
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Seeded replication: replicate r draws one SRSWOR sample from
/// child_seed(seed, r) and evaluates every requested estimator on it
/// (common random numbers). Results are identical for any thread count:
/// replicate values land in a fixed slot and are reduced in index order.
std::vector<MCReport> simulate(const Population& pop, int n,
                               const std::vector<EstimatorKind>& kinds,
                               std::optional<TransformConfig> config, const MCOptions& opts);

}  // namespace survest
