#pragma once

#include <cstdint>
#include <vector>

#include "survest/population.hpp"
#include "survest/rng.hpp"

namespace survest::testing {

// Four-unit population with perfectly negative correlation; small enough
// that every expectation can be enumerated by hand.
inline Population p0() {
    return Population{{2, 4, 6, 8}, {9, 7, 5, 3}};
}

// Deterministic random population with strictly positive x and y.
inline Population random_population(std::uint64_t seed, int N) {
    SplitMix64 rng(seed);
    const auto unit = [&] {
        return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    };
    Population pop;
    pop.x.resize(N);
    pop.y.resize(N);
    for (int i = 0; i < N; ++i) {
        pop.x[i] = 1.0 + 9.0 * unit();
        pop.y[i] = 0.5 + 19.5 * unit();
    }
    return pop;
}

}  // namespace survest::testing
