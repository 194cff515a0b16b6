#pragma once

#include <cmath>
#include <cstddef>

namespace survest {

// Neumaier-compensated accumulator. Enumeration-based unbiasedness checks
// assert equality at 1e-12 over up to ~1e7 terms, which naive summation
// does not reliably deliver.
class KahanAccumulator {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        ++count_;
    }

    double value() const { return sum_ + comp_; }
    std::size_t count() const { return count_; }
    double mean() const { return count_ == 0 ? 0.0 : value() / static_cast<double>(count_); }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    std::size_t count_ = 0;
};

template <typename It>
double kahan_sum(It first, It last) {
    KahanAccumulator acc;
    for (; first != last; ++first) acc.add(*first);
    return acc.value();
}

template <typename Range>
double kahan_sum(const Range& r) {
    return kahan_sum(r.begin(), r.end());
}

template <typename Range>
double kahan_mean(const Range& r) {
    KahanAccumulator acc;
    for (double x : r) acc.add(x);
    return acc.mean();
}

}  // namespace survest
