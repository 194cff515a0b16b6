#include "survest/exact.hpp"

#include <cmath>

#include "survest/errors.hpp"
#include "survest/kahan.hpp"

namespace survest {

ExactDistribution exact_distribution_fn(const Population& pop, int n, const EstimatorFn& fn,
                                        std::optional<TransformConfig> config,
                                        std::uint64_t cap) {
    pop.validate();
    if (config) config->validate(pop);

    DesignContext ctx;
    ctx.N = pop.size();
    ctx.n = n;
    ctx.Xbar = kahan_mean(pop.x);
    if (config) ctx.L = config->L;

    ExactDistribution dist;
    for_each_sample(ctx.N, n,
                    [&](const Sample& s) {
                        const SampleStats st = compute_sample_stats(pop, s, ctx);
                        try {
                            dist.values.push_back(fn(st, ctx));
                        } catch (const DivisionByZero&) {
                            ++dist.failed_samples;
                        } catch (const DegenerateTransform&) {
                            ++dist.failed_samples;
                        }
                    },
                    cap);

    if (!dist.values.empty()) {
        dist.mean = kahan_mean(dist.values);
        KahanAccumulator var;
        for (double v : dist.values) {
            const double d = v - dist.mean;
            var.add(d * d);
        }
        // The subsets form the complete sampling distribution, so the
        // variance divides by the count, not count - 1.
        dist.variance = var.value() / static_cast<double>(dist.values.size());
        dist.bias = dist.mean - kahan_mean(pop.y);
        dist.mse = dist.variance + dist.bias * dist.bias;
    }
    return dist;
}

ExactDistribution exact_distribution(const Population& pop, int n, EstimatorKind kind,
                                     std::optional<TransformConfig> config, std::uint64_t cap) {
    if (requires_transform(kind) && !config)
        throw MissingParam(estimator_name(kind) + " needs a TransformConfig");
    ExactDistribution dist = exact_distribution_fn(
        pop, n,
        [kind](const SampleStats& st, const DesignContext& ctx) {
            return evaluate(kind, st, ctx);
        },
        config, cap);
    dist.estimator = kind;
    return dist;
}

UnbiasednessCheck verify_unbiased(const Population& pop, int n, EstimatorKind kind,
                                  std::optional<TransformConfig> config, double tol,
                                  std::uint64_t cap) {
    const ExactDistribution dist = exact_distribution(pop, n, kind, config, cap);
    if (dist.failed_samples != 0)
        throw DivisionByZero(estimator_name(kind) + ": " + std::to_string(dist.failed_samples) +
                             " samples failed; design expectation undefined");
    const double ybar = kahan_mean(pop.y);
    UnbiasednessCheck c;
    c.margin = dist.mean - ybar;
    c.unbiased = std::abs(c.margin) <= tol * std::max(1.0, std::abs(ybar));
    return c;
}

UnbiasednessCheck exact_suv_unbiasedness(const Population& pop, int n,
                                         const TransformConfig& config, std::uint64_t cap) {
    const SummaryParams p = summarize(pop, n, config);
    const ExactDistribution dist = exact_distribution_fn(
        pop, n,
        [n](const SampleStats& st, const DesignContext&) { return sample_suv(st, n); },
        config, cap);
    if (dist.failed_samples != 0)
        throw DivisionByZero("s_uv: " + std::to_string(dist.failed_samples) + " samples failed");
    UnbiasednessCheck c;
    const double scale = std::max(1.0, std::abs(p.Suv));
    c.margin = (dist.mean - p.Suv) / scale;
    c.unbiased = std::abs(c.margin) <= 1e-12;
    return c;
}

}  // namespace survest
