#include "survest/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "survest/errors.hpp"
#include "survest/kahan.hpp"
#include "survest/rng.hpp"

namespace survest {

std::vector<MCReport> simulate(const Population& pop, int n,
                               const std::vector<EstimatorKind>& kinds,
                               std::optional<TransformConfig> config, const MCOptions& opts) {
    pop.validate();
    const int N = pop.size();
    if (n < 2 || n >= N) throw InvalidDesign("simulate: need 2 <= n < N");
    if (opts.reps < 2) throw InvalidDesign("simulate: need reps >= 2");
    if (config) config->validate(pop);
    for (EstimatorKind k : kinds)
        if (requires_transform(k) && !config)
            throw MissingParam(estimator_name(k) + " needs a TransformConfig");

    DesignContext ctx;
    ctx.N = N;
    ctx.n = n;
    ctx.Xbar = kahan_mean(pop.x);
    if (config) ctx.L = config->L;

    const std::size_t nk = kinds.size();
    const std::uint64_t reps = opts.reps;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> values(nk, std::vector<double>(reps, nan));

    const auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t r = lo; r < hi; ++r) {
            const Sample s = draw_sample(pop, n, child_seed(opts.seed, r));
            const SampleStats st = compute_sample_stats(pop, s, ctx);
            for (std::size_t k = 0; k < nk; ++k) {
                try {
                    values[k][r] = evaluate(kinds[k], st, ctx);
                } catch (const DivisionByZero&) {
                } catch (const DegenerateTransform&) {
                }
            }
        }
    };

    const int threads = std::max(1, opts.threads);
    if (threads == 1 || reps < 2 * static_cast<std::uint64_t>(threads)) {
        run_range(0, reps);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (reps + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
            const std::uint64_t hi = std::min(reps, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<MCReport> reports(nk);
    for (std::size_t k = 0; k < nk; ++k) {
        MCReport& rep = reports[k];
        rep.estimator = kinds[k];
        rep.reps = reps;
        rep.seed = opts.seed;

        KahanAccumulator mean_acc;
        for (double v : values[k])
            if (!std::isnan(v)) mean_acc.add(v);
        rep.failed_reps = reps - mean_acc.count();
        const std::uint64_t ok = mean_acc.count();
        if (ok >= 2) {
            rep.mean = mean_acc.mean();
            KahanAccumulator var_acc;
            for (double v : values[k]) {
                if (std::isnan(v)) continue;
                const double d = v - rep.mean;
                var_acc.add(d * d);
            }
            rep.variance = var_acc.value() / static_cast<double>(ok - 1);
            rep.std_error_of_mean = std::sqrt(rep.variance / static_cast<double>(ok));
        }
    }
    return reports;
}

}  // namespace survest
