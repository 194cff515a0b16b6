// Command-line front end: point estimation, enumeration verification,
// efficiency sweeps over L, and seeded Monte-Carlo runs.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "output_table.hpp"
#include "survest/errors.hpp"
#include "survest/estimators.hpp"
#include "survest/exact.hpp"
#include "survest/kahan.hpp"
#include "survest/montecarlo.hpp"
#include "survest/params_io.hpp"
#include "survest/population.hpp"
#include "survest/theory.hpp"

namespace {

using namespace survest;
using survest::cli::Cell;
using survest::cli::OutputTable;
using survest::cli::TableFormat;

constexpr int kExitUsage = 2;
constexpr int kExitEstimator = 3;
constexpr int kExitTooLarge = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TableFormat parse_format(const std::string& f) {
    if (f == "human") return TableFormat::Human;
    if (f == "csv") return TableFormat::Csv;
    if (f == "tsv") return TableFormat::Tsv;
    throw UsageError("--format must be one of human, csv, tsv");
}

std::vector<EstimatorKind> parse_estimator_list(const std::string& csv, bool have_l) {
    std::vector<EstimatorKind> kinds;
    if (csv.empty()) {
        for (EstimatorKind k : all_estimators())
            if (have_l || !requires_transform(k)) kinds.push_back(k);
        return kinds;
    }
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto k = parse_estimator(tok);
        if (!k) throw UsageError("--estimators: unknown estimator '" + tok + "'");
        if (requires_transform(*k) && !have_l)
            throw UsageError("--estimators: '" + tok + "' needs --L");
        kinds.push_back(*k);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return kinds;
}

std::vector<double> parse_l_values(const std::string& list, const std::string& range) {
    if (list.empty() == range.empty())
        throw UsageError("give exactly one of --L-list and --L-range");
    std::vector<double> out;
    if (!list.empty()) {
        std::size_t pos = 0;
        while (pos <= list.size()) {
            const auto comma = list.find(',', pos);
            const std::string tok =
                list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw UsageError("--L-list: invalid number '" + tok + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    }
    double lo, hi, step;
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
        throw UsageError("--L-range must be LO:HI:STEP with STEP > 0");
    for (double l = lo; l <= hi + 1e-12 * std::abs(step); l += step) out.push_back(l);
    return out;
}

std::string rho_warning(EstimatorKind k, double rho) {
    const bool neg_path = k == EstimatorKind::UnbiasedDu || k == EstimatorKind::PlainD ||
                          k == EstimatorKind::TransformedRatioDstar ||
                          k == EstimatorKind::SinghSinghD2u || k == EstimatorKind::ProductD1 ||
                          k == EstimatorKind::DualProductD2 || k == EstimatorKind::RobsonD1u;
    if (neg_path && rho >= 0.0) return "warning: population rho >= 0";
    if (k == EstimatorKind::HartleyRossD3u && rho <= 0.0)
        return "warning: population rho <= 0";
    return "";
}

struct CommonArgs {
    std::string format = "human";
};

int cmd_estimate(const std::string& pop_file, int n, std::uint64_t seed,
                 std::optional<double> L, const std::string& estimators,
                 const std::string& format) {
    const TableFormat fmt = parse_format(format);
    const Population pop = load_population_csv(pop_file);
    std::optional<TransformConfig> config;
    if (L) {
        config = TransformConfig{*L};
        config->validate(pop);
    }
    const auto kinds = parse_estimator_list(estimators, L.has_value());
    if (n < 2 || n >= pop.size()) throw UsageError("--n must satisfy 2 <= n < N");

    const SummaryParams p = summarize(pop, n, config);
    const Sample s = draw_sample(pop, n, seed);
    DesignContext ctx{pop.size(), n, p.Xbar, L};
    const SampleStats st = compute_sample_stats(pop, s, ctx);

    OutputTable t;
    t.columns = {"estimator", "estimate", "notes"};
    for (EstimatorKind k : kinds) {
        double value;
        try {
            value = evaluate(k, st, ctx);
        } catch (const std::runtime_error& e) {
            std::cerr << "estimator " << estimator_name(k) << " failed: " << e.what() << "\n";
            return kExitEstimator;
        }
        t.add_row({estimator_name(k), value, rho_warning(k, p.rho)});
    }
    std::cout << t.render(fmt);
    return 0;
}

int cmd_verify(const std::string& pop_file, int n, std::optional<double> L,
               const std::string& estimators, double tol, const std::string& format) {
    const TableFormat fmt = parse_format(format);
    const Population pop = load_population_csv(pop_file);
    std::optional<TransformConfig> config;
    if (L) {
        config = TransformConfig{*L};
        config->validate(pop);
    }
    const auto kinds = parse_estimator_list(estimators, L.has_value());
    const double ybar = kahan_mean(pop.y);

    OutputTable t;
    t.columns = {"estimator", "exact_mean", "Ybar", "bias", "tol", "unbiased", "notes"};
    for (EstimatorKind k : kinds) {
        const ExactDistribution dist = exact_distribution(pop, n, k, config);
        std::string note;
        bool unbiased = false;
        if (dist.failed_samples > 0) {
            note = std::to_string(dist.failed_samples) + " samples failed";
        } else {
            unbiased = std::abs(dist.bias) <= tol * std::max(1.0, std::abs(ybar));
        }
        t.add_row({estimator_name(k), dist.mean, ybar, dist.bias, tol, unbiased, note});
    }
    std::cout << t.render(fmt);
    return 0;
}

int cmd_sweep(const std::string& pop_file, const std::string& params_file, int n,
              const std::string& l_list, const std::string& l_range, const std::string& vbar,
              const std::string& format) {
    const TableFormat fmt = parse_format(format);
    if (pop_file.empty() == params_file.empty())
        throw UsageError("give exactly one of --population and --params");
    if (vbar != "exact" && vbar != "approx")
        throw UsageError("--vbar must be 'exact' or 'approx'");
    const bool exact_vbar = vbar == "exact";
    if (exact_vbar && !params_file.empty())
        throw UsageError("--vbar exact needs raw data; use --population");

    std::optional<Population> pop;
    SummaryParams base;
    if (!pop_file.empty()) {
        pop = load_population_csv(pop_file);
        if (n < 2 || n >= pop->size()) throw UsageError("--n must satisfy 2 <= n < N");
        base = summarize(*pop, n);
    } else {
        base = load_params_file(params_file);
        if (n > 0 && n != base.n)
            throw UsageError("--n conflicts with the n in the params file");
    }

    const auto l_values = parse_l_values(l_list, l_range);
    OutputTable t;
    t.columns = {"L",      "vbar",   "var_du", "re_vs_ybar", "re_vs_d1u",
                 "re_vs_d2u", "thm_3_1", "thm_3_2", "thm_3_3",    "notes"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double L : l_values) {
        SummaryParams p;
        try {
            if (exact_vbar) {
                p = summarize(*pop, n, TransformConfig{L});
            } else if (pop) {
                p = with_transform_approx(base, L);
                TransformConfig{L}.validate(*pop);
            } else {
                p = with_transform_approx(base, L);
            }
        } catch (const DegenerateTransform&) {
            t.add_row({L, nan, nan, nan, nan, nan, false, false, false, "degenerate"});
            continue;
        }
        try {
            const EfficiencyReport r = efficiency_conditions(p);
            t.add_row({L, r.vbar, r.var_du, r.re_vs_ybar, r.re_vs_d1u, r.re_vs_d2u,
                       r.thm_beats_ybar_and_d1u.holds, r.thm_beats_d2u.holds,
                       r.thm_beats_dstar.holds,
                       p.vbar_source == VbarSource::Exact ? "vbar=exact" : "vbar=approx"});
        } catch (const DivisionByZero&) {
            // e.g. V(du) hits zero exactly when rho = -1 and Vbar = -beta
            t.add_row({L, p.Vbar, nan, nan, nan, nan, false, false, false, "zero-variance"});
        }
    }
    std::cout << t.render(fmt);
    return 0;
}

int cmd_simulate(const std::string& pop_file, int n, std::uint64_t reps, std::uint64_t seed,
                 std::optional<double> L, const std::string& estimators, int threads,
                 const std::string& format) {
    const TableFormat fmt = parse_format(format);
    const Population pop = load_population_csv(pop_file);
    if (n < 2 || n >= pop.size()) throw UsageError("--n must satisfy 2 <= n < N");
    if (reps < 2) throw UsageError("--reps must be >= 2");
    if (threads < 1) throw UsageError("--threads must be >= 1");
    std::optional<TransformConfig> config;
    if (L) {
        config = TransformConfig{*L};
        config->validate(pop);
    }
    const auto kinds = parse_estimator_list(estimators, L.has_value());
    const SummaryParams p = summarize(pop, n, config);

    const auto reports = simulate(pop, n, kinds, config, MCOptions{reps, seed, threads});

    OutputTable t;
    t.columns = {"estimator", "mc_mean", "mc_variance", "se",
                 "formula_variance", "mc_over_formula", "failed_reps"};
    for (const MCReport& r : reports) {
        Cell formula = std::string("");
        Cell ratio = std::string("");
        try {
            const double fv = variance_first_order(r.estimator, p).variance;
            formula = fv;
            if (fv > 0.0) ratio = r.variance / fv;
        } catch (const MissingParam&) {
        }
        t.add_row({estimator_name(r.estimator), r.mean, r.variance, r.std_error_of_mean,
                   formula, ratio, static_cast<long long>(r.failed_reps)});
    }
    std::cout << t.render(fmt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-population ratio/product estimator toolkit"};
    app.require_subcommand(1);

    std::string pop_file, params_file, estimators, l_list, l_range;
    std::string vbar = "approx", format = "human";
    int n = 0, threads = 1;
    std::uint64_t seed = 0, reps = 0;
    double L = 0.0, tol = 1e-12;

    auto* est = app.add_subcommand("estimate", "Draw one sample and compute point estimates");
    est->add_option("--population", pop_file, "population CSV file")->required();
    est->add_option("--n", n, "sample size")->required();
    est->add_option("--seed", seed, "RNG seed")->required();
    auto* est_l = est->add_option("--L", L, "transformation scalar");
    est->add_option("--estimators", estimators, "comma-separated estimator names");
    est->add_option("--format", format, "human|csv|tsv");

    auto* ver = app.add_subcommand("verify", "Enumerate all samples and check unbiasedness");
    ver->add_option("--population", pop_file, "population CSV file")->required();
    ver->add_option("--n", n, "sample size")->required();
    auto* ver_l = ver->add_option("--L", L, "transformation scalar");
    ver->add_option("--estimators", estimators, "comma-separated estimator names");
    ver->add_option("--tol", tol, "unbiasedness tolerance");
    ver->add_option("--format", format, "human|csv|tsv");

    auto* swp = app.add_subcommand("sweep", "Efficiency report over a grid of L values");
    swp->add_option("--population", pop_file, "population CSV file");
    swp->add_option("--params", params_file, "summary-constants file (key=value)");
    swp->add_option("--n", n, "sample size (population route)");
    swp->add_option("--L-list", l_list, "comma-separated L values");
    swp->add_option("--L-range", l_range, "LO:HI:STEP");
    swp->add_option("--vbar", vbar, "exact|approx Vbar computation");
    swp->add_option("--format", format, "human|csv|tsv");

    auto* sim = app.add_subcommand("simulate", "Seeded Monte-Carlo replication study");
    sim->add_option("--population", pop_file, "population CSV file")->required();
    sim->add_option("--n", n, "sample size")->required();
    sim->add_option("--reps", reps, "number of replicates")->required();
    sim->add_option("--seed", seed, "RNG seed")->required();
    auto* sim_l = sim->add_option("--L", L, "transformation scalar");
    sim->add_option("--estimators", estimators, "comma-separated estimator names");
    sim->add_option("--threads", threads, "worker threads (result is identical for any count)");
    sim->add_option("--format", format, "human|csv|tsv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (est->parsed())
            return cmd_estimate(pop_file, n, seed,
                                est_l->count() ? std::optional<double>(L) : std::nullopt, estimators,
                                format);
        if (ver->parsed())
            return cmd_verify(pop_file, n, ver_l->count() ? std::optional<double>(L) : std::nullopt,
                              estimators, tol, format);
        if (swp->parsed())
            return cmd_sweep(pop_file, params_file, n, l_list, l_range, vbar, format);
        if (sim->parsed())
            return cmd_simulate(pop_file, n, reps, seed,
                                sim_l->count() ? std::optional<double>(L) : std::nullopt, estimators,
                                threads, format);
    } catch (const TooLarge& e) {
        std::cerr << e.what() << "\n";
        return kExitTooLarge;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateTransform& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidDesign& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kExitEstimator;
    }
    return 0;
}
