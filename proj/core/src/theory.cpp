#include "survest/theory.hpp"

#include <algorithm>
#include <cmath>

#include "survest/errors.hpp"
#include "survest/kahan.hpp"

namespace survest {

namespace {

double design_factor(const SummaryParams& p) {
    return (1.0 - p.f) / static_cast<double>(p.n);
}

void require_transform(const SummaryParams& p, const char* who) {
    if (!p.has_transform())
        throw MissingParam(std::string(who) + ": SummaryParams carries no transform (L/theta/Vbar)");
}

}  // namespace

VarianceReport variance_first_order(EstimatorKind kind, const SummaryParams& p) {
    const double SySx = std::sqrt(p.Sy2 * p.Sx2);
    const double k = design_factor(p);
    VarianceReport r{kind, 0.0, VarianceOrder::FirstOrder};
    switch (kind) {
        case EstimatorKind::SampleMean:
            r.variance = k * p.Sy2;
            r.order = VarianceOrder::Exact;
            return r;
        case EstimatorKind::RobsonD1u:
            r.variance = k * (p.Sy2 + p.R * p.R * p.Sx2 + 2.0 * p.R * p.rho * SySx);
            return r;
        case EstimatorKind::SinghSinghD2u: {
            const double rg = p.Rstar_bar * p.g;
            r.variance = k * (p.Sy2 + rg * rg * p.Sx2 + 2.0 * rg * p.rho * SySx);
            return r;
        }
        case EstimatorKind::TransformedRatioDstar: {
            require_transform(p, "variance(dstar)");
            const double tr = p.theta * p.R;
            r.variance = k * (p.Sy2 + tr * tr * p.Sx2 + 2.0 * tr * p.rho * SySx);
            return r;
        }
        case EstimatorKind::UnbiasedDu:
            require_transform(p, "variance(du)");
            r.variance = k * (p.Sy2 + p.Vbar * p.Vbar * p.Sx2 + 2.0 * p.Vbar * p.rho * SySx);
            return r;
        default:
            throw MissingParam("no first-order variance formula for " + estimator_name(kind));
    }
}

double bias_first_order_dstar(const SummaryParams& p) {
    require_transform(p, "bias(dstar)");
    return design_factor(p) * p.Ybar * p.theta * p.Cx * p.Cx * (p.theta + p.K);
}

double bias_exact_plain_d(const SummaryParams& p) {
    if (!p.has_suv) throw MissingParam("bias(d): Suv requires raw data with a transform");
    return -(static_cast<double>(p.N - 1) / static_cast<double>(p.N)) * p.Suv;
}

double min_variance_du(const SummaryParams& p) {
    return design_factor(p) * p.Sy2 * (1.0 - p.rho * p.rho);
}

double relative_efficiency(double var_candidate, double var_baseline) {
    if (var_candidate <= 0.0) throw DivisionByZero("relative_efficiency: candidate variance <= 0");
    return 100.0 * var_baseline / var_candidate;
}

EfficiencyReport efficiency_conditions(const SummaryParams& p) {
    require_transform(p, "efficiency_conditions");

    EfficiencyReport r;
    r.L = *p.L;
    r.vbar = p.Vbar;
    r.vbar_source = p.vbar_source;

    const double v_du = variance_first_order(EstimatorKind::UnbiasedDu, p).variance;
    r.var_du = v_du;
    r.re_vs_ybar =
        relative_efficiency(v_du, variance_first_order(EstimatorKind::SampleMean, p).variance);
    r.re_vs_d1u =
        relative_efficiency(v_du, variance_first_order(EstimatorKind::RobsonD1u, p).variance);
    r.re_vs_d2u =
        relative_efficiency(v_du, variance_first_order(EstimatorKind::SinghSinghD2u, p).variance);

    const double beta = p.beta;
    const double V = p.Vbar;
    const double R = p.R;

    // du beats ybar: beta < -Vbar/2
    r.cond_beats_ybar.margin = -V / 2.0 - beta;
    r.cond_beats_ybar.holds = r.cond_beats_ybar.margin > 0.0;

    // du beats d1u, upper branch: beta < -(R/2)(1 + Vbar/R) with Vbar > R
    const double d1u_bound = -(R + V) / 2.0;
    r.cond_beats_d1u_high.margin = std::min(d1u_bound - beta, V - R);
    r.cond_beats_d1u_high.holds = (beta < d1u_bound) && (V > R);

    // lower branch: beta > -(R/2)(1 + Vbar/R) with Vbar < R
    r.cond_beats_d1u_low.margin = std::min(beta - d1u_bound, R - V);
    r.cond_beats_d1u_low.holds = (beta > d1u_bound) && (V < R);

    // two-sided band: -(R/2)(1 + Vbar/R) < beta < -Vbar/2
    r.thm_beats_ybar_and_d1u.margin = std::min(beta - d1u_bound, -V / 2.0 - beta);
    r.thm_beats_ybar_and_d1u.holds = r.thm_beats_ybar_and_d1u.margin > 0.0;

    // du beats d2u: beta < -(Rstar/2)(g + Vbar/Rstar) with g < Vbar/Rstar
    if (p.Rstar_bar == 0.0) throw DivisionByZero("efficiency_conditions: Rstar_bar == 0");
    const double d2u_bound = -(p.g * p.Rstar_bar + V) / 2.0;
    r.thm_beats_d2u.margin = std::min(d2u_bound - beta, V / p.Rstar_bar - p.g);
    r.thm_beats_d2u.holds = (beta < d2u_bound) && (p.g < V / p.Rstar_bar);

    // du beats dstar: (theta R + beta)^2 > (Vbar + beta)^2
    const double a = p.theta * R + beta;
    const double b = V + beta;
    r.thm_beats_dstar.margin = a * a - b * b;
    r.thm_beats_dstar.holds = r.thm_beats_dstar.margin > 0.0;

    return r;
}

double optimal_l_approx(const SummaryParams& p) {
    if (p.beta >= 0.0)
        throw NoSolution("optimal L needs beta < 0 (got beta = " + std::to_string(p.beta) + ")");
    return p.Xbar - p.Ybar / p.beta;
}

double optimal_l_exact(const Population& pop, const SummaryParams& p) {
    if (p.beta >= 0.0)
        throw NoSolution("optimal L needs beta < 0 (got beta = " + std::to_string(p.beta) + ")");
    pop.validate();

    const double target = -p.beta;  // want Vbar(L) == -beta, target > 0
    const auto vbar_at = [&](double L) {
        KahanAccumulator acc;
        for (std::size_t i = 0; i < pop.x.size(); ++i) acc.add(pop.y[i] / (L - pop.x[i]));
        return acc.mean();
    };

    const double xmax = *std::max_element(pop.x.begin(), pop.x.end());
    const double scale = std::max(1.0, std::abs(xmax));
    double lo = xmax + 1e-9 * scale;
    double hi = std::max(optimal_l_approx(p), lo + scale);

    // Vbar(L) decreases toward 0 as L grows (y/(L-x) -> 0); grow hi until
    // the target is bracketed.
    int grow = 0;
    while (vbar_at(hi) > target) {
        hi = p.Xbar + (hi - p.Xbar) * 10.0;
        if (++grow > 60) throw BracketFailure("optimal_l_exact: could not bracket Vbar = -beta");
    }
    if (vbar_at(lo) < target)
        throw BracketFailure("optimal_l_exact: Vbar(max(x)+eps) already below -beta");

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 500; ++it) {
        mid = 0.5 * (lo + hi);
        const double h = vbar_at(mid) - target;
        if (std::abs(h) <= 1e-10) return mid;
        if (h > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw BracketFailure("optimal_l_exact: bisection did not reach |Vbar + beta| <= 1e-10");
}

}  // namespace survest
