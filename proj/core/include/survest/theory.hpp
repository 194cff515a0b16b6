#pragma once

#include "survest/estimators.hpp"
#include "survest/population.hpp"

namespace survest {

enum class VarianceOrder { Exact, FirstOrder };

struct VarianceReport {
    EstimatorKind estimator;
    double variance = 0.0;
    VarianceOrder order = VarianceOrder::FirstOrder;
};

/// One inequality from the efficiency comparisons: whether it holds plus a
/// signed margin (positive = holds, magnitude = distance from the boundary).
struct ConditionResult {
    bool holds = false;
    double margin = 0.0;
};

struct EfficiencyReport {
    double L = 0.0;
    double vbar = 0.0;
    VbarSource vbar_source = VbarSource::Unset;
    double var_du = 0.0;
    double re_vs_ybar = 0.0;  // percent, > 100 means du wins
    double re_vs_d1u = 0.0;
    double re_vs_d2u = 0.0;
    ConditionResult cond_beats_ybar;         // beta < -Vbar/2
    ConditionResult cond_beats_d1u_high;     // beta < -(R/2)(1+Vbar/R), Vbar > R
    ConditionResult cond_beats_d1u_low;      // beta > -(R/2)(1+Vbar/R), Vbar < R
    ConditionResult thm_beats_ybar_and_d1u;  // two-sided band
    ConditionResult thm_beats_d2u;
    ConditionResult thm_beats_dstar;  // (theta R + beta)^2 > (Vbar + beta)^2
};

/// First-order design variance of an estimator (exact for the sample mean).
/// Supported kinds: SampleMean, RobsonD1u, SinghSinghD2u,
/// TransformedRatioDstar, UnbiasedDu. The du formula uses the squared-Vbar
/// bracket Sy^2 + Vbar^2 Sx^2 + 2 Vbar rho Sy Sx.
VarianceReport variance_first_order(EstimatorKind kind, const SummaryParams& p);

/// First-order bias of dstar: (1-f)/n * Ybar * theta * Cx^2 * (theta + K).
double bias_first_order_dstar(const SummaryParams& p);

/// Exact bias of plain d: -((N-1)/N) * Suv. Requires raw-data Suv.
double bias_exact_plain_d(const SummaryParams& p);

/// Minimum variance of du, attained at Vbar = -beta: (1-f)/n * Sy^2 (1-rho^2).
double min_variance_du(const SummaryParams& p);

/// 100 * var_baseline / var_candidate; > 100 means the candidate wins.
double relative_efficiency(double var_candidate, double var_baseline);

/// Evaluates every efficiency inequality at the transform carried by p
/// (which must have been built with an L).
EfficiencyReport efficiency_conditions(const SummaryParams& p);

enum class OptimalLMode { Approximate, Exact };

/// L solving Vbar(L) = -beta. Approximate mode inverts Ybar/(L-Xbar), giving
/// L = Xbar - Ybar/beta. Exact mode bisects sum_i y_i/(L-x_i) = -N beta over
/// L > max(x); requires the raw population.
double optimal_l_approx(const SummaryParams& p);
double optimal_l_exact(const Population& pop, const SummaryParams& p);

}  // namespace survest
