#pragma once

#include <optional>
#include <string>
#include <vector>

#include "survest/population.hpp"

namespace survest {

enum class EstimatorKind {
    SampleMean,
    ProductD1,
    DualProductD2,
    RobsonD1u,
    SinghSinghD2u,
    HartleyRossD3u,
    TransformedRatioDstar,
    UnbiasedDu,
    PlainD,
};

/// Short CLI names: ybar, d1, d2, d1u, d2u, d3u, dstar, d, du.
std::string estimator_name(EstimatorKind kind);
std::optional<EstimatorKind> parse_estimator(const std::string& name);
const std::vector<EstimatorKind>& all_estimators();

/// True for estimators that need a TransformConfig (dstar, d, du).
bool requires_transform(EstimatorKind kind);

/// Design constants an estimator needs beyond the sample itself.
struct DesignContext {
    int N = 0;
    int n = 0;
    double Xbar = 0.0;
    std::optional<double> L;

    double Ubar() const;  // L - Xbar; throws MissingParam without L
};

/// Per-sample means. Ratio-type fields are flagged invalid instead of
/// throwing at construction, so one stats object serves every estimator;
/// the estimator that needs an invalid field throws.
struct SampleStats {
    double xbar = 0.0;
    double ybar = 0.0;
    double pbar = 0.0;       // mean of y_i * x_i
    double xstar_bar = 0.0;  // (N Xbar - n xbar) / (N - n)

    double rbar = 0.0;  // mean of y_i / x_i
    bool rbar_valid = false;
    double rstar_bar = 0.0;  // mean of y_i / x*_i
    bool rstar_valid = false;

    double ubar = 0.0;  // mean of L - x_i
    double vbar = 0.0;  // mean of y_i / u_i
    bool uv_valid = false;
};

SampleStats compute_sample_stats(const Population& pop, const Sample& s,
                                 const DesignContext& ctx);

double sample_mean(const SampleStats& s);
double product_d1(const SampleStats& s, double Xbar);
double dual_product_d2(const SampleStats& s, double Xbar);
double robson_d1u(const SampleStats& s, double Xbar, int N, int n);
double singh_singh_d2u(const SampleStats& s, double Xbar, int N, int n);
double hartley_ross_d3u(const SampleStats& s, double Xbar, int N, int n);
double dstar(const SampleStats& s, double Ubar);
double plain_d(const SampleStats& s, double Ubar);
double bias_hat(const SampleStats& s, int N, int n);
double unbiased_du(const SampleStats& s, double Ubar, int N, int n);

/// d2u with the coefficient (N-1)/(N(n-1)), i.e. without the factor n.
/// Kept only to demonstrate that this variant is biased; not part of the
/// estimator roster.
double singh_singh_d2u_literal(const SampleStats& s, double Xbar, int N, int n);

/// Dispatch by kind.
double evaluate(EstimatorKind kind, const SampleStats& s, const DesignContext& ctx);

/// Unbiased estimator of S_uv from one sample: n/(n-1) * (ybar - ubar*vbar).
double sample_suv(const SampleStats& s, int n);

}  // namespace survest
