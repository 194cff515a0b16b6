#include "survest/estimators.hpp"

#include <cmath>

#include "survest/errors.hpp"

namespace survest {

namespace {

// Bias-correction coefficient n(N-1)/(N(n-1)) shared by every unbiased
// Hartley-Ross-type estimator here. Variants sometimes printed without the
// leading n fail exact-unbiasedness under enumeration.
double hr_coeff(int N, int n) {
    if (n < 2) throw InvalidDesign("bias correction needs n >= 2");
    return static_cast<double>(n) * static_cast<double>(N - 1) /
           (static_cast<double>(N) * static_cast<double>(n - 1));
}

}  // namespace

std::string estimator_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::SampleMean: return "ybar";
        case EstimatorKind::ProductD1: return "d1";
        case EstimatorKind::DualProductD2: return "d2";
        case EstimatorKind::RobsonD1u: return "d1u";
        case EstimatorKind::SinghSinghD2u: return "d2u";
        case EstimatorKind::HartleyRossD3u: return "d3u";
        case EstimatorKind::TransformedRatioDstar: return "dstar";
        case EstimatorKind::PlainD: return "d";
        case EstimatorKind::UnbiasedDu: return "du";
    }
    return "?";
}

std::optional<EstimatorKind> parse_estimator(const std::string& name) {
    for (EstimatorKind k : all_estimators())
        if (estimator_name(k) == name) return k;
    return std::nullopt;
}

const std::vector<EstimatorKind>& all_estimators() {
    static const std::vector<EstimatorKind> kinds = {
        EstimatorKind::SampleMean,     EstimatorKind::ProductD1,
        EstimatorKind::DualProductD2,  EstimatorKind::RobsonD1u,
        EstimatorKind::SinghSinghD2u,  EstimatorKind::HartleyRossD3u,
        EstimatorKind::TransformedRatioDstar, EstimatorKind::PlainD,
        EstimatorKind::UnbiasedDu,
    };
    return kinds;
}

bool requires_transform(EstimatorKind kind) {
    return kind == EstimatorKind::TransformedRatioDstar || kind == EstimatorKind::PlainD ||
           kind == EstimatorKind::UnbiasedDu;
}

double DesignContext::Ubar() const {
    if (!L) throw MissingParam("estimator needs L but no TransformConfig was given");
    return *L - Xbar;
}

SampleStats compute_sample_stats(const Population& pop, const Sample& s,
                                 const DesignContext& ctx) {
    const int n = s.size();
    if (n < 2 || n >= ctx.N) throw InvalidDesign("sample stats: need 2 <= n < N");
    if (n != ctx.n) throw InvalidDesign("sample stats: sample size differs from design n");

    SampleStats st;
    double sx = 0, sy = 0, sp = 0, sr = 0, srs = 0, su = 0, sv = 0;
    bool rbar_ok = true, rstar_ok = true, uv_ok = ctx.L.has_value();
    const double NXbar = static_cast<double>(ctx.N) * ctx.Xbar;
    const double Nn = static_cast<double>(ctx.N - n);

    for (int idx : s.indices) {
        const double xi = pop.x[idx];
        const double yi = pop.y[idx];
        sx += xi;
        sy += yi;
        sp += xi * yi;
        if (xi == 0.0) rbar_ok = false; else sr += yi / xi;
        const double xsi = (NXbar - static_cast<double>(n) * xi) / Nn;
        if (xsi == 0.0) rstar_ok = false; else srs += yi / xsi;
        if (uv_ok) {
            const double ui = *ctx.L - xi;
            if (ui == 0.0) {
                uv_ok = false;
            } else {
                su += ui;
                sv += yi / ui;
            }
        }
    }
    const double dn = static_cast<double>(n);
    st.xbar = sx / dn;
    st.ybar = sy / dn;
    st.pbar = sp / dn;
    st.xstar_bar = (NXbar - dn * st.xbar) / Nn;
    st.rbar_valid = rbar_ok;
    if (rbar_ok) st.rbar = sr / dn;
    st.rstar_valid = rstar_ok;
    if (rstar_ok) st.rstar_bar = srs / dn;
    st.uv_valid = uv_ok;
    if (uv_ok) {
        st.ubar = su / dn;
        st.vbar = sv / dn;
    }
    return st;
}

double sample_mean(const SampleStats& s) { return s.ybar; }

double product_d1(const SampleStats& s, double Xbar) {
    if (Xbar == 0.0) throw DivisionByZero("d1: Xbar == 0");
    return s.ybar * s.xbar / Xbar;
}

double dual_product_d2(const SampleStats& s, double Xbar) {
    if (s.xstar_bar == 0.0) throw DivisionByZero("d2: xstar_bar == 0");
    return s.ybar * Xbar / s.xstar_bar;
}

double robson_d1u(const SampleStats& s, double Xbar, int N, int n) {
    if (Xbar == 0.0) throw DivisionByZero("d1u: Xbar == 0");
    const double c1 = hr_coeff(N, n);
    const double c2 = static_cast<double>(N - n) /
                      (static_cast<double>(N) * static_cast<double>(n - 1));
    return c1 * s.ybar * s.xbar / Xbar - c2 * s.pbar / Xbar;
}

double singh_singh_d2u(const SampleStats& s, double Xbar, int N, int n) {
    if (!s.rstar_valid) throw DivisionByZero("d2u: some x*_i == 0");
    return s.rstar_bar * Xbar + hr_coeff(N, n) * (s.ybar - s.rstar_bar * s.xstar_bar);
}

double singh_singh_d2u_literal(const SampleStats& s, double Xbar, int N, int n) {
    if (!s.rstar_valid) throw DivisionByZero("d2u literal: some x*_i == 0");
    if (n < 2) throw InvalidDesign("bias correction needs n >= 2");
    const double c = static_cast<double>(N - 1) /
                     (static_cast<double>(N) * static_cast<double>(n - 1));
    return s.rstar_bar * Xbar + c * (s.ybar - s.rstar_bar * s.xstar_bar);
}

double hartley_ross_d3u(const SampleStats& s, double Xbar, int N, int n) {
    if (!s.rbar_valid) throw DivisionByZero("d3u: some x_i == 0");
    return s.rbar * Xbar + hr_coeff(N, n) * (s.ybar - s.rbar * s.xbar);
}

double dstar(const SampleStats& s, double Ubar) {
    if (!s.uv_valid) throw DegenerateTransform("dstar: some u_i == 0 or L missing");
    if (s.ubar == 0.0) throw DivisionByZero("dstar: ubar == 0");
    return s.ybar * Ubar / s.ubar;
}

double plain_d(const SampleStats& s, double Ubar) {
    if (!s.uv_valid) throw DegenerateTransform("d: some u_i == 0 or L missing");
    return s.vbar * Ubar;
}

double bias_hat(const SampleStats& s, int N, int n) {
    if (!s.uv_valid) throw DegenerateTransform("bias_hat: some u_i == 0 or L missing");
    return -hr_coeff(N, n) * (s.ybar - s.ubar * s.vbar);
}

double unbiased_du(const SampleStats& s, double Ubar, int N, int n) {
    if (!s.uv_valid) throw DegenerateTransform("du: some u_i == 0 or L missing");
    // Same expression tree as plain_d(s) - bias_hat(s): the decomposition
    // holds bit-for-bit.
    return s.vbar * Ubar + hr_coeff(N, n) * (s.ybar - s.ubar * s.vbar);
}

double evaluate(EstimatorKind kind, const SampleStats& s, const DesignContext& ctx) {
    switch (kind) {
        case EstimatorKind::SampleMean: return sample_mean(s);
        case EstimatorKind::ProductD1: return product_d1(s, ctx.Xbar);
        case EstimatorKind::DualProductD2: return dual_product_d2(s, ctx.Xbar);
        case EstimatorKind::RobsonD1u: return robson_d1u(s, ctx.Xbar, ctx.N, ctx.n);
        case EstimatorKind::SinghSinghD2u: return singh_singh_d2u(s, ctx.Xbar, ctx.N, ctx.n);
        case EstimatorKind::HartleyRossD3u: return hartley_ross_d3u(s, ctx.Xbar, ctx.N, ctx.n);
        case EstimatorKind::TransformedRatioDstar: return dstar(s, ctx.Ubar());
        case EstimatorKind::PlainD: return plain_d(s, ctx.Ubar());
        case EstimatorKind::UnbiasedDu: return unbiased_du(s, ctx.Ubar(), ctx.N, ctx.n);
    }
    throw std::logic_error("unknown estimator kind");
}

double sample_suv(const SampleStats& s, int n) {
    if (!s.uv_valid) throw DegenerateTransform("s_uv: some u_i == 0 or L missing");
    if (n < 2) throw InvalidDesign("s_uv needs n >= 2");
    return static_cast<double>(n) / static_cast<double>(n - 1) * (s.ybar - s.ubar * s.vbar);
}

}  // namespace survest
