#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace survest {

/// A finite population of paired (x, y) values. x is the auxiliary variate
/// (population mean known), y is the study variate whose mean is estimated.
struct Population {
    std::vector<double> x;
    std::vector<double> y;

    int size() const { return static_cast<int>(x.size()); }

    /// Throws InvalidDesign on length mismatch, N < 2, or non-finite values.
    void validate() const;
};

/// An SRSWOR sample: n distinct unit indices in [0, N), strictly increasing.
struct Sample {
    std::vector<int> indices;

    int size() const { return static_cast<int>(indices.size()); }
};

/// The scalar L of the transformation u_i = L - x_i.
struct TransformConfig {
    double L = 0.0;

    /// Throws DegenerateTransform unless L is strictly outside
    /// [min(x), max(x)], which guarantees every u_i is nonzero with
    /// constant sign.
    void validate(const Population& pop) const;
};

enum class VbarSource { Unset, Exact, Approximated };

/// Population/design constants feeding every analytic formula. Built either
/// from raw data (summarize) or from published summary constants
/// (params_from_constants). Fields that need the transformation (theta,
/// Vbar, Suv) are populated only when an L is supplied.
struct SummaryParams {
    int N = 0;
    int n = 0;
    double Ybar = 0.0;
    double Xbar = 0.0;
    double Sx2 = 0.0;
    double Sy2 = 0.0;
    double Sxy = 0.0;
    double rho = 0.0;
    bool rho_degenerate = false;  // Sx2 or Sy2 is zero; rho reported as 0
    double R = 0.0;               // Ybar / Xbar
    double Rstar_bar = 0.0;       // mean of y_i / x*_i over the population
    double g = 0.0;               // n / (N - n)
    double f = 0.0;               // n / N
    double Cx = 0.0;              // Sx / Xbar
    double Cy = 0.0;              // Sy / Ybar
    double beta = 0.0;            // rho * Sy / Sx

    // Transform-dependent fields.
    std::optional<double> L;
    double theta = 0.0;  // Xbar / (L - Xbar)
    double K = 0.0;      // rho * Cy / Cx
    double Vbar = 0.0;   // mean of v_i = y_i / u_i (exact) or Ybar/(L-Xbar)
    double Suv = 0.0;    // population covariance of (u, v); raw data only
    bool has_suv = false;
    VbarSource vbar_source = VbarSource::Unset;

    bool has_transform() const { return L.has_value(); }
};

/// u_i = L - x_i, elementwise. Throws DegenerateTransform if L lies in the
/// data range (some u_i would be zero or change sign).
std::vector<double> transform_u(const std::vector<double>& x_values, double L);

/// x*_i = (N Xbar - n x_i) / (N - n), elementwise.
std::vector<double> transform_x_star(const std::vector<double>& x_values, int N, int n,
                                     double Xbar);

/// Computes all SummaryParams from raw data. Dispersion statistics use the
/// N-1 denominator. With a config, theta/Vbar/Suv are exact.
SummaryParams summarize(const Population& pop, int n,
                        std::optional<TransformConfig> config = std::nullopt);

/// Builds SummaryParams from published constants (no raw data); derived
/// fields (g, f, Cx, Cy, beta, K, Sxy) are filled in.
SummaryParams params_from_constants(int N, int n, double Ybar, double Xbar, double Sx2,
                                    double Sy2, double rho, double R, double Rstar_bar);

/// Attaches transform-dependent fields under the approximation
/// Vbar ~= Ybar / (L - Xbar); marks vbar_source = Approximated.
SummaryParams with_transform_approx(const SummaryParams& base, double L);

/// C(N, n), throwing TooLarge if it exceeds cap.
std::uint64_t subset_count(int N, int n, std::uint64_t cap);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Visits every n-subset of [0, N) exactly once in lexicographic order.
void for_each_sample(int N, int n, const std::function<void(const Sample&)>& fn,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// Materialized version of for_each_sample (small designs only).
std::vector<Sample> enumerate_samples(int N, int n,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// One SRSWOR draw, uniform over all C(N, n) subsets, deterministic per seed.
Sample draw_sample(const Population& pop, int n, std::uint64_t seed);

/// Loads a population from CSV text: header exactly "x,y", one decimal pair
/// per line, blank lines ignored. Throws ParseError with a 1-based line.
Population population_from_csv(const std::string& text);
Population load_population_csv(const std::string& path);

}  // namespace survest
