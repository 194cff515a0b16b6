#include "survest/population.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "survest/errors.hpp"
#include "survest/kahan.hpp"
#include "survest/rng.hpp"

namespace survest {

void Population::validate() const {
    if (x.size() != y.size())
        throw InvalidDesign("population: x and y lengths differ");
    if (x.size() < 2)
        throw InvalidDesign("population: need N >= 2");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw InvalidDesign("population: non-finite value at unit " + std::to_string(i));
    }
}

void TransformConfig::validate(const Population& pop) const {
    const auto [lo, hi] = std::minmax_element(pop.x.begin(), pop.x.end());
    if (L >= *lo && L <= *hi)
        throw DegenerateTransform("L = " + std::to_string(L) + " lies inside the x range [" +
                                  std::to_string(*lo) + ", " + std::to_string(*hi) + "]");
}

std::vector<double> transform_u(const std::vector<double>& x_values, double L) {
    const auto [lo, hi] = std::minmax_element(x_values.begin(), x_values.end());
    if (L >= *lo && L <= *hi)
        throw DegenerateTransform("L = " + std::to_string(L) + " lies inside the x range");
    std::vector<double> u(x_values.size());
    for (std::size_t i = 0; i < x_values.size(); ++i) u[i] = L - x_values[i];
    return u;
}

std::vector<double> transform_x_star(const std::vector<double>& x_values, int N, int n,
                                     double Xbar) {
    if (n >= N) throw InvalidDesign("transform_x_star: need n < N");
    std::vector<double> xs(x_values.size());
    const double num0 = static_cast<double>(N) * Xbar;
    const double denom = static_cast<double>(N - n);
    for (std::size_t i = 0; i < x_values.size(); ++i)
        xs[i] = (num0 - static_cast<double>(n) * x_values[i]) / denom;
    return xs;
}

SummaryParams summarize(const Population& pop, int n, std::optional<TransformConfig> config) {
    pop.validate();
    const int N = pop.size();
    if (n < 2 || n >= N) throw InvalidDesign("summarize: need 2 <= n < N");

    SummaryParams p;
    p.N = N;
    p.n = n;
    p.Xbar = kahan_mean(pop.x);
    p.Ybar = kahan_mean(pop.y);

    KahanAccumulator sxx, syy, sxy;
    for (int i = 0; i < N; ++i) {
        const double dx = pop.x[i] - p.Xbar;
        const double dy = pop.y[i] - p.Ybar;
        sxx.add(dx * dx);
        syy.add(dy * dy);
        sxy.add(dx * dy);
    }
    const double denom = static_cast<double>(N - 1);
    p.Sx2 = sxx.value() / denom;
    p.Sy2 = syy.value() / denom;
    p.Sxy = sxy.value() / denom;

    if (p.Sx2 > 0.0 && p.Sy2 > 0.0) {
        p.rho = p.Sxy / std::sqrt(p.Sx2 * p.Sy2);
        p.beta = p.rho * std::sqrt(p.Sy2 / p.Sx2);
    } else {
        p.rho = 0.0;
        p.beta = 0.0;
        p.rho_degenerate = true;
    }

    if (p.Xbar == 0.0) throw DivisionByZero("summarize: Xbar == 0, R and Cx undefined");
    if (p.Ybar == 0.0) throw DivisionByZero("summarize: Ybar == 0, Cy undefined");
    p.R = p.Ybar / p.Xbar;
    p.Cx = std::sqrt(p.Sx2) / p.Xbar;
    p.Cy = std::sqrt(p.Sy2) / p.Ybar;
    p.g = static_cast<double>(n) / static_cast<double>(N - n);
    p.f = static_cast<double>(n) / static_cast<double>(N);

    const auto xstar = transform_x_star(pop.x, N, n, p.Xbar);
    KahanAccumulator rstar;
    for (int i = 0; i < N; ++i) {
        if (xstar[i] == 0.0)
            throw DivisionByZero("summarize: x*_i == 0 at unit " + std::to_string(i));
        rstar.add(pop.y[i] / xstar[i]);
    }
    p.Rstar_bar = rstar.mean();

    if (config) {
        config->validate(pop);
        p.L = config->L;
        const double Ubar_denom = config->L - p.Xbar;
        if (Ubar_denom == 0.0) throw DegenerateTransform("summarize: L == Xbar, theta undefined");
        p.theta = p.Xbar / Ubar_denom;
        p.K = p.Cx == 0.0 ? 0.0 : p.rho * p.Cy / p.Cx;

        const auto u = transform_u(pop.x, config->L);
        std::vector<double> v(N);
        for (int i = 0; i < N; ++i) v[i] = pop.y[i] / u[i];
        p.Vbar = kahan_mean(v);
        const double ubar = kahan_mean(u);
        KahanAccumulator suv;
        for (int i = 0; i < N; ++i) suv.add((u[i] - ubar) * (v[i] - p.Vbar));
        p.Suv = suv.value() / denom;
        p.has_suv = true;
        p.vbar_source = VbarSource::Exact;
    } else {
        p.K = p.Cx == 0.0 ? 0.0 : p.rho * p.Cy / p.Cx;
    }
    return p;
}

SummaryParams params_from_constants(int N, int n, double Ybar, double Xbar, double Sx2,
                                    double Sy2, double rho, double R, double Rstar_bar) {
    if (n < 2 || n >= N) throw InvalidDesign("params_from_constants: need 2 <= n < N");
    if (Xbar == 0.0) throw DivisionByZero("params_from_constants: Xbar == 0");
    if (Ybar == 0.0) throw DivisionByZero("params_from_constants: Ybar == 0");
    SummaryParams p;
    p.N = N;
    p.n = n;
    p.Ybar = Ybar;
    p.Xbar = Xbar;
    p.Sx2 = Sx2;
    p.Sy2 = Sy2;
    p.rho = rho;
    p.R = R;
    p.Rstar_bar = Rstar_bar;
    p.Sxy = rho * std::sqrt(Sx2 * Sy2);
    p.g = static_cast<double>(n) / static_cast<double>(N - n);
    p.f = static_cast<double>(n) / static_cast<double>(N);
    p.Cx = std::sqrt(Sx2) / Xbar;
    p.Cy = std::sqrt(Sy2) / Ybar;
    if (Sx2 > 0.0 && Sy2 > 0.0) {
        p.beta = rho * std::sqrt(Sy2 / Sx2);
    } else {
        p.rho_degenerate = true;
    }
    p.K = p.Cx == 0.0 ? 0.0 : rho * p.Cy / p.Cx;
    return p;
}

SummaryParams with_transform_approx(const SummaryParams& base, double L) {
    SummaryParams p = base;
    const double d = L - p.Xbar;
    if (d == 0.0) throw DegenerateTransform("with_transform_approx: L == Xbar");
    p.L = L;
    p.theta = p.Xbar / d;
    p.Vbar = p.Ybar / d;
    p.has_suv = false;
    p.vbar_source = VbarSource::Approximated;
    return p;
}

std::uint64_t subset_count(int N, int n, std::uint64_t cap) {
    if (n < 0 || n > N) return 0;
    const int k = std::min(n, N - n);
    // c = c * (N - i) / (i + 1) is exact in this order; 128-bit keeps the
    // intermediate product from overflowing for any N we can enumerate.
    unsigned __int128 c = 1;
    const unsigned __int128 hard_limit = static_cast<unsigned __int128>(1) << 100;
    for (int i = 0; i < k; ++i) {
        c = c * static_cast<unsigned>(N - i) / static_cast<unsigned>(i + 1);
        if (c > hard_limit)
            throw TooLarge("C(" + std::to_string(N) + "," + std::to_string(n) +
                           ") exceeds cap " + std::to_string(cap));
    }
    if (cap > 0 && c > cap)
        throw TooLarge("C(" + std::to_string(N) + "," + std::to_string(n) + ") = " +
                       std::to_string(static_cast<std::uint64_t>(c)) + " exceeds cap " +
                       std::to_string(cap));
    return static_cast<std::uint64_t>(c);
}

void for_each_sample(int N, int n, const std::function<void(const Sample&)>& fn,
                     std::uint64_t cap) {
    if (n < 2 || n >= N) throw InvalidDesign("for_each_sample: need 2 <= n < N");
    subset_count(N, n, cap);

    Sample s;
    s.indices.resize(n);
    for (int i = 0; i < n; ++i) s.indices[i] = i;
    for (;;) {
        fn(s);
        int i = n - 1;
        while (i >= 0 && s.indices[i] == N - n + i) --i;
        if (i < 0) break;
        ++s.indices[i];
        for (int j = i + 1; j < n; ++j) s.indices[j] = s.indices[j - 1] + 1;
    }
}

std::vector<Sample> enumerate_samples(int N, int n, std::uint64_t cap) {
    std::vector<Sample> out;
    for_each_sample(N, n, [&](const Sample& s) { out.push_back(s); }, cap);
    return out;
}

Sample draw_sample(const Population& pop, int n, std::uint64_t seed) {
    pop.validate();
    const int N = pop.size();
    if (n < 2 || n >= N) throw InvalidDesign("draw_sample: need 2 <= n < N");

    // Floyd's subset sampling: uniform over all C(N, n) subsets.
    SplitMix64 rng(seed);
    std::vector<int> chosen;
    chosen.reserve(n);
    for (int j = N - n; j < N; ++j) {
        const int t = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(j) + 1));
        if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) {
            chosen.push_back(j);
        } else {
            chosen.push_back(t);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    Sample s;
    s.indices = std::move(chosen);
    return s;
}

namespace {

double parse_number(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        // allow trailing spaces only
        for (std::size_t i = pos; i < tok.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(tok[i])))
                throw ParseError("invalid number '" + tok + "'", line_no);
        if (!std::isfinite(v)) throw ParseError("non-finite value '" + tok + "'", line_no);
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid number '" + tok + "'", line_no);
    } catch (const std::out_of_range&) {
        throw ParseError("number out of range '" + tok + "'", line_no);
    }
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Population population_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    Population pop;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = strip(line);
        if (t.empty()) continue;
        if (!header_seen) {
            if (t != "x,y") throw ParseError("expected header 'x,y', got '" + t + "'", line_no);
            header_seen = true;
            continue;
        }
        const auto comma = t.find(',');
        if (comma == std::string::npos) throw ParseError("expected 'x,y' pair", line_no);
        pop.x.push_back(parse_number(t.substr(0, comma), line_no));
        pop.y.push_back(parse_number(t.substr(comma + 1), line_no));
    }
    if (!header_seen) throw ParseError("missing header 'x,y'", 1);
    pop.validate();
    return pop;
}

Population load_population_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open population file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return population_from_csv(buf.str());
}

}  // namespace survest
