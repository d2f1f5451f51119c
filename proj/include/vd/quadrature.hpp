#pragma once

/**
 * @file quadrature.hpp
 * @brief Gauss–Legendre rules, path integrals inside the disc and angular meshes.
 *
 * Path integrals use composite Gauss–Legendre panels. Panels are graded
 * geometrically toward any endpoint that approaches the unit circle, so an
 * integrand with a boundary singularity at distance d from the path is always
 * sampled on panels no longer than d. The whole panel set is then halved
 * until two successive levels agree to the requested relative tolerance.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace vd {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

inline GaussRule make_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

template <int N>
const GaussRule& gauss_legendre() {
    static const GaussRule rule = make_gauss_legendre(N);
    return rule;
}

/// Neumaier summation; keeps sums independent of magnitude ordering.
template <typename T>
class CompensatedSum {
public:
    void add(T x) {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

template <>
class CompensatedSum<cplx> {
public:
    void add(cplx x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_, im_;
};

struct QuadResult {
    cplx value{};
    double est_error = 0.0;
    bool converged = true;
    int nodes = 0;
};

struct SegmentOptions {
    double rel_tol = 1e-10;
    int max_nodes = 1 << 14;
    /// Grade panels toward points of the path that approach the unit circle.
    bool grade = true;
};

namespace detail {

/// Breakpoints in the path parameter t in [0, 1] for zeta(t) = a + t (b - a).
inline std::vector<double> graded_breakpoints(cplx a, cplx b, std::span<const double> forced, bool grade) {
    std::vector<double> base{0.0, 1.0};
    for (double t : forced)
        if (t > 0.0 && t < 1.0)
            base.push_back(t);
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    if (!grade)
        return base;

    const double len = std::abs(b - a);
    auto dist = [&](double t) { return 1.0 - std::abs(a + t * (b - a)); };
    std::vector<double> out{0.0};
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        // Depth-first bisection; |zeta| is convex along a chord, so the
        // distance to the circle over a panel is smallest at an endpoint.
        std::vector<std::pair<double, double>> stack{{base[i], base[i + 1]}};
        std::vector<double> local;
        while (!stack.empty()) {
            auto [t0, t1] = stack.back();
            stack.pop_back();
            const double d = std::min(dist(t0), dist(t1));
            const double l = (t1 - t0) * len;
            if (l > d && l > 1e-15 && d > 0.0) {
                const double tm = 0.5 * (t0 + t1);
                stack.push_back({tm, t1});
                stack.push_back({t0, tm});
            } else {
                local.push_back(t1);
            }
        }
        std::sort(local.begin(), local.end());
        out.insert(out.end(), local.begin(), local.end());
    }
    return out;
}

/// Sum of 32-point Gauss rules over `splits` equal sub-panels of [t0, t1].
template <typename F>
cplx panel_integral(F& f, cplx a, cplx d, double t0, double t1, int splits, double& l1) {
    const auto& rule = gauss_legendre<32>();
    const double h = (t1 - t0) / splits;
    CompensatedSum<cplx> sum;
    for (int s = 0; s < splits; ++s) {
        const double lo = t0 + s * h;
        const double half = 0.5 * h;
        const double mid = lo + half;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const cplx z = a + (mid + half * rule.nodes[k]) * d;
            const cplx v = f(z) * (rule.weights[k] * half);
            sum.add(v);
            l1 += std::abs(v);
        }
    }
    return sum.value() * d;
}

} // namespace detail

/// Values of the integral of f from a along the segment [a, b], reported at
/// every path fraction in `fractions` (each in (0, 1]). The last reported
/// value carries the convergence information.
struct CumulativeResult {
    std::vector<cplx> values;
    double est_error = 0.0;
    bool converged = true;
    int nodes = 0;
};

template <typename F>
CumulativeResult integrate_segment_cumulative(F&& f, cplx a, cplx b, std::span<const double> fractions,
                                              const SegmentOptions& opt = {}) {
    CumulativeResult out;
    out.values.assign(fractions.size(), cplx{});
    if (a == b)
        return out;
    const auto bp = detail::graded_breakpoints(a, b, fractions, opt.grade);
    const cplx d = b - a;
    const int panels = static_cast<int>(bp.size()) - 1;

    auto run_level = [&](int splits, double& l1) {
        std::vector<cplx> cum(bp.size());
        CompensatedSum<cplx> acc;
        for (int i = 0; i < panels; ++i) {
            acc.add(detail::panel_integral(f, a, d, bp[i], bp[i + 1], splits, l1));
            cum[i + 1] = acc.value();
        }
        std::vector<cplx> vals(fractions.size());
        for (std::size_t j = 0; j < fractions.size(); ++j) {
            const auto it = std::lower_bound(bp.begin(), bp.end(), fractions[j]);
            vals[j] = it == bp.end() ? cum.back() : cum[static_cast<std::size_t>(it - bp.begin())];
        }
        return vals;
    };

    double l1 = 0.0;
    int splits = 1;
    auto prev = run_level(splits, l1);
    out.nodes = panels * 32;
    while (true) {
        double l1_next = 0.0;
        splits *= 2;
        auto next = run_level(splits, l1_next);
        out.nodes += panels * 32 * splits;
        double worst = 0.0;
        bool ok = true;
        for (std::size_t j = 0; j < next.size(); ++j) {
            const double diff = std::abs(next[j] - prev[j]);
            const double scale = std::max({std::abs(next[j]), 1e-3 * l1_next, 1e-300});
            worst = std::max(worst, diff);
            if (!(diff <= opt.rel_tol * scale))
                ok = false;
        }
        out.values = std::move(next);
        out.est_error = worst;
        if (ok)
            break;
        if (panels * 32 * splits * 2 > opt.max_nodes) {
            out.converged = false;
            break;
        }
        prev = out.values;
        l1 = l1_next;
    }
    return out;
}

template <typename F>
QuadResult integrate_segment(F&& f, cplx a, cplx b, const SegmentOptions& opt = {}) {
    const double one = 1.0;
    auto r = integrate_segment_cumulative(f, a, b, std::span<const double>(&one, 1), opt);
    return {r.values.front(), r.est_error, r.converged, r.nodes};
}

/// Quadrature rule on [0, 2pi) with weights normalised to dt / 2pi.
struct AngularRule {
    std::vector<double> theta;
    std::vector<double> weight;
    std::vector<double> ends;   // panel endpoints, for sup estimates

    std::size_t size() const noexcept { return theta.size(); }
};

inline AngularRule trapezoid_rule(std::size_t m) {
    AngularRule rule;
    rule.theta.resize(m);
    rule.weight.assign(m, 1.0 / static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k)
        rule.theta[k] = two_pi * static_cast<double>(k) / static_cast<double>(m);
    return rule;
}

struct AngularOptions {
    double rel_tol = 1e-10;
    double min_width = 1e-9;
    int initial_panels = 32;
    int max_panels = 16384;
};

/**
 * Builds a composite 16-point Gauss rule on the circle whose panels are
 * refined until the integral of `density` is resolved. Breakpoints (e.g.
 * the arguments of known boundary singularities) always become panel ends.
 */
template <typename D>
AngularRule adaptive_angular_rule(D&& density, std::vector<double> breakpoints, const AngularOptions& opt = {}) {
    const auto& rule = gauss_legendre<16>();
    for (double& b : breakpoints) {
        b = std::fmod(b, two_pi);
        if (b < 0.0)
            b += two_pi;
    }
    for (int k = 0; k <= opt.initial_panels; ++k)
        breakpoints.push_back(two_pi * k / opt.initial_panels);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> ends;
    for (double b : breakpoints)
        if (ends.empty() || b - ends.back() > 1e-13)
            ends.push_back(b);
    if (two_pi - ends.back() > 1e-13)
        ends.push_back(two_pi);
    else
        ends.back() = two_pi;

    auto gauss = [&](double lo, double hi) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            s += rule.weights[k] * density(mid + half * rule.nodes[k]);
        return s * half;
    };

    std::vector<std::pair<double, double>> stack;
    double reference = 0.0;
    for (std::size_t i = ends.size() - 1; i-- > 0;) {
        stack.push_back({ends[i], ends[i + 1]});
        const double g = gauss(ends[i], ends[i + 1]);
        if (std::isfinite(g))
            reference += std::abs(g);
    }
    reference = std::max(reference, 1e-300);

    std::vector<std::pair<double, double>> accepted;
    int panel_count = static_cast<int>(stack.size());
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (lo + hi);
        const double whole = gauss(lo, hi);
        const double halves = gauss(lo, mid) + gauss(mid, hi);
        const double err = std::abs(whole - halves);
        const bool resolved = std::isfinite(err) && err <= opt.rel_tol * reference;
        if (resolved || hi - lo <= opt.min_width || panel_count >= opt.max_panels) {
            accepted.push_back({lo, mid});
            accepted.push_back({mid, hi});
        } else {
            ++panel_count;
            stack.push_back({mid, hi});
            stack.push_back({lo, mid});
        }
    }

    AngularRule out;
    out.theta.reserve(accepted.size() * rule.nodes.size());
    out.weight.reserve(accepted.size() * rule.nodes.size());
    for (auto [lo, hi] : accepted) {
        out.ends.push_back(lo);
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            out.theta.push_back(mid + half * rule.nodes[k]);
            out.weight.push_back(rule.weights[k] * half / two_pi);
        }
    }
    return out;
}

} // namespace vd
