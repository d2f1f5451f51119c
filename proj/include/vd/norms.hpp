#pragma once

/**
 * @file norms.hpp
 * @brief Hardy, H^infinity, BMOA, Littlewood–Paley and weighted Bergman
 *        estimators with a Finite / Divergent / Inconclusive classifier.
 *
 * Integral means are computed on an adaptive angular mesh designed at the
 * outermost radius, so that boundary singularities are resolved at the
 * scale 1 - r. Functions given as primitives are sampled by one cumulative
 * quadrature sweep per ray.
 *
 * Classification looks at the increments of the monotone sequence
 * v_k = M_p(r_k)^p along r_k = 1 - 2^{-k}. If the increments decay like
 * 2^{-kappa k} with kappa bounded away from zero the sequence converges and
 * its limit is extrapolated geometrically; kappa near or below zero means
 * the increments do not shrink and the norm diverges.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "handle.hpp"
#include "mobius.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "symbol.hpp"

namespace vd {

enum class Classification { Finite, Divergent, Inconclusive };

inline std::string to_string(Classification c) {
    switch (c) {
    case Classification::Finite: return "Finite";
    case Classification::Divergent: return "Divergent";
    case Classification::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct RadiusSchedule {
    std::vector<double> radii;
    std::size_t angular_nodes = 4096;

    /// r_k = 1 - 2^{-k}, k = 2..depth
    static RadiusSchedule geometric(int depth = 14) {
        if (depth < 7 || depth > 40)
            throw Error(ErrorCode::ParameterOutOfRange, "schedule depth must lie in [7, 40]");
        RadiusSchedule s;
        for (int k = 2; k <= depth; ++k)
            s.radii.push_back(1.0 - std::ldexp(1.0, -k));
        return s;
    }

    void validate() const {
        if (radii.empty())
            throw Error(ErrorCode::ParameterOutOfRange, "empty radius schedule");
        for (std::size_t k = 0; k < radii.size(); ++k) {
            if (!(radii[k] > 0.0 && radii[k] < 1.0))
                throw Error(ErrorCode::ParameterOutOfRange, "schedule radii must lie in (0, 1)");
            if (k && !(radii[k] > radii[k - 1]))
                throw Error(ErrorCode::ParameterOutOfRange, "schedule radii must increase");
        }
        if (angular_nodes < 64 || (angular_nodes & (angular_nodes - 1)))
            throw Error(ErrorCode::ParameterOutOfRange, "angular node count must be a power of two >= 64");
    }
};

struct ClassifierConfig {
    double finite_tail = 0.08;     // kappa at or above: Finite
    double divergent_tail = 0.02;  // kappa at or below: Divergent
    int fit_points = 5;
    double flat_tol = 1e-9;
};

struct NormOptions {
    RadiusSchedule schedule = RadiusSchedule::geometric();
    ClassifierConfig classifier;
    double angular_tol = 1e-10;
};

struct NormEstimate {
    double value = 0.0;
    std::vector<std::pair<double, double>> means;
    double growth_exponent = 0.0;
    double tail_exponent = std::numeric_limits<double>::quiet_NaN();
    Classification classification = Classification::Inconclusive;
    double p = 2.0;
    std::string evidence;

    bool finite() const { return classification == Classification::Finite; }
};

struct SequenceVerdict {
    Classification classification = Classification::Inconclusive;
    double limit = 0.0;
    double tail_exponent = std::numeric_limits<double>::quiet_NaN();
    std::string evidence;
};

/// Classifies a nondecreasing sequence by the decay rate of its last increments.
inline SequenceVerdict classify_increments(const std::vector<double>& v, const ClassifierConfig& cfg) {
    SequenceVerdict out;
    const int n = static_cast<int>(v.size());
    const int m = std::min(cfg.fit_points, n - 1);
    for (double x : v)
        if (!std::isfinite(x)) {
            out.classification = Classification::Divergent;
            out.limit = std::numeric_limits<double>::infinity();
            out.evidence = "non-finite mean";
            return out;
        }
    out.limit = v.back();
    if (m < 2) {
        out.evidence = "too few radii";
        return out;
    }
    const double scale = std::max(std::abs(v.back()), 1e-300);
    std::vector<double> ks, logs;
    double largest = 0.0;
    for (int i = n - m; i < n; ++i) {
        const double d = v[i] - v[i - 1];
        largest = std::max(largest, std::abs(d));
        if (d > 0.0) {
            ks.push_back(i);
            logs.push_back(std::log2(d));
        }
    }
    if (largest <= cfg.flat_tol * scale) {
        out.classification = Classification::Finite;
        out.tail_exponent = std::numeric_limits<double>::infinity();
        out.evidence = "increments below relative tolerance";
        return out;
    }
    if (ks.size() < 3) {
        out.evidence = "increments not monotone";
        return out;
    }
    const double kn = static_cast<double>(ks.size());
    double km = 0.0, lm = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        km += ks[i] / kn;
        lm += logs[i] / kn;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        sxy += (ks[i] - km) * (logs[i] - lm);
        sxx += (ks[i] - km) * (ks[i] - km);
    }
    const double kappa = -sxy / sxx;
    out.tail_exponent = kappa;
    if (kappa >= cfg.finite_tail) {
        const double q = std::exp2(-kappa);
        const double last = std::max(v[n - 1] - v[n - 2], 0.0);
        out.classification = Classification::Finite;
        out.limit = v.back() + last * q / (1.0 - q);
        out.evidence = "increments decay geometrically";
    } else if (kappa <= cfg.divergent_tail) {
        out.classification = Classification::Divergent;
        out.limit = std::numeric_limits<double>::infinity();
        out.evidence = "increments do not decay";
    } else {
        out.evidence = "increment decay rate between thresholds";
    }
    return out;
}

/// Least-squares slope of log M against -log(1 - r) over the last points.
inline double growth_exponent(const std::vector<std::pair<double, double>>& means, int points = 5) {
    std::vector<double> xs, ys;
    const int n = static_cast<int>(means.size());
    for (int i = std::max(0, n - points); i < n; ++i) {
        if (!(means[i].second > 0.0) || !std::isfinite(means[i].second))
            continue;
        xs.push_back(-std::log(1.0 - means[i].first));
        ys.push_back(std::log(means[i].second));
    }
    if (xs.size() < 2)
        return 0.0;
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= static_cast<double>(xs.size());
    ym /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - xm) * (ys[i] - ym);
        sxx += (xs[i] - xm) * (xs[i] - xm);
    }
    return sxy / sxx;
}

namespace detail {

inline void require_no_poles(const AnalyticHandle& f, double r) {
    for (const Pole& p : f.poles())
        if (std::abs(p.location) <= r)
            throw Error(ErrorCode::RadiusHitsPole, "circle of radius " + format_real(r) + " meets the pole at " +
                                                       format_cnum(p.location));
}

inline std::vector<double> singular_angles(const AnalyticHandle& f) {
    std::vector<double> out;
    for (const cplx& w : f.singular_boundary_points())
        out.push_back(std::arg(w));
    return out;
}

/// Magnitude proxy for design: |f|, or |f'| (1 - r) for primitives.
inline double design_proxy(const AnalyticHandle& f, cplx z) {
    if (f.is_primitive())
        return std::abs(f.primitive_integrand()(z)) * std::max(1.0 - std::abs(z), 1e-6);
    return std::abs(f(z));
}

template <typename D>
AngularRule design_rule(D&& density, double radius, std::vector<double> breaks, double tol) {
    AngularOptions opt;
    opt.rel_tol = tol;
    opt.min_width = std::max(1e-9, (1.0 - radius) / 16.0);
    return adaptive_angular_rule(density, std::move(breaks), opt);
}

/// Values of f on every circle r in `radii` at the given angles; [radius][angle].
inline std::vector<std::vector<cplx>> sample_circles(const AnalyticHandle& f, const std::vector<double>& radii,
                                                     const std::vector<double>& angles) {
    std::vector<std::vector<cplx>> out(radii.size(), std::vector<cplx>(angles.size()));
    if (f.is_primitive() && !f.polynomial()) {
        const AnalyticHandle& k = f.primitive_integrand();
        const double outer = radii.back();
        std::vector<double> fractions(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i)
            fractions[i] = radii[i] / outer;
        SegmentOptions opt;
        opt.grade = !k.boundary_regular();
        for (std::size_t j = 0; j < angles.size(); ++j) {
            auto res = integrate_segment_cumulative([&](cplx w) { return k(w); }, cplx{}, std::polar(outer, angles[j]),
                                                    fractions, opt);
            for (std::size_t i = 0; i < radii.size(); ++i)
                out[i][j] = f.primitive_offset() + res.values[i];
        }
        return out;
    }
    for (std::size_t i = 0; i < radii.size(); ++i)
        for (std::size_t j = 0; j < angles.size(); ++j)
            out[i][j] = f(std::polar(radii[i], angles[j]));
    return out;
}

inline double weighted_power_mean(const std::vector<cplx>& vals, const AngularRule& rule, double p) {
    CompensatedSum<double> s;
    for (std::size_t j = 0; j < vals.size(); ++j)
        s.add(rule.weight[j] * std::pow(std::abs(vals[j]), p));
    return s.value();
}

inline bool is_zero_function(const AnalyticHandle& f) {
    return f.polynomial() && f.polynomial()->size() == 1 && (*f.polynomial())[0] == cplx{};
}

} // namespace detail

/// M_p(r) by the trapezoidal rule on m equispaced angles.
inline double integral_mean(const AnalyticHandle& f, double r, double p, std::size_t m = 4096) {
    if (!(r > 0.0 && r < 1.0) || p < 1.0 || m == 0)
        throw Error(ErrorCode::ParameterOutOfRange, "integral_mean needs 0 < r < 1, p >= 1");
    detail::require_no_poles(f, r);
    const auto rule = trapezoid_rule(m);
    const auto vals = detail::sample_circles(f, {r}, rule.theta);
    return std::pow(detail::weighted_power_mean(vals[0], rule, p), 1.0 / p);
}

inline NormEstimate hp_norm(const AnalyticHandle& f, double p, const NormOptions& opt = {}) {
    if (!(p >= 1.0))
        throw Error(ErrorCode::ParameterOutOfRange, "hp_norm needs p >= 1");
    opt.schedule.validate();
    NormEstimate est;
    est.p = p;
    std::vector<double> radii = opt.schedule.radii;
    detail::require_no_poles(f, radii.back());
    const bool regular = f.boundary_regular();
    if (regular)
        radii.push_back(1.0);
    const double outer = radii.back();
    const auto rule = detail::design_rule(
        [&](double t) { return std::pow(detail::design_proxy(f, std::polar(outer, t)), p); }, outer,
        detail::singular_angles(f), opt.angular_tol);
    const auto vals = detail::sample_circles(f, radii, rule.theta);

    std::vector<double> v;
    for (std::size_t i = 0; i < opt.schedule.radii.size(); ++i) {
        v.push_back(detail::weighted_power_mean(vals[i], rule, p));
        est.means.emplace_back(radii[i], std::pow(v.back(), 1.0 / p));
    }
    est.growth_exponent = growth_exponent(est.means);
    auto verdict = classify_increments(v, opt.classifier);
    est.tail_exponent = verdict.tail_exponent;
    if (regular) {
        est.classification = Classification::Finite;
        est.value = std::pow(detail::weighted_power_mean(vals.back(), rule, p), 1.0 / p);
        est.evidence = "analytic across the unit circle; mean evaluated at r = 1";
    } else {
        est.classification = verdict.classification;
        est.value = std::pow(verdict.limit, 1.0 / p);
        est.evidence = verdict.evidence;
    }
    return est;
}

enum class Verdict { In, Out, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::In: return "In";
    case Verdict::Out: return "Out";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

inline Verdict verdict_of(Classification c) {
    switch (c) {
    case Classification::Finite: return Verdict::In;
    case Classification::Divergent: return Verdict::Out;
    default: return Verdict::Inconclusive;
    }
}

inline Verdict hp_membership(const AnalyticHandle& f, double p, const NormOptions& opt = {}) {
    return verdict_of(hp_norm(f, p, opt).classification);
}

/// sup |f| on the schedule circles, classified like the integral means.
inline NormEstimate hinf_sup(const AnalyticHandle& f, const NormOptions& opt = {}) {
    opt.schedule.validate();
    NormEstimate est;
    est.p = std::numeric_limits<double>::infinity();
    std::vector<double> radii = opt.schedule.radii;
    detail::require_no_poles(f, radii.back());
    const bool regular = f.boundary_regular();
    if (regular)
        radii.push_back(1.0);
    const double outer = radii.back();
    const auto rule = detail::design_rule([&](double t) { return detail::design_proxy(f, std::polar(outer, t)); },
                                          outer, detail::singular_angles(f), opt.angular_tol);
    std::vector<double> angles = rule.theta;
    angles.insert(angles.end(), rule.ends.begin(), rule.ends.end());
    const auto vals = detail::sample_circles(f, radii, angles);
    std::vector<double> v;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double m = 0.0;
        for (const cplx& x : vals[i])
            m = std::max(m, std::abs(x));
        if (i < opt.schedule.radii.size()) {
            v.push_back(m);
            est.means.emplace_back(radii[i], m);
        } else {
            est.value = m;
        }
    }
    est.growth_exponent = growth_exponent(est.means);
    auto verdict = classify_increments(v, opt.classifier);
    est.tail_exponent = verdict.tail_exponent;
    if (regular) {
        est.classification = Classification::Finite;
        est.evidence = "analytic across the unit circle; sup taken on r = 1";
    } else {
        est.classification = verdict.classification;
        est.value = verdict.limit;
        est.evidence = verdict.evidence;
    }
    return est;
}

/**
 * Littlewood–Paley G-function: returns value with
 * value^p = |f(0)|^p + int G(t)^p dt/2pi, G(t)^2 = int_0^1 |f'(re^{it})|^2 (1 - r) dr.
 * The radial integral uses r = 1 - 2^{-u}, Gauss–Legendre in u up to u = 16.
 */
inline NormEstimate g_function_norm(const AnalyticHandle& f, double p, const NormOptions& opt = {}) {
    if (!(p >= 1.0))
        throw Error(ErrorCode::ParameterOutOfRange, "g_function_norm needs p >= 1");
    detail::require_no_poles(f, 1.0);
    constexpr int units = 16;
    const auto& gl = gauss_legendre<16>();
    std::vector<double> rs, ws;
    std::vector<int> unit_of;
    for (int u0 = 0; u0 < units; ++u0)
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double u = u0 + 0.5 * (1.0 + gl.nodes[k]);
            rs.push_back(1.0 - std::exp2(-u));
            ws.push_back(0.5 * gl.weights[k] * std::numbers::ln2 * std::exp2(-2.0 * u));
            unit_of.push_back(u0);
        }
    const AnalyticHandle fp = derivative_handle(f);
    // Partial radial integrals per unit of u, for one angle.
    auto partials = [&](double t) {
        std::vector<double> acc(units, 0.0);
        for (std::size_t i = 0; i < rs.size(); ++i)
            acc[unit_of[i]] += ws[i] * std::norm(fp(std::polar(rs[i], t)));
        return acc;
    };
    auto gp = [&](double t) {
        double s = 0.0;
        for (double a : partials(t))
            s += a;
        return std::pow(s, p / 2.0);
    };
    const auto rule = detail::design_rule(gp, rs.back(), detail::singular_angles(f), opt.angular_tol);
    const double f0 = std::pow(std::abs(f(0.0)), p);
    std::vector<CompensatedSum<double>> trunc(units);
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const auto acc = partials(rule.theta[j]);
        double cum = 0.0;
        for (int u = 0; u < units; ++u) {
            cum += acc[u];
            trunc[u].add(rule.weight[j] * std::pow(cum, p / 2.0));
        }
    }
    NormEstimate est;
    est.p = p;
    std::vector<double> v;
    for (int u = 0; u < units; ++u) {
        v.push_back(f0 + trunc[u].value());
        est.means.emplace_back(1.0 - std::exp2(-(u + 1.0)), std::pow(v.back(), 1.0 / p));
    }
    est.growth_exponent = growth_exponent(est.means);
    auto verdict = classify_increments(v, opt.classifier);
    est.tail_exponent = verdict.tail_exponent;
    est.classification = verdict.classification;
    est.evidence = verdict.evidence;
    // The truncated integral is the reported value; extrapolation only
    // decides the classification.
    est.value = std::pow(verdict.classification == Classification::Divergent ? verdict.limit : v.back(), 1.0 / p);
    return est;
}

inline std::vector<cplx> default_bmoa_grid() {
    std::vector<cplx> grid{cplx{}};
    for (double m : {0.5, 0.9, 0.99, 0.999})
        for (int k = 0; k < 12; ++k)
            grid.push_back(std::polar(m, two_pi * k / 12.0));
    return grid;
}

inline std::vector<cplx> refined_bmoa_grid() {
    auto grid = default_bmoa_grid();
    for (int k = 0; k < 12; ++k)
        grid.push_back(std::polar(0.9999, two_pi * k / 12.0));
    return grid;
}

struct BmoaEstimate {
    NormEstimate estimate;                        // value = max over the grid
    std::vector<std::pair<cplx, double>> per_point;
    double refinement_delta = 0.0;                // gain from the outermost modulus
};

/// sup over the grid of ||f o phi_a - f(a)||_{H^2}
inline BmoaEstimate bmoa_seminorm(const AnalyticHandle& f, const std::vector<cplx>& grid, const NormOptions& opt = {}) {
    BmoaEstimate out;
    out.estimate.p = 2.0;
    out.estimate.classification = Classification::Finite;
    double outer_modulus = 0.0;
    for (const cplx& a : grid)
        outer_modulus = std::max(outer_modulus, std::abs(a));
    const bool constant = f.polynomial() && f.polynomial()->size() == 1;
    double best = 0.0, best_inner = 0.0;
    bool inconclusive = false, divergent = false;
    std::string worst_evidence = "all grid points finite";
    for (const cplx& a : grid) {
        const AnalyticHandle h = difference(compose_mobius(f, a), constant_handle(f(a)));
        NormEstimate e;
        e.classification = Classification::Finite;
        if (!constant) {
            // f o phi_a carries structure at scale 1 - |a|; deepen the schedule accordingly.
            NormOptions local = opt;
            const int extra = static_cast<int>(std::ceil(std::log2(1.0 / (1.0 - std::abs(a)))));
            const int depth = static_cast<int>(opt.schedule.radii.size()) + 1;
            if (!h.boundary_regular() && extra > 0)
                local.schedule = RadiusSchedule::geometric(std::min(depth + extra, 30));
            e = hp_norm(h, 2.0, local);
        }
        out.per_point.emplace_back(a, e.value);
        if (e.classification == Classification::Divergent) {
            divergent = true;
            worst_evidence = "divergent at a = " + format_cnum(a);
        } else if (e.classification == Classification::Inconclusive) {
            inconclusive = true;
            if (!divergent)
                worst_evidence = "inconclusive at a = " + format_cnum(a);
        }
        best = std::max(best, e.value);
        if (std::abs(a) < outer_modulus)
            best_inner = std::max(best_inner, e.value);
        out.estimate.means.emplace_back(std::abs(a), e.value);
    }
    if (divergent) {
        out.estimate.classification = Classification::Divergent;
        out.estimate.value = std::numeric_limits<double>::infinity();
    } else {
        out.estimate.classification = inconclusive ? Classification::Inconclusive : Classification::Finite;
        out.estimate.value = best;
    }
    out.estimate.evidence = worst_evidence;
    out.refinement_delta = std::isfinite(best) ? best - best_inner : std::numeric_limits<double>::infinity();
    return out;
}

/**
 * int_D |f|^2 |g'|^2 (1 - |z|^2) dm(z) with normalised area measure, by
 * Gauss–Legendre in u (r = 1 - 2^{-u}, up to u = 16) times an adaptive
 * angular rule. The value is the weighted integral itself (a squared norm).
 */
inline NormEstimate bergman_weighted_norm(const AnalyticHandle& f, const Symbol& g, const NormOptions& opt = {}) {
    HandleSpec ps;
    ps.eval = [f, gp = g.g_prime](cplx z) { return f(z) * gp(z); };
    ps.singular = detail::merge_boundary(f.singular_boundary_points(), g.g_prime.singular_boundary_points());
    ps.boundary_regular = f.boundary_regular() && g.g_prime.boundary_regular();
    const AnalyticHandle h(std::move(ps));

    constexpr int units = 16;
    const auto& gl = gauss_legendre<16>();
    std::vector<double> rs, ws;
    std::vector<int> unit_of;
    for (int u0 = 0; u0 < units; ++u0)
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double u = u0 + 0.5 * (1.0 + gl.nodes[k]);
            const double r = 1.0 - std::exp2(-u);
            rs.push_back(r);
            ws.push_back(0.5 * gl.weights[k] * std::numbers::ln2 * std::exp2(-u) * 2.0 * r * (1.0 - r * r));
            unit_of.push_back(u0);
        }
    if (h.boundary_regular()) {
        const double a = 1.0 - std::exp2(-static_cast<double>(units));
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double r = a + 0.5 * (1.0 - a) * (1.0 + gl.nodes[k]);
            rs.push_back(r);
            ws.push_back(0.5 * (1.0 - a) * gl.weights[k] * 2.0 * r * (1.0 - r * r));
            unit_of.push_back(units - 1);
        }
    }
    const double outer = h.boundary_regular() ? 1.0 : rs.back();
    const auto rule = detail::design_rule([&](double t) { return std::norm(h(std::polar(outer, t))); }, outer,
                                          detail::singular_angles(h), opt.angular_tol);
    std::vector<CompensatedSum<double>> per_unit(units);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        CompensatedSum<double> m;
        for (std::size_t j = 0; j < rule.size(); ++j)
            m.add(rule.weight[j] * std::norm(h(std::polar(rs[i], rule.theta[j]))));
        per_unit[unit_of[i]].add(ws[i] * m.value());
    }
    NormEstimate est;
    est.p = 2.0;
    std::vector<double> v;
    double cum = 0.0;
    for (int u = 0; u < units; ++u) {
        cum += per_unit[u].value();
        v.push_back(cum);
        est.means.emplace_back(1.0 - std::exp2(-(u + 1.0)), cum);
    }
    est.growth_exponent = growth_exponent(est.means);
    auto verdict = classify_increments(v, opt.classifier);
    est.tail_exponent = verdict.tail_exponent;
    if (h.boundary_regular()) {
        est.classification = Classification::Finite;
        est.value = v.back();
        est.evidence = "integrand analytic across the unit circle";
    } else {
        est.classification = verdict.classification;
        est.value = verdict.limit;
        est.evidence = verdict.evidence;
    }
    return est;
}

struct PairingValue {
    cplx value{};
    double radius_used = 0.0;
    double est_error = 0.0;
};

/// (1/2pi) int F(re^{it}) conj(K(re^{it})) dt; est_error is the change from r' = 1 - 2^{-11}.
inline PairingValue boundary_pairing(const AnalyticHandle& F, const AnalyticHandle& K, double r = 1.0 - std::exp2(-12),
                                     const NormOptions& opt = {}) {
    if (!(r > 0.0 && r < 1.0))
        throw Error(ErrorCode::ParameterOutOfRange, "pairing radius must lie in (0, 1)");
    const double r_coarse = r > 1.0 - std::exp2(-11) ? 1.0 - std::exp2(-11) : 0.5 * r;
    detail::require_no_poles(F, r);
    detail::require_no_poles(K, r);
    auto breaks = detail::singular_angles(F);
    for (double b : detail::singular_angles(K))
        breaks.push_back(b);
    const auto rule = detail::design_rule(
        [&](double t) {
            const cplx z = std::polar(r, t);
            return detail::design_proxy(F, z) * detail::design_proxy(K, z);
        },
        r, breaks, opt.angular_tol);
    const std::vector<double> radii{r_coarse, r};
    const auto fv = detail::sample_circles(F, radii, rule.theta);
    const auto kv = detail::sample_circles(K, radii, rule.theta);
    auto pair_at = [&](std::size_t i) {
        CompensatedSum<cplx> s;
        for (std::size_t j = 0; j < rule.size(); ++j)
            s.add(rule.weight[j] * fv[i][j] * std::conj(kv[i][j]));
        return s.value();
    };
    PairingValue out;
    out.value = pair_at(1);
    out.radius_used = r;
    out.est_error = std::abs(out.value - pair_at(0));
    return out;
}

struct KSplit {
    AnalyticHandle f0;
    AnalyticHandle f1;
};

/**
 * Upper bound for Peetre's K-functional of the couple ((T_g,H^1), (T_g,H^inf)):
 * the least ||T_g f0||_{H^1} + t ||T_g f1||_{H^inf} over the supplied
 * splits and the two trivial ones. Infinity when no split is finite.
 */
inline double k_functional_upper(const AnalyticHandle& f, double t, const Symbol& g, std::vector<KSplit> splits,
                                 const NormOptions& opt = {}) {
    splits.push_back({f, constant_handle(0.0)});
    splits.push_back({constant_handle(0.0), f});
    double best = std::numeric_limits<double>::infinity();
    for (const KSplit& s : splits) {
        double n0 = 0.0, n1 = 0.0;
        if (!detail::is_zero_function(s.f0)) {
            const auto e = hp_norm(volterra_apply(g, s.f0).value, 1.0, opt);
            if (!e.finite())
                continue;
            n0 = e.value;
        }
        if (!detail::is_zero_function(s.f1)) {
            const auto e = hinf_sup(volterra_apply(g, s.f1).value, opt);
            if (!e.finite())
                continue;
            n1 = e.value;
        }
        best = std::min(best, n0 + t * n1);
    }
    return best;
}

} // namespace vd
