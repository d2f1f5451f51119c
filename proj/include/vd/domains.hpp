#pragma once

/**
 * @file domains.hpp
 * @brief Membership, witnesses and equality decisions for the optimal
 *        domains (T_g,H^p) (meromorphic) and [T_g,H^p] (holomorphic).
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "handle.hpp"
#include "mobius.hpp"
#include "norms.hpp"
#include "operators.hpp"
#include "quotient.hpp"
#include "roots.hpp"
#include "symbol.hpp"

namespace vd {

// ---------------------------------------------------------------- membership

struct MembershipVerdict {
    Verdict status = Verdict::Inconclusive;
    NormEstimate image_norm;
    bool pole_check = true;
    std::string notes;
};

enum class DomainKind { Meromorphic, Holomorphic };

/// ||f||_{(T_g,H^p)} = ||T_g f||_{H^p}
inline NormEstimate optdomain_norm(const Symbol& g, const AnalyticHandle& f, double p, const NormOptions& opt = {}) {
    return hp_norm(volterra_apply(g, f).value, p, opt);
}

inline MembershipVerdict domain_membership(const Symbol& g, const AnalyticHandle& f, double p, DomainKind kind,
                                           const NormOptions& opt = {}) {
    if (g.is_constant())
        throw Error(ErrorCode::ConstantSymbol, "every function lies in the domain of a constant symbol");
    MembershipVerdict out;
    const auto check = check_pole_compatibility(g, f);
    out.pole_check = check.ok;
    if (!check.ok) {
        out.status = Verdict::Out;
        out.image_norm.classification = Classification::Divergent;
        out.image_norm.value = std::numeric_limits<double>::infinity();
        out.image_norm.p = p;
        out.notes = "f g' is not analytic: " + check.diagnostics.front();
        return out;
    }
    out.image_norm = optdomain_norm(g, f, p, opt);
    if (kind == DomainKind::Holomorphic && !f.poles().empty()) {
        out.status = Verdict::Out;
        out.notes = "f has poles, so it is not holomorphic";
        return out;
    }
    out.status = verdict_of(out.image_norm.classification);
    out.notes = out.image_norm.evidence;
    return out;
}

inline MembershipVerdict mero_domain_membership(const Symbol& g, const AnalyticHandle& f, double p,
                                                const NormOptions& opt = {}) {
    return domain_membership(g, f, p, DomainKind::Meromorphic, opt);
}

inline MembershipVerdict holo_domain_membership(const Symbol& g, const AnalyticHandle& f, double p,
                                                const NormOptions& opt = {}) {
    return domain_membership(g, f, p, DomainKind::Holomorphic, opt);
}

/// phi = (1 - z)^{-1/p2 - 1} / g', in (T_g,H^p1) but not in (T_g,H^p2).
inline AnalyticHandle strict_inclusion_witness(const Symbol& g, double p1, double p2) {
    if (!(p1 >= 1.0 && p1 < p2))
        throw Error(ErrorCode::ParameterOutOfRange, "need 1 <= p1 < p2");
    if (g.is_constant())
        throw Error(ErrorCode::ConstantSymbol, "g is constant");
    return safe_quotient(pow1mz_handle(-1.0 / p2 - 1.0), g.g_prime, g.zeros_of_g_prime);
}

/// Shape |g'(z0)|^{-1} (1 - |z0|)^{-1/p - 1} of the point-evaluation bound; nullopt when unbounded.
inline std::optional<double> point_eval_bound(const Symbol& g, cplx z0, double p) {
    if (!(std::abs(z0) < 1.0))
        throw Error(ErrorCode::ParameterOutOfRange, "z0 must lie in the open disc");
    for (const Root& r : g.zeros_of_g_prime)
        if (std::abs(r.location - z0) <= 1e-7)
            return std::nullopt;
    if (g.is_constant())
        return std::nullopt;
    return 1.0 / std::abs(g.g_prime(z0)) * std::pow(1.0 - std::abs(z0), -1.0 / p - 1.0);
}

// ---------------------------------------------------------------- W_g

struct WgCertificate {
    AnalyticHandle k;
    NormEstimate k_sup;
    BmoaEstimate tg_k_bmoa;
    double wg_norm = std::numeric_limits<double>::infinity();
    bool member = false;
    std::string notes;
};

inline WgCertificate wg_membership(const Symbol& g, const AnalyticHandle& h, const NormOptions& opt = {},
                                   const std::vector<cplx>& grid = default_bmoa_grid()) {
    if (g.is_constant())
        throw Error(ErrorCode::ConstantSymbol, "g is constant");
    WgCertificate out;
    out.k = canonical_domain_element(g, h);
    if (!out.k.poles().empty()) {
        out.notes = "h'/g' has poles";
        out.k_sup.classification = Classification::Divergent;
        out.k_sup.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.k_sup = hinf_sup(out.k, opt);
    out.member = out.k_sup.finite();
    if (!out.member) {
        out.notes = "h'/g' is not bounded: " + out.k_sup.evidence;
        return out;
    }
    out.tg_k_bmoa = bmoa_seminorm(volterra_apply(g, out.k).value, grid, opt);
    out.wg_norm = out.tg_k_bmoa.estimate.value + std::abs(h(0.0)) + out.k_sup.value;
    out.notes = "h = T_g(k) + h(0) with k bounded";
    return out;
}

// ---------------------------------------------------------------- equality

enum class Relation { Equal, LeftInRight, RightInLeft, Incomparable, Inconclusive };

inline std::string to_string(Relation r) {
    switch (r) {
    case Relation::Equal: return "Equal";
    case Relation::LeftInRight: return "LeftInRight";
    case Relation::RightInLeft: return "RightInLeft";
    case Relation::Incomparable: return "Incomparable";
    case Relation::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// Left = (T_{g1},H^p), Right = (T_{g2},H^p).
struct DomainEqReport {
    Relation relation = Relation::Inconclusive;
    AnalyticHandle k1;   // g1'/g2'
    AnalyticHandle k2;   // g2'/g1'
    NormEstimate k1_sup;
    NormEstimate k2_sup;
    bool reciprocal_check = false;
    std::string notes;
};

namespace detail {

inline NormEstimate quotient_sup(const AnalyticHandle& k, const NormOptions& opt) {
    if (!k.poles().empty()) {
        NormEstimate e;
        e.classification = Classification::Divergent;
        e.value = std::numeric_limits<double>::infinity();
        e.evidence = "quotient has poles";
        return e;
    }
    return hinf_sup(k, opt);
}

} // namespace detail

/**
 * k1 = g1'/g2' bounded means g1 lies in W_{g2}, i.e. Right is contained
 * in Left; k2 = g2'/g1' bounded gives the reverse inclusion.
 */
inline DomainEqReport mero_domains_equal(const Symbol& g1, const Symbol& g2, const NormOptions& opt = {}) {
    if (g1.is_constant() || g2.is_constant())
        throw Error(ErrorCode::ConstantSymbol, "both symbols must be non-constant");
    DomainEqReport out;
    out.k1 = safe_quotient(g1.g_prime, g2.g_prime, g2.zeros_of_g_prime);
    out.k2 = safe_quotient(g2.g_prime, g1.g_prime, g1.zeros_of_g_prime);
    out.k1_sup = detail::quotient_sup(out.k1, opt);
    out.k2_sup = detail::quotient_sup(out.k2, opt);

    double worst = 0.0;
    for (const cplx& z : test_grid())
        worst = std::max(worst, std::abs(out.k1(z) * out.k2(z) - 1.0));
    out.reciprocal_check = worst <= 1e-8;

    const auto c1 = out.k1_sup.classification;
    const auto c2 = out.k2_sup.classification;
    using C = Classification;
    if (c1 == C::Finite && c2 == C::Finite)
        out.relation = out.reciprocal_check ? Relation::Equal : Relation::Inconclusive;
    else if (c1 == C::Finite && c2 == C::Divergent)
        out.relation = Relation::RightInLeft;
    else if (c1 == C::Divergent && c2 == C::Finite)
        out.relation = Relation::LeftInRight;
    else if (c1 == C::Divergent && c2 == C::Divergent)
        out.relation = Relation::Incomparable;
    else
        out.relation = Relation::Inconclusive;
    out.notes = "g1'/g2' " + to_string(c1) + ", g2'/g1' " + to_string(c2);
    return out;
}

/// Holomorphic domains: compared through the quotients only for locally univalent symbols.
/// g' has no zero in the open disc and stays away from 0 on the test grid.
inline bool locally_univalent(const Symbol& g) {
    for (const Root& r : g.zeros_of_g_prime)
        if (std::abs(r.location) < 1.0 - 1e-9)
            return false;
    for (const cplx& z : test_grid())
        if (std::abs(g.g_prime(z)) <= 1e-6)
            return false;
    return true;
}

inline DomainEqReport holo_domains_equal(const Symbol& g1, const Symbol& g2, const NormOptions& opt = {}) {
    if (locally_univalent(g1) && locally_univalent(g2))
        return mero_domains_equal(g1, g2, opt);
    DomainEqReport out;
    out.relation = Relation::Inconclusive;
    out.notes = "holomorphic comparison needs locally univalent symbols";
    return out;
}

enum class PolyClass { EqualToTz, StrictlyLarger };

inline std::string to_string(PolyClass c) { return c == PolyClass::EqualToTz ? "EqualToTz" : "StrictlyLarger"; }

inline constexpr double tau_circle = 1e-9;

struct PolyDomainReport {
    PolyClass classification = PolyClass::EqualToTz;
    std::vector<Root> roots;
    std::optional<cplx> circle_root;
    std::optional<AnalyticHandle> witness;   // (1 - conj(lambda) z)^{-1/p-1}
};

/**
 * [T_g,H^p] against [T_z,H^p] for polynomial g. A root of g' counts as on
 * the circle when ||lambda| - 1| <= 64 eps; roots in the remaining band
 * up to tau_circle are refused.
 */
inline PolyDomainReport polynomial_domain_classify(const Symbol& g, double p) {
    if (g.kind != SymbolKind::Polynomial && g.kind != SymbolKind::Constant)
        throw Error(ErrorCode::ParameterOutOfRange, "polynomial_domain_classify needs a polynomial symbol");
    if (g.is_constant())
        throw Error(ErrorCode::ConstantSymbol, "g is constant");
    PolyDomainReport out;
    out.roots = g.zeros_of_g_prime;
    constexpr double on_circle = 64.0 * std::numeric_limits<double>::epsilon();
    for (const Root& r : out.roots) {
        const double gap = std::abs(std::abs(r.location) - 1.0);
        if (gap <= on_circle) {
            if (!out.circle_root) {
                out.circle_root = r.location / std::abs(r.location);
                out.classification = PolyClass::StrictlyLarger;
            }
        } else if (gap <= tau_circle) {
            throw Error(ErrorCode::NearCircleAmbiguous,
                        "root " + format_cnum(r.location) + " lies within " + format_real(tau_circle) + " of the circle");
        }
    }
    if (out.circle_root)
        out.witness = pow1mz_handle(-1.0 / p - 1.0, std::conj(*out.circle_root));
    return out;
}

// ---------------------------------------------------------------- root shift

struct RootShiftReport {
    AnalyticHandle quotient_term;    // h(z) / (z - z0)
    cplx constant_term{};            // h(0) / z0
    AnalyticHandle integral_term;    // int_0^z h / (xi - z0)^2
    std::vector<cplx> points;
    double residual = 0.0;
};

inline std::vector<cplx> default_sample_points(std::size_t n = 20) {
    std::vector<cplx> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = 0.15 + 0.75 * static_cast<double>(k % 5) / 4.0;
        pts.push_back(std::polar(r, two_pi * (0.618033988749895 * static_cast<double>(k) + 0.05)));
    }
    return pts;
}

/// T_u(f) = h/(z - z0) + h(0)/z0 + int_0^z h/(xi - z0)^2, h = int_{z0}^z f (zeta - z0) u'.
inline RootShiftReport root_shift_decomposition(const Symbol& u, cplx z0, const AnalyticHandle& f,
                                                const std::vector<cplx>& points = default_sample_points()) {
    if (z0 == cplx{})
        throw Error(ErrorCode::Z0AtOrigin, "z0 must be non-zero");
    if (!(std::abs(z0) < 1.0))
        throw Error(ErrorCode::ParameterOutOfRange, "z0 must lie in the open disc");
    const AnalyticHandle up = u.g_prime;
    auto integrand = [f, up, z0](cplx w) { return f(w) * (w - z0) * up(w); };
    auto h = [integrand, z0](cplx z) {
        return integrate_segment(integrand, z0, z).value;
    };
    auto q = [h, z0](cplx xi) { return h(xi) / ((xi - z0) * (xi - z0)); };

    RootShiftReport out;
    out.constant_term = h(0.0) / z0;
    {
        HandleSpec s;
        s.eval = [h, z0](cplx z) { return h(z) / (z - z0); };
        s.description = "h/(z - z0)";
        out.quotient_term = AnalyticHandle(std::move(s));
    }
    {
        HandleSpec s;
        s.eval = [q](cplx z) { return integrate_segment(q, cplx{}, z).value; };
        s.description = "int h/(xi - z0)^2";
        out.integral_term = AnalyticHandle(std::move(s));
    }
    const AnalyticHandle lhs = volterra_apply(u, f).value;
    for (const cplx& z : points) {
        if (std::abs(z - z0) < 1e-3)
            continue;
        out.points.push_back(z);
        const cplx rhs = out.quotient_term(z) + out.constant_term + out.integral_term(z);
        out.residual = std::max(out.residual, std::abs(lhs(z) - rhs));
    }
    return out;
}

// ---------------------------------------------------------------- separating symbol

struct SeparatingReport {
    AnalyticHandle q_h2;
    Symbol h2;
    AnalyticHandle F;
    MembershipVerdict F_in_g;
    MembershipVerdict F_in_h2;
    AnalyticHandle image_h2;   // T_{h2}(F)
};

/// q_{h2} = q_{h1} (z - z0)^{-lambda2} (1 - z)^{1/p}, h2' = g' q_{h2}, F = (1 - z)^{-1/p-1} / g'.
inline SeparatingReport separating_symbol(const Symbol& g, const AnalyticHandle& q_h1, cplx z0, int lambda2, double p,
                                          const NormOptions& opt = {}) {
    if (lambda2 < 1)
        throw Error(ErrorCode::ParameterOutOfRange, "lambda2 must be positive");
    const AnalyticHandle factor = power(polynomial_handle({-z0, 1.0}), lambda2);
    const AnalyticHandle reduced = safe_quotient(q_h1, factor, {{z0, lambda2}});
    if (!reduced.poles().empty())
        throw Error(ErrorCode::InsufficientVanishing,
                    "q_h1 does not vanish to order " + std::to_string(lambda2) + " at " + format_cnum(z0));
    SeparatingReport out;
    out.q_h2 = product(reduced, pow1mz_handle(1.0 / p));
    out.h2 = symbol_from_derivative(product(g.g_prime, out.q_h2));
    out.F = safe_quotient(pow1mz_handle(-1.0 / p - 1.0), g.g_prime, g.zeros_of_g_prime);
    out.F_in_g = mero_domain_membership(g, out.F, p, opt);
    out.F_in_h2 = mero_domain_membership(out.h2, out.F, p, opt);
    out.image_h2 = volterra_apply(out.h2, out.F).value;
    return out;
}

// ---------------------------------------------------------------- multipliers

struct MultiplierReport {
    std::vector<double> ratios;
    std::vector<Classification> product_classes;
    double max_ratio = 0.0;
    NormEstimate phi_sup;
    bool all_finite = true;
};

inline MultiplierReport multiplier_check(const Symbol& g, const AnalyticHandle& phi, double p,
                                         const std::vector<AnalyticHandle>& samples, const NormOptions& opt = {}) {
    MultiplierReport out;
    out.phi_sup = hinf_sup(phi, opt);
    for (const AnalyticHandle& f : samples) {
        const auto base = optdomain_norm(g, f, p, opt);
        if (!base.finite())
            throw Error(ErrorCode::NotInDomain, "sample " + f.description() + " is not in the domain");
        const auto prod = optdomain_norm(g, product(phi, f), p, opt);
        out.product_classes.push_back(prod.classification);
        double ratio = std::numeric_limits<double>::infinity();
        if (prod.finite())
            ratio = base.value > 0.0 ? prod.value / base.value : (prod.value > 0.0 ? ratio : 1.0);
        else
            out.all_finite = false;
        out.ratios.push_back(ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
    }
    return out;
}

struct BoundedBelowReport {
    AnalyticHandle h;   // g2'/g1'
    NormEstimate h_sup;
    double inf_abs = 0.0;
    Classification bounded_below = Classification::Inconclusive;
    std::vector<double> bergman_ratios;   // p = 2 only
};

inline BoundedBelowReport bounded_below_multiplier_check(const Symbol& g1, const Symbol& g2, double p,
                                                         const std::vector<AnalyticHandle>& samples = {},
                                                         const NormOptions& opt = {}) {
    BoundedBelowReport out;
    out.h = safe_quotient(g2.g_prime, g1.g_prime, g1.zeros_of_g_prime);
    if (!out.h.poles().empty())
        throw Error(ErrorCode::QuotientNotAnalytic, "g2'/g1' has poles");
    out.h_sup = hinf_sup(out.h, opt);

    const auto& radii = opt.schedule.radii;
    const double outer = radii.back();
    const auto rule = detail::design_rule(
        [&](double t) { return 1.0 / std::max(std::abs(out.h(std::polar(outer, t))), 1e-300); }, outer,
        detail::singular_angles(out.h), opt.angular_tol);
    std::vector<double> angles = rule.theta;
    angles.insert(angles.end(), rule.ends.begin(), rule.ends.end());
    std::vector<double> inv;
    double running = 0.0;
    out.inf_abs = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        double m = std::numeric_limits<double>::infinity();
        for (double t : angles)
            m = std::min(m, std::abs(out.h(std::polar(r, t))));
        out.inf_abs = std::min(out.inf_abs, m);
        running = std::max(running, 1.0 / m);
        inv.push_back(running);
    }
    if (out.h.boundary_regular())
        for (double t : angles)
            out.inf_abs = std::min(out.inf_abs, std::abs(out.h(std::polar(1.0, t))));
    auto verdict = classify_increments(inv, opt.classifier);
    out.bounded_below = verdict.classification;
    if (p == 2.0) {
        for (const AnalyticHandle& f : samples) {
            const double a = bergman_weighted_norm(f, g2, opt).value;
            const double b = bergman_weighted_norm(f, g1, opt).value;
            out.bergman_ratios.push_back(b > 0.0 ? a / b : std::numeric_limits<double>::quiet_NaN());
        }
    }
    return out;
}

// ---------------------------------------------------------------- Blaschke reduction

struct BlaschkeReduceReport {
    SeparationReport separation;
    std::vector<Verdict> g_verdicts;
    std::vector<Verdict> u_verdicts;
    int agreements = 0;
    std::vector<double> bergman_g;
    std::vector<double> bergman_u;
};

/// g' = B u' with B a finite Blaschke product; [T_g,H^2] and [T_u,H^2] must agree.
inline BlaschkeReduceReport blaschke_reduce_check(const Symbol& u, const std::vector<cplx>& b_zeros,
                                                  const std::vector<AnalyticHandle>& samples,
                                                  const NormOptions& opt = {}) {
    if (!locally_univalent(u))
        throw Error(ErrorCode::NotLocallyUnivalent, "u' vanishes on the test grid");
    BlaschkeReduceReport out;
    out.separation = blaschke_separation(b_zeros);
    if (!out.separation.interpolating)
        throw Error(ErrorCode::NotInterpolatingAsGiven, "repeated Blaschke zero; split into interpolating factors");
    const Symbol g = symbol_from_derivative(product(blaschke_handle(b_zeros), u.g_prime));
    for (const AnalyticHandle& f : samples) {
        const auto vg = holo_domain_membership(g, f, 2.0, opt);
        const auto vu = holo_domain_membership(u, f, 2.0, opt);
        out.g_verdicts.push_back(vg.status);
        out.u_verdicts.push_back(vu.status);
        if (vg.status == vu.status)
            ++out.agreements;
        out.bergman_g.push_back(bergman_weighted_norm(f, g, opt).value);
        out.bergman_u.push_back(bergman_weighted_norm(f, u, opt).value);
    }
    return out;
}

// ---------------------------------------------------------------- V_g inclusion

struct VgInclusionReport {
    NormEstimate q_sup;
    Symbol h;                                // h' = q g'
    std::vector<Verdict> sample_in_g;
    std::vector<Verdict> sample_in_h;
    bool pass = false;
};

inline VgInclusionReport vg_inclusion_check(const Symbol& g, const AnalyticHandle& q,
                                            const std::vector<AnalyticHandle>& samples, double p,
                                            const NormOptions& opt = {}) {
    VgInclusionReport out;
    out.q_sup = hinf_sup(q, opt);
    if (!out.q_sup.finite())
        throw Error(ErrorCode::QNotBounded, "q is not bounded");
    out.h = symbol_from_derivative(product(q, g.g_prime));
    out.pass = true;
    for (const AnalyticHandle& f : samples) {
        out.sample_in_g.push_back(holo_domain_membership(g, f, p, opt).status);
        if (out.sample_in_g.back() != Verdict::In)
            throw Error(ErrorCode::NotInDomain, "sample " + f.description() + " is not in [T_g,H^p]");
        const Verdict v = out.h.is_constant() ? Verdict::In : holo_domain_membership(out.h, f, p, opt).status;
        out.sample_in_h.push_back(v);
        if (v != Verdict::In)
            out.pass = false;
    }
    return out;
}

// ---------------------------------------------------------------- density

struct DensityPoint {
    std::size_t degree = 0;
    double error = 0.0;
    Classification classification = Classification::Finite;
};

/// ||T_g f - P_N||_{H^p} for the Taylor polynomials P_N of T_g f.
inline std::vector<DensityPoint> density_experiment(const Symbol& g, const AnalyticHandle& f, double p,
                                                    const std::vector<std::size_t>& degrees,
                                                    const NormOptions& opt = {}) {
    const AnalyticHandle T = volterra_apply(g, f).value;
    std::size_t nmax = 0;
    for (auto n : degrees)
        nmax = std::max(nmax, n);
    const auto coeffs = taylor_coefficients(T, nmax);
    std::vector<DensityPoint> out;
    for (auto n : degrees) {
        std::vector<cplx> c(coeffs.begin(), coeffs.begin() + static_cast<long>(n) + 1);
        c[0] = 0.0;
        const auto e = hp_norm(difference(T, polynomial_handle(c)), p, opt);
        out.push_back({n, e.finite() ? e.value : std::numeric_limits<double>::infinity(), e.classification});
    }
    return out;
}

// ---------------------------------------------------------------- sample families

/// Fixed holomorphic samples {1, (1-z)^{-0.4}, (1-z)^{-0.6}}.
inline std::vector<AnalyticHandle> standard_samples() {
    return {constant_handle(1.0), pow1mz_handle(-0.4), pow1mz_handle(-0.6)};
}

inline constexpr std::uint64_t default_seed = 0x5EED;

/// Random polynomial with complex normal coefficients scaled by 1/(k+1).
inline std::vector<cplx> random_polynomial(std::mt19937_64& rng, std::size_t degree) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> c(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k)
        c[k] = cplx{n(rng), n(rng)} / static_cast<double>(k + 1);
    return c;
}

} // namespace vd
