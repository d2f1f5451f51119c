#pragma once

/**
 * @file operators.hpp
 * @brief T_g(f) = int_0^z f g', the companion S_g(f) = int_0^z g f', the
 *        Cesaro operator and the canonical elements h'/g' of optimal domains.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "handle.hpp"
#include "quotient.hpp"
#include "series.hpp"
#include "symbol.hpp"

namespace vd {

enum class Method { SeriesPath, QuadraturePath };

inline std::string to_string(Method m) { return m == Method::SeriesPath ? "SeriesPath" : "QuadraturePath"; }

struct OperatorResult {
    AnalyticHandle value;
    Method method = Method::SeriesPath;
    double est_error = 0.0;
};

struct OperatorOptions {
    std::optional<Method> force;
    std::size_t order = default_series_order;
};

struct PoleCheck {
    bool ok = true;
    std::vector<std::string> diagnostics;
};

/// Every pole (w, m) of f must sit on a zero of g' of multiplicity >= m.
inline PoleCheck check_pole_compatibility(const Symbol& g, const AnalyticHandle& f) {
    PoleCheck out;
    for (const Pole& p : f.poles()) {
        int available = 0;
        for (const Root& r : g.zeros_of_g_prime)
            if (std::abs(r.location - p.location) <= 1e-7)
                available += r.multiplicity;
        if (available < p.multiplicity) {
            out.ok = false;
            out.diagnostics.push_back("pole at " + format_cnum(p.location) + " of order " +
                                      std::to_string(p.multiplicity) + " meets a zero of g' of order " +
                                      std::to_string(available));
        }
    }
    return out;
}

namespace detail {

inline AnalyticHandle analytic_product(const AnalyticHandle& a, const AnalyticHandle& b, std::string description) {
    HandleSpec s;
    s.eval = [a, b](cplx z) { return a(z) * b(z); };
    s.singular = merge_boundary(a.singular_boundary_points(), b.singular_boundary_points());
    s.boundary_regular = a.boundary_regular() && b.boundary_regular();
    s.description = std::move(description);
    return AnalyticHandle(std::move(s));
}

inline std::vector<cplx> series_antiderivative_of_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t order = (a.size() - 1) + (b.size() - 1);
    const auto prod = TaylorSeries(a).with_order(order) * TaylorSeries(b).with_order(order);
    const auto prim = antiderivative(prod);
    return {prim.coeffs().begin(), prim.coeffs().end()};
}

inline double probe_error(const AnalyticHandle& integrand) {
    SegmentOptions opt;
    opt.grade = !integrand.boundary_regular();
    double worst = 0.0;
    for (const cplx z : {cplx{0.5, 0.0}, std::polar(0.9, 0.3), std::polar(0.9, 2.5)})
        worst = std::max(worst, integrate_segment([&](cplx w) { return integrand(w); }, cplx{}, z, opt).est_error);
    return worst;
}

inline OperatorResult integrate_product(const AnalyticHandle& a, const AnalyticHandle& b, const std::string& label,
                                        const OperatorOptions& opt) {
    const bool series = a.polynomial() && b.polynomial();
    if (series && opt.force.value_or(Method::SeriesPath) == Method::SeriesPath) {
        auto c = series_antiderivative_of_product(*a.polynomial(), *b.polynomial());
        return {relabel(polynomial_handle(std::move(c)), label), Method::SeriesPath, 0.0};
    }
    auto integrand = analytic_product(a, b, "(" + a.description() + " * " + b.description() + ")");
    return {primitive_handle(integrand, 0.0, label), Method::QuadraturePath, probe_error(integrand)};
}

} // namespace detail

inline OperatorResult volterra_apply(const Symbol& g, const AnalyticHandle& f, const OperatorOptions& opt = {}) {
    const auto check = check_pole_compatibility(g, f);
    if (!check.ok)
        throw Error(ErrorCode::PoleNotCancelled, check.diagnostics.front());
    if (g.is_constant() || (f.polynomial() && f.polynomial()->size() == 1 && (*f.polynomial())[0] == cplx{}))
        return {constant_handle(0.0), Method::SeriesPath, 0.0};
    if (f.polynomial() && f.polynomial()->size() == 1 && (*f.polynomial())[0] != cplx{} && g.g(0.0) == cplx{} &&
        !g.g.polynomial())
        return {relabel(scale(g.g, (*f.polynomial())[0]), "T[" + g.g.description() + "](" + f.description() + ")"),
                Method::SeriesPath, 0.0};
    return detail::integrate_product(f, g.g_prime, "T[" + g.g.description() + "](" + f.description() + ")", opt);
}

inline OperatorResult companion_apply(const Symbol& g, const AnalyticHandle& f, const OperatorOptions& opt = {}) {
    const auto fp = derivative_handle(f);
    if (fp.polynomial() && fp.polynomial()->size() == 1 && (*fp.polynomial())[0] == cplx{})
        return {constant_handle(0.0), Method::SeriesPath, 0.0};
    return detail::integrate_product(g.g, fp, "S[" + g.g.description() + "](" + f.description() + ")", opt);
}

inline OperatorResult cesaro_apply(const AnalyticHandle& f, const OperatorOptions& opt = {}) {
    return volterra_apply(log1mz_symbol(), f, opt);
}

/// f = h' / g' with removable singularities resolved at the zeros of g'.
inline AnalyticHandle canonical_domain_element(const Symbol& g, const AnalyticHandle& h) {
    if (g.is_constant())
        throw Error(ErrorCode::ConstantSymbol, "g is constant");
    return safe_quotient(derivative_handle(h), g.g_prime, g.zeros_of_g_prime);
}

/**
 * Taylor coefficients c_0..c_n of f by a Cauchy integral on the circle of
 * radius 10^{-1/n}, which bounds the amplification rho^{-k} by ten.
 */
inline std::vector<cplx> taylor_coefficients(const AnalyticHandle& f, std::size_t n) {
    if (f.polynomial()) {
        auto c = *f.polynomial();
        c.resize(n + 1);
        return c;
    }
    const double rho = std::pow(10.0, -1.0 / static_cast<double>(std::max<std::size_t>(n, 1)));
    std::size_t m = 64;
    while (static_cast<double>(m) * (1.0 - rho) < 40.0 || m < 4 * n)
        m *= 2;
    std::vector<cplx> vals(m);
    for (std::size_t j = 0; j < m; ++j)
        vals[j] = f(std::polar(rho, two_pi * static_cast<double>(j) / static_cast<double>(m)));
    std::vector<cplx> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        CompensatedSum<cplx> s;
        for (std::size_t j = 0; j < m; ++j)
            s.add(vals[j] * std::polar(1.0, -two_pi * static_cast<double>((k * j) % m) / static_cast<double>(m)));
        c[k] = s.value() / (static_cast<double>(m) * std::pow(rho, static_cast<double>(k)));
    }
    return c;
}

} // namespace vd
