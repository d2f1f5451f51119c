#pragma once

/**
 * @file symbol.hpp
 * @brief Symbols g of generalized Volterra operators together with g' and Z(g').
 *
 * Every builder normalises g(0) = 0.
 */

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "error.hpp"
#include "handle.hpp"
#include "quotient.hpp"
#include "roots.hpp"

namespace vd {

enum class SymbolKind { Constant, Polynomial, LogOneMinusZ, PowerOneMinusZ, Blaschke, Composite };

inline std::string to_string(SymbolKind k) {
    switch (k) {
    case SymbolKind::Constant: return "Constant";
    case SymbolKind::Polynomial: return "Polynomial";
    case SymbolKind::LogOneMinusZ: return "LogOneMinusZ";
    case SymbolKind::PowerOneMinusZ: return "PowerOneMinusZ";
    case SymbolKind::Blaschke: return "Blaschke";
    case SymbolKind::Composite: return "Composite";
    }
    return "?";
}

struct Symbol {
    AnalyticHandle g;
    AnalyticHandle g_prime;
    std::vector<Root> zeros_of_g_prime;
    bool zeros_exact = true;
    SymbolKind kind = SymbolKind::Composite;
    std::vector<cplx> coeffs;    // Polynomial: coefficients of g
    double alpha = 0.0;          // PowerOneMinusZ
    std::vector<cplx> bzeros;    // Blaschke: zeros of g' = B

    bool is_constant() const { return kind == SymbolKind::Constant; }
};

inline constexpr double constant_symbol_threshold = 1e-13;

namespace detail {

inline bool vanishes_on_grid(const AnalyticHandle& h) {
    double m = 0.0;
    for (const cplx& z : test_grid())
        m = std::max(m, std::abs(h(z)));
    return m < constant_symbol_threshold;
}

inline Symbol finish_symbol(Symbol s) {
    if (detail::vanishes_on_grid(s.g_prime)) {
        s.kind = SymbolKind::Constant;
        s.zeros_of_g_prime.clear();
        s.zeros_exact = true;
    }
    return s;
}

} // namespace detail

inline Symbol polynomial_symbol(std::vector<cplx> coeffs) {
    coeffs = detail::trim(std::move(coeffs));
    coeffs[0] = 0.0;
    Symbol s;
    s.kind = SymbolKind::Polynomial;
    s.coeffs = coeffs;
    s.g = polynomial_handle(coeffs);
    s.g_prime = polynomial_handle(detail::poly_derivative(coeffs));
    if (s.g_prime.polynomial()->size() >= 2)
        s.zeros_of_g_prime = polynomial_roots(*s.g_prime.polynomial());
    return detail::finish_symbol(std::move(s));
}

inline Symbol log1mz_symbol() {
    Symbol s;
    s.kind = SymbolKind::LogOneMinusZ;
    s.g = log1mz_handle();
    HandleSpec d;
    d.eval = [](cplx z) { return 1.0 / (1.0 - z); };
    d.deriv = [](cplx z) { return 1.0 / ((1.0 - z) * (1.0 - z)); };
    d.singular = {cplx{1.0}};
    d.description = "recip(poly(1,-1))";
    d.zeros = std::vector<Pole>{};
    s.g_prime = AnalyticHandle(std::move(d));
    return s;
}

/// g = (1 - (1 - z)^{alpha+1}) / (alpha + 1), so g' = (1 - z)^alpha.
inline Symbol power_symbol(double alpha) {
    if (alpha == -1.0)
        return log1mz_symbol();
    Symbol s;
    s.kind = SymbolKind::PowerOneMinusZ;
    s.alpha = alpha;
    const double b = alpha + 1.0;
    auto pw = pow1mz_handle(b);
    s.g = scale(difference(constant_handle(1.0), pw), 1.0 / b);
    s.g = relabel(s.g, "(1 - pow1mz(" + format_real(b) + ")) / " + format_real(b));
    s.g_prime = pow1mz_handle(alpha);
    if (alpha > 0.0 && alpha == std::floor(alpha))
        s.zeros_of_g_prime = {{cplx{1.0}, static_cast<int>(alpha)}};
    return detail::finish_symbol(std::move(s));
}

/// g' = B (finite Blaschke product); g is its primitive from 0.
inline Symbol blaschke_symbol(const std::vector<cplx>& zeros) {
    Symbol s;
    s.kind = SymbolKind::Blaschke;
    s.bzeros = zeros;
    s.g_prime = blaschke_handle(zeros);
    s.g = primitive_handle(s.g_prime, 0.0, "int " + s.g_prime.description());
    for (const Pole& p : *s.g_prime.known_zeros())
        s.zeros_of_g_prime.push_back({p.location, p.multiplicity});
    return s;
}

/// Symbol with prescribed derivative gp; g = int_0^z gp.
inline Symbol symbol_from_derivative(const AnalyticHandle& gp) {
    if (gp.polynomial()) {
        const auto& d = *gp.polynomial();
        std::vector<cplx> c(d.size() + 1);
        for (std::size_t k = 0; k < d.size(); ++k)
            c[k + 1] = d[k] / static_cast<double>(k + 1);
        return polynomial_symbol(std::move(c));
    }
    Symbol s;
    s.kind = SymbolKind::Composite;
    s.g_prime = gp;
    s.g = primitive_handle(gp, 0.0, "int " + gp.description());
    if (gp.known_zeros()) {
        for (const Pole& p : *gp.known_zeros())
            s.zeros_of_g_prime.push_back({p.location, p.multiplicity});
    } else if (!detail::vanishes_on_grid(gp)) {
        auto z = disc_zeros(gp);
        s.zeros_exact = false;
        if (!z)
            throw Error(ErrorCode::QuotientNotAnalytic, "could not locate the zeros of " + gp.description());
        s.zeros_of_g_prime = *z;
    }
    return detail::finish_symbol(std::move(s));
}

/// Symbol from an expression for g itself (g(0) is subtracted).
inline Symbol symbol_from_handle(const AnalyticHandle& g) {
    if (g.polynomial())
        return polynomial_symbol(*g.polynomial());
    if (g.description() == "log1mz")
        return log1mz_symbol();
    Symbol s;
    s.kind = SymbolKind::Composite;
    const cplx g0 = g(0.0);
    s.g = g0 == cplx{} ? g : relabel(difference(g, constant_handle(g0)), g.description());
    s.g_prime = derivative_handle(g);
    if (s.g_prime.polynomial() && s.g_prime.polynomial()->size() >= 2) {
        s.zeros_of_g_prime = polynomial_roots(*s.g_prime.polynomial());
    } else if (!detail::vanishes_on_grid(s.g_prime)) {
        auto z = disc_zeros(s.g_prime);
        s.zeros_exact = false;
        if (!z)
            throw Error(ErrorCode::QuotientNotAnalytic, "could not locate the zeros of " + s.g_prime.description());
        s.zeros_of_g_prime = *z;
    }
    return detail::finish_symbol(std::move(s));
}

/// c * g, sharing the zero set of g'.
inline Symbol scale_symbol(const Symbol& g, cplx c) {
    if (g.kind == SymbolKind::Polynomial) {
        auto cs = g.coeffs;
        for (auto& x : cs)
            x *= c;
        return polynomial_symbol(std::move(cs));
    }
    Symbol s = g;
    s.kind = SymbolKind::Composite;
    s.g = scale(g.g, c);
    s.g_prime = scale(g.g_prime, c);
    return detail::finish_symbol(std::move(s));
}

inline const Symbol& identity_symbol() {
    static const Symbol s = polynomial_symbol({0.0, 1.0});
    return s;
}

} // namespace vd
