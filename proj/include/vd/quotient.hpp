#pragma once

/**
 * @file quotient.hpp
 * @brief Quotients of handles with removable-singularity handling.
 *
 * Around each listed zero w of the denominator the quotient is sampled on a
 * circle of radius rho and its Laurent coefficients are read off by a
 * discrete Fourier transform. Negative modes above 1e-3 of the sample
 * maximum mark an uncancelled pole; otherwise points within rho of w are
 * evaluated from the degree-6 regular part.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>
#include <optional>

#include "handle.hpp"
#include "roots.hpp"

namespace vd {

inline constexpr double quotient_radius = 1e-3;
inline constexpr int quotient_fit_degree = 6;

struct LocalExpansion {
    cplx center{};
    double radius = 0.0;
    int pole_order = 0;
    std::vector<cplx> regular;   // c_0 .. c_6 of the Laurent series

    cplx evaluate(cplx z) const {
        const cplx d = z - center;
        cplx acc{};
        for (auto it = regular.rbegin(); it != regular.rend(); ++it)
            acc = acc * d + *it;
        return acc;
    }
};

template <typename F>
LocalExpansion local_expansion(F&& q, cplx center, double radius, int max_pole_order = 12) {
    constexpr int samples = 32;
    std::vector<cplx> vals(samples);
    double vmax = 0.0;
    for (int k = 0; k < samples; ++k) {
        vals[k] = q(center + std::polar(radius, two_pi * k / samples));
        vmax = std::max(vmax, std::abs(vals[k]));
    }
    auto mode = [&](int n) {
        CompensatedSum<cplx> s;
        for (int k = 0; k < samples; ++k)
            s.add(vals[k] * std::polar(1.0, -two_pi * n * k / samples));
        return s.value() / static_cast<double>(samples);
    };
    LocalExpansion e;
    e.center = center;
    e.radius = radius;
    for (int j = max_pole_order; j >= 1; --j) {
        if (std::abs(mode(-j)) > 1e-3 * vmax) {
            e.pole_order = j;
            break;
        }
    }
    for (int n = 0; n <= quotient_fit_degree; ++n)
        e.regular.push_back(mode(n) / std::pow(radius, n));
    return e;
}

namespace detail {

inline double local_radius(cplx w, const std::vector<cplx>& others) {
    double rho = std::min(quotient_radius, 0.5 * (1.0 - std::abs(w)));
    for (const cplx& o : others)
        if (o != w)
            rho = std::min(rho, 0.25 * std::abs(o - w));
    return rho;
}

/// Quotient of polynomial long division when the remainder vanishes.
inline std::optional<std::vector<cplx>> exact_division(std::vector<cplx> num, std::vector<cplx> den) {
    num = trim(std::move(num));
    den = trim(std::move(den));
    if (den.back() == cplx{} || num.size() < den.size())
        return std::nullopt;
    double scale = 0.0;
    for (const cplx& c : num)
        scale = std::max(scale, std::abs(c));
    std::vector<cplx> q(num.size() - den.size() + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = num[k + den.size() - 1] / den.back();
        for (std::size_t j = 0; j < den.size(); ++j)
            num[k + j] -= q[k] * den[j];
    }
    for (std::size_t j = 0; j + 1 < den.size(); ++j)
        if (std::abs(num[j]) > 1e-12 * scale)
            return std::nullopt;
    return q;
}

/// The common value when q agrees with one constant to 1e-13 on the test grid.
template <typename Q>
std::optional<cplx> constant_on_grid(const Q& q) {
    const cplx c = q(cplx{0.0});
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        return std::nullopt;
    for (const cplx& z : test_grid())
        if (std::abs(q(z) - c) > 1e-13 * (1.0 + std::abs(c)))
            return std::nullopt;
    return c;
}

} // namespace detail

/// numer / denom, where denom_zeros lists the zeros of denom in the disc.
inline AnalyticHandle safe_quotient(const AnalyticHandle& numer, const AnalyticHandle& denom,
                                    const std::vector<Root>& denom_zeros) {
    if (numer.polynomial() && numer.polynomial()->size() == 1 && (*numer.polynomial())[0] == cplx{})
        return constant_handle(0.0);
    if (numer.polynomial() && denom.polynomial()) {
        if (auto q = detail::exact_division(*numer.polynomial(), *denom.polynomial()))
            return polynomial_handle(std::move(*q));
    }
    std::vector<cplx> inside;
    std::vector<cplx> boundary;
    for (const Root& r : denom_zeros) {
        const double m = std::abs(r.location);
        if (std::abs(m - 1.0) <= 1e-9)
            boundary.push_back(r.location / m);
        else if (m < 1.0)
            inside.push_back(r.location);
    }
    auto direct = [numer, denom](cplx z) { return numer(z) / denom(z); };
    if (inside.empty() && !numer.polynomial() && !numer.is_primitive())
        if (auto c = detail::constant_on_grid(direct))
            return constant_handle(*c);

    std::vector<LocalExpansion> fits;
    std::vector<Pole> poles = numer.poles();
    for (const cplx& w : inside) {
        auto e = local_expansion(direct, w, detail::local_radius(w, inside));
        if (e.pole_order > 0)
            poles = detail::merge_points(std::move(poles), {{w, e.pole_order}}, true);
        else
            fits.push_back(std::move(e));
    }

    HandleSpec s;
    s.eval = [direct, fits](cplx z) {
        for (const auto& e : fits)
            if (std::abs(z - e.center) < e.radius)
                return e.evaluate(z);
        return direct(z);
    };
    s.deriv = [numer, denom, fits](cplx z) {
        for (const auto& e : fits)
            if (std::abs(z - e.center) < e.radius) {
                const cplx d = z - e.center;
                cplx acc{};
                for (std::size_t n = e.regular.size() - 1; n >= 1; --n)
                    acc = acc * d + static_cast<double>(n) * e.regular[n];
                return acc;
            }
        const cplx den = denom(z);
        return (numer.derivative(z) * den - numer(z) * denom.derivative(z)) / (den * den);
    };
    s.poles = std::move(poles);
    s.singular = detail::merge_boundary(
        detail::merge_boundary(numer.singular_boundary_points(), denom.singular_boundary_points()), boundary);
    s.boundary_regular = numer.boundary_regular() && denom.boundary_regular() && boundary.empty();
    if (numer.polynomial() && numer.polynomial()->size() == 1 && (*numer.polynomial())[0] == cplx{1.0})
        s.description = "recip(" + denom.description() + ")";
    else
        s.description = "(" + numer.description() + " * recip(" + denom.description() + "))";
    return AnalyticHandle(std::move(s));
}

/// Zeros of f in the open disc (and on the circle for polynomials).
inline std::vector<Root> zeros_of(const AnalyticHandle& f) {
    if (f.polynomial()) {
        if (f.polynomial()->size() < 2)
            return {};
        return polynomial_roots(*f.polynomial());
    }
    if (f.known_zeros()) {
        std::vector<Root> out;
        for (const Pole& p : *f.known_zeros())
            out.push_back({p.location, p.multiplicity});
        return out;
    }
    if (auto z = disc_zeros(f))
        return *z;
    throw Error(ErrorCode::QuotientNotAnalytic, "could not locate the zeros of " + f.description());
}

inline AnalyticHandle recip(const AnalyticHandle& f) {
    if (f.polynomial() && f.polynomial()->size() == 1) {
        const cplx c = (*f.polynomial())[0];
        if (c == cplx{})
            throw Error(ErrorCode::DivisionByVanishingSeries, "reciprocal of the zero function");
        return relabel(constant_handle(1.0 / c), "recip(" + f.description() + ")");
    }
    return safe_quotient(constant_handle(1.0), f, zeros_of(f));
}

} // namespace vd
