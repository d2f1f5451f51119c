#pragma once

/**
 * @file handle.hpp
 * @brief Evaluation handles for analytic and meromorphic functions on the disc.
 *
 * An AnalyticHandle is an immutable, shareable description of a function:
 * an evaluation oracle, an optional derivative oracle, pole and boundary
 * singularity metadata and, when known, exact polynomial coefficients or a
 * representation as a primitive f(z) = f0 + int_0^z k.
 */

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "mobius.hpp"
#include "quadrature.hpp"
#include "series.hpp"

namespace vd {

struct Pole {
    cplx location{};
    int multiplicity = 1;
};

struct HandleSpec;

class AnalyticHandle {
public:
    using Fn = std::function<cplx(cplx)>;

    AnalyticHandle();
    explicit AnalyticHandle(HandleSpec spec);

    cplx operator()(cplx z) const;
    cplx eval(cplx z) const { return (*this)(z); }

    /// Derivative oracle, or a central difference with step 1e-6 (1 - |z|).
    cplx derivative(cplx z) const;
    bool has_derivative() const;

    const std::vector<Pole>& poles() const;
    const std::vector<cplx>& singular_boundary_points() const;
    const std::string& description() const;
    bool boundary_regular() const;
    const std::optional<std::vector<cplx>>& polynomial() const;
    const std::optional<std::vector<Pole>>& known_zeros() const;
    const HandleSpec& spec() const { return *spec_; }

    bool is_primitive() const;
    cplx primitive_offset() const;
    const AnalyticHandle& primitive_integrand() const;

private:
    std::shared_ptr<const HandleSpec> spec_;
};

struct Primitive {
    cplx offset{};
    AnalyticHandle integrand;
};

struct HandleSpec {
    AnalyticHandle::Fn eval;
    AnalyticHandle::Fn deriv;   // may be empty
    std::vector<Pole> poles;
    std::vector<cplx> singular;
    std::string description;
    bool boundary_regular = false;
    std::optional<std::vector<cplx>> poly;
    std::optional<Primitive> primitive;
    std::optional<std::vector<Pole>> zeros;   // zeros in the open disc, when known
};

inline AnalyticHandle::AnalyticHandle(HandleSpec spec) : spec_(std::make_shared<const HandleSpec>(std::move(spec))) {}

inline cplx AnalyticHandle::operator()(cplx z) const { return spec_->eval(z); }

inline bool AnalyticHandle::has_derivative() const { return static_cast<bool>(spec_->deriv); }

inline cplx AnalyticHandle::derivative(cplx z) const {
    if (spec_->deriv)
        return spec_->deriv(z);
    const double h = 1e-6 * (1.0 - std::abs(z));
    return (spec_->eval(z + h) - spec_->eval(z - h)) / (2.0 * h);
}

inline const std::vector<Pole>& AnalyticHandle::poles() const { return spec_->poles; }
inline const std::vector<cplx>& AnalyticHandle::singular_boundary_points() const { return spec_->singular; }
inline const std::string& AnalyticHandle::description() const { return spec_->description; }
inline bool AnalyticHandle::boundary_regular() const { return spec_->boundary_regular; }
inline const std::optional<std::vector<cplx>>& AnalyticHandle::polynomial() const { return spec_->poly; }
inline const std::optional<std::vector<Pole>>& AnalyticHandle::known_zeros() const { return spec_->zeros; }
inline bool AnalyticHandle::is_primitive() const { return spec_->primitive.has_value(); }
inline cplx AnalyticHandle::primitive_offset() const { return spec_->primitive->offset; }
inline const AnalyticHandle& AnalyticHandle::primitive_integrand() const { return spec_->primitive->integrand; }

// ---------------------------------------------------------------- formatting

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_cnum(cplx c) {
    if (c.imag() == 0.0)
        return format_real(c.real());
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", c.real(), c.imag() < 0 ? '-' : '+', std::abs(c.imag()));
    return buf;
}

/// Fixed grid of 50 points with |z| <= 0.9 used for identity checks.
inline const std::vector<cplx>& test_grid() {
    static const std::vector<cplx> grid = [] {
        std::vector<cplx> g;
        const double radii[] = {0.1, 0.3, 0.5, 0.7, 0.9};
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 10; ++k)
                g.push_back(std::polar(radii[i], two_pi * (k + 0.37 * i + 0.11) / 10.0));
        return g;
    }();
    return grid;
}

// ---------------------------------------------------------------- polynomials

namespace detail {

inline std::vector<cplx> trim(std::vector<cplx> c) {
    while (c.size() > 1 && c.back() == cplx{})
        c.pop_back();
    if (c.empty())
        c.push_back(cplx{});
    return c;
}

inline cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

inline std::vector<cplx> poly_derivative(const std::vector<cplx>& c) {
    if (c.size() <= 1)
        return {cplx{}};
    std::vector<cplx> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c[k];
    return trim(std::move(d));
}

inline std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return trim(std::move(out));
}

inline std::vector<cplx> poly_add(const std::vector<cplx>& a, const std::vector<cplx>& b, cplx sb = 1.0) {
    std::vector<cplx> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += sb * b[i];
    return trim(std::move(out));
}

inline std::vector<Pole> merge_points(std::vector<Pole> a, const std::vector<Pole>& b, bool add_multiplicities) {
    for (const Pole& p : b) {
        bool found = false;
        for (Pole& q : a) {
            if (std::abs(q.location - p.location) <= 1e-7) {
                q.multiplicity = add_multiplicities ? q.multiplicity + p.multiplicity
                                                    : std::max(q.multiplicity, p.multiplicity);
                found = true;
                break;
            }
        }
        if (!found)
            a.push_back(p);
    }
    return a;
}

inline std::vector<cplx> merge_boundary(std::vector<cplx> a, const std::vector<cplx>& b) {
    for (const cplx& p : b) {
        bool found = false;
        for (const cplx& q : a)
            if (std::abs(p - q) <= 1e-12)
                found = true;
        if (!found)
            a.push_back(p);
    }
    return a;
}

} // namespace detail

// ---------------------------------------------------------------- constructors

inline AnalyticHandle polynomial_handle(std::vector<cplx> coeffs) {
    coeffs = detail::trim(std::move(coeffs));
    auto d = detail::poly_derivative(coeffs);
    HandleSpec s;
    s.eval = [coeffs](cplx z) { return detail::horner(coeffs, z); };
    s.deriv = [d](cplx z) { return detail::horner(d, z); };
    s.boundary_regular = true;
    if (coeffs.size() == 1) {
        s.description = "const(" + format_cnum(coeffs[0]) + ")";
    } else if (coeffs.size() == 2 && coeffs[0] == cplx{} && coeffs[1] == cplx{1.0}) {
        s.description = "z";
    } else {
        s.description = "poly(";
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            s.description += (k ? "," : "") + format_cnum(coeffs[k]);
        s.description += ")";
    }
    s.poly = std::move(coeffs);
    return AnalyticHandle(std::move(s));
}

inline AnalyticHandle constant_handle(cplx c) { return polynomial_handle({c}); }
inline AnalyticHandle identity_handle() { return polynomial_handle({0.0, 1.0}); }

inline AnalyticHandle::AnalyticHandle() : AnalyticHandle(constant_handle(0.0)) {}

inline AnalyticHandle series_handle(const TaylorSeries& s) {
    return polynomial_handle(std::vector<cplx>(s.coeffs().begin(), s.coeffs().end()));
}

/// -log(1 - z), principal branch.
inline AnalyticHandle log1mz_handle() {
    HandleSpec s;
    s.eval = [](cplx z) { return -std::log(1.0 - z); };
    s.deriv = [](cplx z) { return 1.0 / (1.0 - z); };
    s.singular = {cplx{1.0}};
    s.description = "log1mz";
    s.zeros = std::vector<Pole>{{cplx{}, 1}};
    return AnalyticHandle(std::move(s));
}

/// (1 - c z)^alpha with the principal branch; c is a unimodular rotation.
inline AnalyticHandle pow1mz_handle(double alpha, cplx c = 1.0) {
    HandleSpec s;
    s.eval = [alpha, c](cplx z) { return std::exp(alpha * std::log(1.0 - c * z)); };
    s.deriv = [alpha, c](cplx z) { return -c * alpha * std::exp((alpha - 1.0) * std::log(1.0 - c * z)); };
    const bool entire = alpha >= 0.0 && alpha == std::floor(alpha);
    if (!entire)
        s.singular = {std::conj(c)};
    s.boundary_regular = entire;
    s.zeros = std::vector<Pole>{};
    if (c == cplx{1.0})
        s.description = "pow1mz(" + format_real(alpha) + ")";
    else
        s.description = "(1-(" + format_cnum(c) + ")z)^" + format_real(alpha);
    return AnalyticHandle(std::move(s));
}

/// Finite Blaschke product prod (z - a) / (1 - conj(a) z).
inline AnalyticHandle blaschke_handle(const std::vector<cplx>& zeros) {
    for (const cplx& a : zeros)
        if (!(std::abs(a) < 1.0))
            throw Error(ErrorCode::ZeroOutsideDisc, "Blaschke zero " + format_cnum(a) + " is not in the open disc");
    HandleSpec s;
    s.eval = [zeros](cplx z) {
        cplx b = 1.0;
        for (const cplx& a : zeros)
            b *= (z - a) / (1.0 - std::conj(a) * z);
        return b;
    };
    s.deriv = [zeros](cplx z) {
        cplx total{};
        for (std::size_t j = 0; j < zeros.size(); ++j) {
            const cplx dj = 1.0 - std::conj(zeros[j]) * z;
            cplx term = (1.0 - std::norm(zeros[j])) / (dj * dj);
            for (std::size_t k = 0; k < zeros.size(); ++k)
                if (k != j)
                    term *= (z - zeros[k]) / (1.0 - std::conj(zeros[k]) * z);
            total += term;
        }
        return total;
    };
    s.boundary_regular = true;
    s.description = "blaschke(";
    for (std::size_t k = 0; k < zeros.size(); ++k)
        s.description += (k ? "," : "") + format_cnum(zeros[k]);
    s.description += ")";
    if (zeros.empty())
        s.description = "const(1)";
    std::vector<Pole> zs;
    for (const cplx& a : zeros)
        zs = detail::merge_points(std::move(zs), {{a, 1}}, true);
    s.zeros = std::move(zs);
    return AnalyticHandle(std::move(s));
}

/// f(z) = offset + int_0^z integrand, evaluated along the segment [0, z].
inline AnalyticHandle primitive_handle(const AnalyticHandle& integrand, cplx offset, std::string description) {
    HandleSpec s;
    const bool regular = integrand.boundary_regular();
    s.eval = [integrand, offset, regular](cplx z) {
        SegmentOptions opt;
        opt.grade = !regular;
        return offset + integrate_segment([&](cplx w) { return integrand(w); }, cplx{}, z, opt).value;
    };
    s.deriv = [integrand](cplx z) { return integrand(z); };
    s.singular = integrand.singular_boundary_points();
    s.boundary_regular = regular;
    s.description = std::move(description);
    s.primitive = Primitive{offset, integrand};
    if (integrand.polynomial()) {
        auto c = *integrand.polynomial();
        std::vector<cplx> out(c.size() + 1);
        out[0] = offset;
        for (std::size_t k = 0; k < c.size(); ++k)
            out[k + 1] = c[k] / static_cast<double>(k + 1);
        s.poly = detail::trim(std::move(out));
    }
    return AnalyticHandle(std::move(s));
}

/// Rewrites a polynomial as a primitive of its exact derivative.
inline AnalyticHandle as_primitive(const AnalyticHandle& f) {
    if (f.is_primitive() || !f.polynomial())
        return f;
    const auto& c = *f.polynomial();
    auto prim = primitive_handle(polynomial_handle(detail::poly_derivative(c)), c[0], f.description());
    HandleSpec s = prim.spec();
    s.eval = f.spec().eval;
    return AnalyticHandle(std::move(s));
}

// ---------------------------------------------------------------- combinators

inline AnalyticHandle sum(const AnalyticHandle& f0, const AnalyticHandle& g0, cplx sg = 1.0) {
    if (f0.polynomial() && g0.polynomial())
        return polynomial_handle(detail::poly_add(*f0.polynomial(), *g0.polynomial(), sg));
    // A primitive plus a polynomial stays a primitive.
    const bool any_primitive = f0.is_primitive() || g0.is_primitive();
    const AnalyticHandle f = any_primitive ? as_primitive(f0) : f0;
    const AnalyticHandle g = any_primitive ? as_primitive(g0) : g0;
    HandleSpec s;
    s.eval = [f, g, sg](cplx z) { return f(z) + sg * g(z); };
    if (f.has_derivative() && g.has_derivative())
        s.deriv = [f, g, sg](cplx z) { return f.derivative(z) + sg * g.derivative(z); };
    s.poles = detail::merge_points(f.poles(), g.poles(), false);
    s.singular = detail::merge_boundary(f.singular_boundary_points(), g.singular_boundary_points());
    s.boundary_regular = f.boundary_regular() && g.boundary_regular();
    if (sg == cplx{1.0})
        s.description = "(" + f.description() + " + " + g.description() + ")";
    else if (sg == cplx{-1.0})
        s.description = "(" + f.description() + " - " + g.description() + ")";
    else
        s.description = "(" + f.description() + " + const(" + format_cnum(sg) + ") * " + g.description() + ")";
    if (f.is_primitive() && g.is_primitive()) {
        auto k = sum(f.primitive_integrand(), g.primitive_integrand(), sg);
        s.primitive = Primitive{f.primitive_offset() + sg * g.primitive_offset(), k};
    }
    return AnalyticHandle(std::move(s));
}

inline AnalyticHandle difference(const AnalyticHandle& f, const AnalyticHandle& g) { return sum(f, g, -1.0); }

inline AnalyticHandle scale(const AnalyticHandle& f, cplx c) {
    if (f.polynomial()) {
        auto p = *f.polynomial();
        for (auto& x : p)
            x *= c;
        return polynomial_handle(std::move(p));
    }
    HandleSpec s = f.spec();
    s.eval = [f, c](cplx z) { return c * f(z); };
    if (f.has_derivative())
        s.deriv = [f, c](cplx z) { return c * f.derivative(z); };
    s.description = "(const(" + format_cnum(c) + ") * " + f.description() + ")";
    if (c == cplx{}) {
        return constant_handle(0.0);
    }
    if (f.is_primitive())
        s.primitive = Primitive{c * f.primitive_offset(), scale(f.primitive_integrand(), c)};
    return AnalyticHandle(std::move(s));
}

inline AnalyticHandle product(const AnalyticHandle& f, const AnalyticHandle& g) {
    if (f.polynomial() && g.polynomial()) {
        auto h = polynomial_handle(detail::poly_mul(*f.polynomial(), *g.polynomial()));
        return h;
    }
    HandleSpec s;
    s.eval = [f, g](cplx z) { return f(z) * g(z); };
    if (f.has_derivative() && g.has_derivative())
        s.deriv = [f, g](cplx z) { return f.derivative(z) * g(z) + f(z) * g.derivative(z); };
    s.poles = detail::merge_points(f.poles(), g.poles(), true);
    s.singular = detail::merge_boundary(f.singular_boundary_points(), g.singular_boundary_points());
    s.boundary_regular = f.boundary_regular() && g.boundary_regular();
    s.description = "(" + f.description() + " * " + g.description() + ")";
    if (f.known_zeros() && g.known_zeros() && f.poles().empty() && g.poles().empty())
        s.zeros = detail::merge_points(*f.known_zeros(), *g.known_zeros(), true);
    return AnalyticHandle(std::move(s));
}

/// Non-negative integer power.
inline AnalyticHandle power(const AnalyticHandle& f, int n) {
    if (n < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "negative exponent; use recip");
    if (f.polynomial()) {
        std::vector<cplx> acc{1.0};
        for (int k = 0; k < n; ++k)
            acc = detail::poly_mul(acc, *f.polynomial());
        return polynomial_handle(std::move(acc));
    }
    if (n == 0)
        return constant_handle(1.0);
    HandleSpec s;
    s.eval = [f, n](cplx z) { return std::pow(f(z), n); };
    s.deriv = [f, n](cplx z) { return static_cast<double>(n) * std::pow(f(z), n - 1) * f.derivative(z); };
    for (Pole p : f.poles()) {
        p.multiplicity *= n;
        s.poles.push_back(p);
    }
    s.singular = f.singular_boundary_points();
    s.boundary_regular = f.boundary_regular();
    s.description = "(" + f.description() + ")^" + std::to_string(n);
    if (f.known_zeros()) {
        std::vector<Pole> zs = *f.known_zeros();
        for (auto& zp : zs)
            zp.multiplicity *= n;
        s.zeros = std::move(zs);
    }
    return AnalyticHandle(std::move(s));
}

/// f'; exact for polynomials and primitives, otherwise through the derivative oracle.
inline AnalyticHandle derivative_handle(const AnalyticHandle& f) {
    if (f.polynomial())
        return polynomial_handle(detail::poly_derivative(*f.polynomial()));
    if (f.is_primitive())
        return f.primitive_integrand();
    HandleSpec s;
    s.eval = [f](cplx z) { return f.derivative(z); };
    for (Pole p : f.poles()) {
        p.multiplicity += 1;
        s.poles.push_back(p);
    }
    s.singular = f.singular_boundary_points();
    s.boundary_regular = f.boundary_regular();
    s.description = "d(" + f.description() + ")";
    return AnalyticHandle(std::move(s));
}

/// f o phi_a, keeping primitive structure so that no nested quadrature arises.
inline AnalyticHandle compose_mobius(const AnalyticHandle& f, cplx a) {
    const MobiusMap phi(a);
    HandleSpec s;
    s.eval = [f, phi](cplx z) { return f(phi(z)); };
    s.deriv = [f, phi](cplx z) { return f.derivative(phi(z)) * phi.derivative(z); };
    for (const cplx& w : f.singular_boundary_points()) {
        // phi_a^{-1} = phi_{-a}
        s.singular.push_back(MobiusMap(-a)(w));
    }
    for (Pole p : f.poles()) {
        p.location = MobiusMap(-a)(p.location);
        s.poles.push_back(p);
    }
    s.boundary_regular = f.boundary_regular();
    s.description = f.description() + " o phi(" + format_cnum(a) + ")";
    if (f.is_primitive()) {
        const AnalyticHandle k = f.primitive_integrand();
        HandleSpec ks;
        ks.eval = [k, phi](cplx z) { return k(phi(z)) * phi.derivative(z); };
        ks.singular = s.singular;
        ks.boundary_regular = k.boundary_regular();
        ks.description = "(" + k.description() + " o phi) * phi'";
        s.primitive = Primitive{f(-a), AnalyticHandle(std::move(ks))};
    }
    return AnalyticHandle(std::move(s));
}

/// Replaces an oracle by one that carries a new description.
inline AnalyticHandle relabel(const AnalyticHandle& f, std::string description) {
    HandleSpec s = f.spec();
    s.description = std::move(description);
    return AnalyticHandle(std::move(s));
}

} // namespace vd
