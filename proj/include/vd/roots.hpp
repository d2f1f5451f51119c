#pragma once

/**
 * @file roots.hpp
 * @brief Polynomial roots (Aberth–Ehrlich) and zeros of analytic handles.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <vector>

#include "error.hpp"
#include "handle.hpp"
#include "quadrature.hpp"

namespace vd {

struct Root {
    cplx location{};
    int multiplicity = 1;
};

namespace detail {

inline std::pair<cplx, cplx> horner_with_derivative(const std::vector<cplx>& c, cplx z) {
    cplx p{}, dp{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

/// Taylor coefficients of p at the point c (shifted polynomial).
inline std::vector<cplx> taylor_shift(std::vector<cplx> a, cplx c) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1; j > i; --j)
            a[j - 1] += c * a[j];
    return a;
}

inline std::vector<cplx> aberth(const std::vector<cplx>& c) {
    const std::size_t n = c.size() - 1;
    // Initial guesses on a circle whose radius bounds the root moduli.
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0 / static_cast<double>(n - k)));
    radius = std::max(radius, 1e-3);
    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(radius, two_pi * (static_cast<double>(k) + 0.25) / static_cast<double>(n) + 0.4);

    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            auto [p, dp] = horner_with_derivative(c, z[k]);
            if (p == cplx{})
                continue;
            const cplx ratio = p / dp;
            cplx s{};
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    s += 1.0 / (z[k] - z[j]);
            const cplx w = ratio / (1.0 - ratio * s);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
                z[k] -= w;
                worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[k])));
            }
        }
        if (worst < 1e-15)
            break;
    }
    return z;
}

} // namespace detail

/**
 * All complex roots of c[0] + c[1] z + ... + c[n] z^n, sorted by (re, im).
 * Roots closer than 1e-7 are merged; clusters up to 1e-4 wide are merged
 * when the Taylor coefficients of p at the centroid confirm the multiplicity.
 */
inline std::vector<Root> polynomial_roots(std::vector<cplx> coeffs) {
    coeffs = detail::trim(std::move(coeffs));
    if (coeffs.size() < 2)
        throw Error(ErrorCode::ConstantPolynomial, "polynomial has degree 0");

    std::vector<cplx> found;
    std::size_t lead_zeros = 0;
    while (coeffs[lead_zeros] == cplx{})
        ++lead_zeros;
    for (std::size_t k = 0; k < lead_zeros; ++k)
        found.push_back(cplx{});
    std::vector<cplx> c(coeffs.begin() + static_cast<long>(lead_zeros), coeffs.end());
    if (c.size() >= 2) {
        auto z = detail::aberth(c);
        for (cplx& r : z) {
            for (int it = 0; it < 3; ++it) {
                auto [p, dp] = detail::horner_with_derivative(c, r);
                if (dp == cplx{})
                    break;
                const cplx step = p / dp;
                const cplx cand = r - step;
                if (std::abs(detail::horner(c, cand)) < std::abs(p))
                    r = cand;
                else
                    break;
            }
            found.push_back(r);
        }
    }

    double scale = 0.0;
    for (const cplx& x : coeffs)
        scale = std::max(scale, std::abs(x));

    // Single-linkage clustering at 1e-4, accepted when p and its first m-1
    // derivatives vanish at the centroid; otherwise fall back to 1e-7 merging.
    auto link = [&](double tol) {
        std::vector<int> lab(found.size());
        std::iota(lab.begin(), lab.end(), 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < found.size(); ++i)
                for (std::size_t j = i + 1; j < found.size(); ++j)
                    if (std::abs(found[i] - found[j]) <= tol && lab[i] != lab[j]) {
                        const int m = std::min(lab[i], lab[j]);
                        const int o = std::max(lab[i], lab[j]);
                        for (auto& l : lab)
                            if (l == o)
                                l = m;
                        changed = true;
                    }
        }
        return lab;
    };
    auto fine = link(1e-7);
    auto coarse = link(1e-4);

    std::vector<Root> out;
    std::vector<bool> used(found.size(), false);
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (used[i])
            continue;
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < found.size(); ++j)
            if (coarse[j] == coarse[i])
                members.push_back(j);
        cplx centroid{};
        for (auto j : members)
            centroid += found[j];
        centroid /= static_cast<double>(members.size());
        bool accept = members.size() > 1;
        if (accept) {
            const auto shifted = detail::taylor_shift(coeffs, centroid);
            const double tol = 1e-6 * scale * std::pow(1.0 + std::abs(centroid), static_cast<double>(coeffs.size()));
            for (std::size_t k = 0; k < members.size(); ++k)
                if (std::abs(shifted[k]) > tol)
                    accept = false;
        }
        if (!accept) {
            members.clear();
            for (std::size_t j = 0; j < found.size(); ++j)
                if (fine[j] == fine[i])
                    members.push_back(j);
            centroid = {};
            for (auto j : members)
                centroid += found[j];
            centroid /= static_cast<double>(members.size());
        }
        for (auto j : members)
            used[j] = true;
        if (members.size() > 1) {
            // A root of multiplicity m is a simple root of the (m-1)-th derivative.
            std::vector<cplx> d = coeffs;
            for (std::size_t k = 1; k < members.size(); ++k)
                d = detail::poly_derivative(d);
            for (int it = 0; it < 5; ++it) {
                auto [p, dp] = detail::horner_with_derivative(d, centroid);
                if (dp == cplx{})
                    break;
                const cplx cand = centroid - p / dp;
                if (!(std::abs(detail::horner(d, cand)) < std::abs(p)))
                    break;
                centroid = cand;
            }
        }
        if (std::abs(centroid.real()) < 1e-15)
            centroid.real(0.0);
        if (std::abs(centroid.imag()) < 1e-15)
            centroid.imag(0.0);
        out.push_back({centroid, static_cast<int>(members.size())});
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

/**
 * Zeros of an analytic handle inside |z| < radius by the argument principle
 * and Newton's identities. Returns nullopt when the count is not a clean
 * integer or exceeds `max_count`.
 */
inline std::optional<std::vector<Root>> disc_zeros(const AnalyticHandle& f, double radius = 0.999, int max_count = 12) {
    auto logderiv = [&](double t) {
        const cplx z = std::polar(radius, t);
        return f.derivative(z) / f(z) * z;
    };
    std::vector<double> breaks;
    for (const cplx& w : f.singular_boundary_points())
        breaks.push_back(std::arg(w));
    AngularOptions opt;
    opt.rel_tol = 1e-12;
    opt.min_width = 1e-7;
    auto rule = adaptive_angular_rule([&](double t) { return std::abs(logderiv(t)); }, breaks, opt);

    auto moment = [&](int k) {
        CompensatedSum<cplx> s;
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const cplx z = std::polar(radius, rule.theta[j]);
            s.add(rule.weight[j] * logderiv(rule.theta[j]) * std::pow(z, k));
        }
        return s.value();
    };
    const cplx n0 = moment(0);
    const double count = std::round(n0.real());
    if (!(std::abs(n0 - cplx{count}) < 1e-6) || count < 0 || count > max_count)
        return std::nullopt;
    const int n = static_cast<int>(count);
    if (n == 0)
        return std::vector<Root>{};
    std::vector<cplx> power_sums(n + 1);
    for (int k = 1; k <= n; ++k)
        power_sums[k] = moment(k);
    // Newton's identities: e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    std::vector<cplx> e(n + 1);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        cplx acc{};
        for (int i = 1; i <= k; ++i)
            acc += ((i % 2) ? 1.0 : -1.0) * e[k - i] * power_sums[i];
        e[k] = acc / static_cast<double>(k);
    }
    // monic polynomial z^n - e1 z^{n-1} + e2 z^{n-2} - ...
    std::vector<cplx> coeffs(n + 1);
    for (int k = 0; k <= n; ++k)
        coeffs[n - k] = ((k % 2) ? -1.0 : 1.0) * e[k];
    auto roots = polynomial_roots(coeffs);
    for (auto& r : roots) {
        // polish on the function itself
        for (int it = 0; it < 5 && r.multiplicity == 1; ++it) {
            const cplx d = f.derivative(r.location);
            if (d == cplx{})
                break;
            r.location -= f(r.location) / d;
        }
        if (std::abs(r.location) < 1e-14)
            r.location = 0.0;
    }
    return roots;
}

} // namespace vd
