#pragma once

/**
 * @file series.hpp
 * @brief Truncated power series about the origin.
 *
 * A TaylorSeries of order N stores c_0..c_N and stands for
 * c_0 + c_1 z + ... + c_N z^N + O(z^{N+1}). Binary operations never extend
 * the order silently: combining orders N1 and N2 yields min(N1, N2).
 */

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace vd {

using cplx = std::complex<double>;

inline constexpr std::size_t default_series_order = 256;

class TaylorSeries {
public:
    TaylorSeries() : coeffs_(1, cplx{}) {}

    explicit TaylorSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            coeffs_.push_back(cplx{});
    }

    static TaylorSeries zero(std::size_t order) { return TaylorSeries(std::vector<cplx>(order + 1)); }

    static TaylorSeries constant(cplx c, std::size_t order) {
        std::vector<cplx> v(order + 1);
        v[0] = c;
        return TaylorSeries(std::move(v));
    }

    /// Pads (with zeros) or cuts the coefficient list to the given order.
    TaylorSeries with_order(std::size_t order) const {
        std::vector<cplx> v(order + 1);
        std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), v.size()), v.begin());
        return TaylorSeries(std::move(v));
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }

    cplx evaluate(cplx z) const {
        cplx acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

    cplx operator()(cplx z) const { return evaluate(z); }

private:
    std::vector<cplx> coeffs_;
};

enum class SeriesOp { Add, Sub, Mul };

inline TaylorSeries series_arith(const TaylorSeries& lhs, const TaylorSeries& rhs, SeriesOp op) {
    const std::size_t n = std::min(lhs.order(), rhs.order());
    std::vector<cplx> out(n + 1);
    switch (op) {
    case SeriesOp::Add:
        for (std::size_t k = 0; k <= n; ++k)
            out[k] = lhs[k] + rhs[k];
        break;
    case SeriesOp::Sub:
        for (std::size_t k = 0; k <= n; ++k)
            out[k] = lhs[k] - rhs[k];
        break;
    case SeriesOp::Mul: {
        const auto a = lhs.coeffs();
        const auto b = rhs.coeffs();
        for (std::size_t i = 0; i <= n; ++i) {
            if (a[i] == cplx{})
                continue;
            for (std::size_t j = 0; i + j <= n; ++j)
                out[i + j] += a[i] * b[j];
        }
        break;
    }
    }
    return TaylorSeries(std::move(out));
}

inline TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) { return series_arith(a, b, SeriesOp::Add); }
inline TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) { return series_arith(a, b, SeriesOp::Sub); }
inline TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) { return series_arith(a, b, SeriesOp::Mul); }

inline TaylorSeries differentiate(const TaylorSeries& s) {
    if (s.order() == 0)
        throw Error(ErrorCode::DegreeTooLow, "cannot differentiate a series of order 0");
    std::vector<cplx> out(s.order());
    for (std::size_t k = 1; k <= s.order(); ++k)
        out[k - 1] = static_cast<double>(k) * s[k];
    return TaylorSeries(std::move(out));
}

/// Termwise integral from 0; the order grows by one.
inline TaylorSeries antiderivative(const TaylorSeries& s) {
    std::vector<cplx> out(s.order() + 2);
    for (std::size_t k = 0; k <= s.order(); ++k)
        out[k + 1] = s[k] / static_cast<double>(k + 1);
    return TaylorSeries(std::move(out));
}

inline TaylorSeries reciprocal(const TaylorSeries& s) {
    const cplx c0 = s[0];
    if (std::abs(c0) <= 1e-300)
        throw Error(ErrorCode::DivisionByVanishingSeries, "constant term vanishes");
    const std::size_t n = s.order();
    std::vector<cplx> r(n + 1);
    r[0] = 1.0 / c0;
    for (std::size_t k = 1; k <= n; ++k) {
        cplx acc{};
        for (std::size_t j = 1; j <= k; ++j)
            acc += s[j] * r[k - j];
        r[k] = -acc / c0;
    }
    return TaylorSeries(std::move(r));
}

} // namespace vd
