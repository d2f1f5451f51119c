#pragma once

/**
 * @file mobius.hpp
 * @brief Disc automorphisms and separation constants of finite zero sets.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>

#include "error.hpp"

namespace vd {

using cplx = std::complex<double>;

/// phi_a(z) = (z - a) / (1 - conj(a) z)
struct MobiusMap {
    cplx a{};

    explicit MobiusMap(cplx a_) : a(a_) {
        if (!(std::abs(a) < 1.0))
            throw Error(ErrorCode::ParameterOutOfRange, "Mobius parameter must lie in the open disc");
    }

    cplx operator()(cplx z) const { return (z - a) / (1.0 - std::conj(a) * z); }

    cplx derivative(cplx z) const {
        const cplx d = 1.0 - std::conj(a) * z;
        return (1.0 - std::norm(a)) / (d * d);
    }
};

struct SeparationReport {
    double delta = 1.0;
    bool interpolating = true;   // false when a zero is repeated
};

/// delta = min_j prod_{k != j} |phi_{a_k}(a_j)|; one for a single zero.
inline SeparationReport blaschke_separation(std::span<const cplx> zeros) {
    for (const cplx& a : zeros)
        if (!(std::abs(a) < 1.0))
            throw Error(ErrorCode::ZeroOutsideDisc, "Blaschke zero outside the open disc");
    SeparationReport out;
    if (zeros.size() < 2)
        return out;
    double delta = 1.0;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        double prod = 1.0;
        for (std::size_t k = 0; k < zeros.size(); ++k) {
            if (k == j)
                continue;
            prod *= std::abs(MobiusMap(zeros[k])(zeros[j]));
        }
        delta = std::min(delta, prod);
    }
    if (delta < 1e-14) {
        out.delta = 0.0;
        out.interpolating = false;
    } else {
        out.delta = delta;
    }
    return out;
}

} // namespace vd
