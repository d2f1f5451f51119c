#include <gtest/gtest.h>

#include <random>

#include "vd/series.hpp"

using namespace vd;

namespace {

std::vector<cplx> random_coeffs(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<cplx> c(n);
    for (auto& x : c)
        x = {d(rng), d(rng)};
    return c;
}

// O(N^2) reference convolution, truncated.
std::vector<cplx> schoolbook(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t order) {
    std::vector<cplx> out(order + 1);
    for (std::size_t i = 0; i <= order && i < a.size(); ++i)
        for (std::size_t j = 0; i + j <= order && j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

} // namespace

TEST(Series, ProductOfBinomials) {
    const auto p = TaylorSeries({1.0, 1.0, 0.0}) * TaylorSeries({1.0, -1.0, 0.0});
    ASSERT_EQ(p.order(), 2u);
    EXPECT_EQ(p[0], cplx(1.0));
    EXPECT_EQ(p[1], cplx(0.0));
    EXPECT_EQ(p[2], cplx(-1.0));
}

TEST(Series, AddZeroIsIdentity) {
    const TaylorSeries f({1.0, 2.0, cplx(0.0, 3.0)});
    const auto s = f + TaylorSeries::zero(2);
    for (std::size_t k = 0; k <= 2; ++k)
        EXPECT_EQ(s[k], f[k]);
}

TEST(Series, TruncationUsesMinimumOrder) {
    const auto s = TaylorSeries::constant(1.0, 5) * TaylorSeries::constant(1.0, 3);
    EXPECT_EQ(s.order(), 3u);
    EXPECT_EQ((TaylorSeries::zero(7) - TaylorSeries::zero(2)).order(), 2u);
}

TEST(Series, GeometricTimesOneMinusZ) {
    std::vector<cplx> geo(11, 1.0);
    std::vector<cplx> lin(11);
    lin[0] = 1.0;
    lin[1] = -1.0;
    const auto p = TaylorSeries(geo) * TaylorSeries(lin);
    const auto ref = schoolbook(geo, lin, 10);
    for (std::size_t k = 0; k <= 10; ++k)
        EXPECT_EQ(p[k], ref[k]);
    EXPECT_EQ(p[0], cplx(1.0));
    EXPECT_EQ(p[5], cplx(0.0));
}

TEST(SeriesProperty, CauchyProductMatchesSchoolbook) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> ord(0, 64);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_coeffs(rng, ord(rng) + 1);
        const auto b = random_coeffs(rng, ord(rng) + 1);
        const std::size_t order = std::min(a.size(), b.size()) - 1;
        const auto p = TaylorSeries(a) * TaylorSeries(b);
        const auto ref = schoolbook(a, b, order);
        ASSERT_EQ(p.order(), order);
        for (std::size_t k = 0; k <= order; ++k)
            ASSERT_LE(std::abs(p[k] - ref[k]), 1e-12 * (1.0 + std::abs(ref[k])));
    }
}

TEST(Series, Differentiate) {
    const auto d = differentiate(TaylorSeries({0.0, 0.0, 0.0, 1.0}));
    EXPECT_EQ(d.order(), 2u);
    EXPECT_EQ(d[2], cplx(3.0));
    EXPECT_EQ(d[0], cplx(0.0));
    const auto c = differentiate(TaylorSeries::constant(5.0, 1));
    EXPECT_EQ(c.order(), 0u);
    EXPECT_EQ(c[0], cplx(0.0));
}

TEST(Series, DifferentiateLogGivesGeometric) {
    std::vector<cplx> log(21);
    for (std::size_t k = 1; k <= 20; ++k)
        log[k] = 1.0 / static_cast<double>(k);
    const auto d = differentiate(TaylorSeries(log));
    for (std::size_t k = 0; k < 20; ++k)
        EXPECT_NEAR(std::abs(d[k] - 1.0), 0.0, 1e-15);
}

TEST(Series, DifferentiateOrderZeroThrows) {
    try {
        differentiate(TaylorSeries::constant(1.0, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegreeTooLow);
    }
}

TEST(Series, AntiderivativeOfGeometric) {
    const auto a = antiderivative(TaylorSeries(std::vector<cplx>(8, 1.0)));
    EXPECT_EQ(a.order(), 8u);
    EXPECT_EQ(a[0], cplx(0.0));
    for (std::size_t k = 1; k <= 8; ++k)
        EXPECT_NEAR(a[k].real(), 1.0 / static_cast<double>(k), 1e-16);
    const auto z = antiderivative(TaylorSeries::zero(3));
    for (std::size_t k = 0; k <= 4; ++k)
        EXPECT_EQ(z[k], cplx(0.0));
}

TEST(SeriesProperty, DifferentiateUndoesAntiderivative) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const TaylorSeries s(random_coeffs(rng, 21));
        const auto r = differentiate(antiderivative(s));
        ASSERT_EQ(r.order(), s.order());
        for (std::size_t k = 0; k <= 20; ++k)
            ASSERT_LE(std::abs(r[k] - s[k]), 1e-14 * std::abs(s[k]) + 1e-300);
    }
}

TEST(Series, ReciprocalExamples) {
    const auto r = reciprocal(TaylorSeries({1.0, -1.0, 0.0, 0.0, 0.0}));
    for (std::size_t k = 0; k <= 4; ++k)
        EXPECT_NEAR(std::abs(r[k] - 1.0), 0.0, 1e-15);
    EXPECT_EQ(reciprocal(TaylorSeries::constant(2.0, 0))[0], cplx(0.5));
    try {
        reciprocal(TaylorSeries({0.0, 1.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DivisionByVanishingSeries);
    }
}

TEST(SeriesProperty, ReciprocalRoundTrip) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        auto c = random_coeffs(rng, 31);
        c[0] /= std::abs(c[0]);
        for (std::size_t k = 1; k < c.size(); ++k)
            c[k] *= 0.3;
        const TaylorSeries s(c);
        const auto p = s * reciprocal(s);
        EXPECT_NEAR(std::abs(p[0] - 1.0), 0.0, 1e-13);
        for (std::size_t k = 1; k <= 30; ++k)
            ASSERT_LE(std::abs(p[k]), 1e-10);
    }
}
