#include <gtest/gtest.h>

#include <cmath>

#include "vd/quadrature.hpp"

using namespace vd;

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
    const auto& rule = gauss_legendre<16>();
    for (int deg = 0; deg <= 31; ++deg) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], deg);
        const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
        EXPECT_NEAR(s, exact, 1e-14) << "degree " << deg;
    }
}

TEST(Quadrature, CompensatedSumRecoversCancellation) {
    CompensatedSum<double> s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i)
        s.add(1e-16);
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-13, 1e-20);
}

TEST(Quadrature, SegmentIntegralOfPole) {
    // int_0^z d/(1 - w) = -log(1 - z)
    for (cplx z : {cplx(0.5), std::polar(0.999, 0.01), cplx(0.0, 0.9)}) {
        const auto r = integrate_segment([](cplx w) { return 1.0 / (1.0 - w); }, cplx{}, z);
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(std::abs(r.value + std::log(1.0 - z)), 0.0, 1e-11);
    }
}

TEST(Quadrature, SegmentIntegralNearSingularity) {
    // int_0^r (1 - w)^{-1.5} = 2((1 - r)^{-1/2} - 1)
    const double r = 1.0 - std::exp2(-20);
    const auto q = integrate_segment([](cplx w) { return std::pow(1.0 - w, -1.5); }, cplx{}, cplx{r});
    const double exact = 2.0 * (std::pow(1.0 - r, -0.5) - 1.0);
    EXPECT_NEAR(q.value.real() / exact, 1.0, 1e-10);
}

TEST(Quadrature, CumulativeMatchesSeparateIntegrals) {
    const std::vector<double> fr{0.25, 0.5, 1.0};
    const cplx b = std::polar(0.99, 1.0);
    auto f = [](cplx w) { return std::exp(w) / (1.1 - w); };
    const auto c = integrate_segment_cumulative(f, cplx{}, b, fr);
    for (std::size_t i = 0; i < fr.size(); ++i) {
        const auto s = integrate_segment(f, cplx{}, fr[i] * b);
        EXPECT_NEAR(std::abs(c.values[i] - s.value), 0.0, 1e-11);
    }
}

TEST(Quadrature, TrapezoidIsSpectralForTrigPolynomials) {
    const auto rule = trapezoid_rule(64);
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j)
        s += rule.weight[j] * std::pow(std::cos(rule.theta[j]), 10);
    EXPECT_NEAR(s, 252.0 / 1024.0, 1e-15);
}

TEST(Quadrature, AdaptiveAngularRuleResolvesPeak) {
    // (1/2pi) int |1 - r e^{it}|^{-2} dt = 1 / (1 - r^2)
    const double r = 1.0 - 1e-4;
    auto density = [r](double t) { return 1.0 / std::norm(1.0 - std::polar(r, t)); };
    const auto rule = adaptive_angular_rule(density, {0.0});
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j)
        s += rule.weight[j] * density(rule.theta[j]);
    EXPECT_NEAR(s * (1.0 - r * r), 1.0, 1e-9);
    double total = 0.0;
    for (double w : rule.weight)
        total += w;
    EXPECT_NEAR(total, 1.0, 1e-14);
}
