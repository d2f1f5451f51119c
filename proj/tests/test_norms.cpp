#include <gtest/gtest.h>

#include <random>

#include "vd/norms.hpp"
#include "vd/operators.hpp"
#include "vd/parser.hpp"

using namespace vd;

namespace {

NormOptions opt;

std::vector<cplx> random_poly(std::mt19937_64& rng, std::size_t deg) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> c(deg + 1);
    for (auto& x : c)
        x = {n(rng), n(rng)};
    return c;
}

} // namespace

TEST(IntegralMean, Monomials) {
    for (double p : {1.0, 2.0, 3.5})
        for (double r : {0.3, 0.9})
            EXPECT_NEAR(integral_mean(polynomial_handle({0, 0, 0, 1}), r, p), r * r * r, 1e-14);
    for (double r : {0.2, 0.7, 0.99})
        EXPECT_NEAR(integral_mean(polynomial_handle({1, 1}), r, 2.0), std::sqrt(1 + r * r), 1e-14);
}

TEST(IntegralMean, RadiusHitsPole) {
    try {
        integral_mean(parse_function_expr("recip(poly(-0.5,1))"), 0.6, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RadiusHitsPole);
    }
}

TEST(IntegralMean, GrowthExponentOfSingularPower) {
    // M_2(r)^2 = sum binom-type coefficients ~ (1 - r)^{-0.4}
    const auto e = hp_norm(pow1mz_handle(-0.7), 2.0, opt);
    EXPECT_NEAR(e.growth_exponent, 0.2, 0.03);
}

TEST(HardyNorm, Examples) {
    const auto a = hp_norm(polynomial_handle({0, 0, 0, 0, 0, 1}), 3.0, opt);
    EXPECT_EQ(a.classification, Classification::Finite);
    EXPECT_NEAR(a.value, 1.0, 1e-9);
    EXPECT_EQ(hp_norm(pow1mz_handle(-0.3), 2.0, opt).classification, Classification::Finite);
    EXPECT_EQ(hp_norm(pow1mz_handle(-0.7), 2.0, opt).classification, Classification::Divergent);
    for (double p : {1.0, 2.0, 4.0}) {
        EXPECT_EQ(hp_membership(log1mz_handle(), p, opt), Verdict::In);
        EXPECT_EQ(hp_membership(pow1mz_handle(-1.0 / p - 0.05), p, opt), Verdict::Out);
        EXPECT_EQ(hp_membership(constant_handle(1.0), p, opt), Verdict::In);
    }
}

TEST(HardyNorm, H2NormOfSingularPowerMatchesSeries) {
    // ||(1-z)^{-a}||_2^2 = sum_k (Gamma(k+a)/(Gamma(a) k!))^2 = Gamma(1-2a)/Gamma(1-a)^2
    const double a = 0.3;
    const double exact = std::sqrt(std::tgamma(1 - 2 * a) / std::pow(std::tgamma(1 - a), 2));
    const auto e = hp_norm(pow1mz_handle(-a), 2.0, opt);
    ASSERT_EQ(e.classification, Classification::Finite);
    EXPECT_NEAR(e.value / exact, 1.0, 2e-3);
}

TEST(HardyNormProperty, Parseval) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> deg(0, 32);
    for (int i = 0; i < 100; ++i) {
        const auto c = random_poly(rng, deg(rng));
        double ref = 0.0;
        for (const cplx& x : c)
            ref += std::norm(x);
        const double v = hp_norm(polynomial_handle(c), 2.0, opt).value;
        ASSERT_LE(std::abs(v * v - ref), 1e-8 * ref);
    }
}

TEST(HardyNormProperty, MeansAreMonotone) {
    const std::vector<AnalyticHandle> fs{pow1mz_handle(-0.7), log1mz_handle(), parse_function_expr("blaschke(0.9)"),
                                         polynomial_handle({1, -3, 0, 2}), pow1mz_handle(0.5, cplx(0, 1))};
    for (const auto& f : fs)
        for (double p : {1.0, 2.0, 3.0}) {
            const auto e = hp_norm(f, p, opt);
            for (std::size_t k = 1; k < e.means.size(); ++k)
                ASSERT_GE(e.means[k].second, e.means[k - 1].second * (1.0 - 1e-12)) << f.description();
        }
}

TEST(HardyNormProperty, CalibrationFamily) {
    for (double a : {0.3, 0.45, 0.55, 0.7})
        for (double p : {1.0, 2.0, 4.0}) {
            if (std::abs(a - 1.0 / p) < 0.05)
                continue;
            const auto expect = a < 1.0 / p ? Classification::Finite : Classification::Divergent;
            EXPECT_EQ(hp_norm(pow1mz_handle(-a), p, opt).classification, expect) << "a=" << a << " p=" << p;
        }
}

TEST(Classifier, IncrementRules) {
    ClassifierConfig cfg;
    std::vector<double> flat(8, 2.0), geometric, linear;
    for (int k = 0; k < 8; ++k) {
        geometric.push_back(3.0 - std::pow(0.5, k));
        linear.push_back(1.0 + k);
    }
    EXPECT_EQ(classify_increments(flat, cfg).classification, Classification::Finite);
    const auto g = classify_increments(geometric, cfg);
    EXPECT_EQ(g.classification, Classification::Finite);
    EXPECT_NEAR(g.limit, 3.0, 1e-12);
    EXPECT_EQ(classify_increments(linear, cfg).classification, Classification::Divergent);
}

TEST(SupNorm, Examples) {
    EXPECT_NEAR(hinf_sup(identity_handle(), opt).value, 1.0, 1e-12);
    EXPECT_NEAR(hinf_sup(polynomial_handle({0.5, 0.5}), opt).value, 1.0, 1e-12);
    EXPECT_EQ(hinf_sup(parse_function_expr("recip(poly(1,-1))"), opt).classification, Classification::Divergent);
    const auto b = hinf_sup(parse_function_expr("blaschke(0.5, 0-0.3i)"), opt);
    EXPECT_EQ(b.classification, Classification::Finite);
    EXPECT_NEAR(b.value, 1.0, 1e-9);
}

TEST(GFunction, Examples) {
    const auto c = g_function_norm(constant_handle(cplx(0, 3)), 2.0, opt);
    EXPECT_NEAR(c.value, 3.0, 1e-14);
    const auto z = g_function_norm(identity_handle(), 2.0, opt);
    EXPECT_NEAR(z.value * z.value, 0.5, 1e-8);
}

TEST(GFunctionProperty, EquivalenceBracket) {
    const std::vector<AnalyticHandle> fam{polynomial_handle({0, 0, 0, 1}), pow1mz_handle(-0.3), log1mz_handle(),
                                          polynomial_handle({1, 1}), pow1mz_handle(0.5)};
    for (const auto& f : fam) {
        const double gv = g_function_norm(f, 2.0, opt).value;
        const double hv = hp_norm(f, 2.0, opt).value;
        const double ratio = gv * gv / (hv * hv);
        EXPECT_GE(ratio, 0.05) << f.description();
        EXPECT_LE(ratio, 20.0) << f.description();
    }
}

TEST(GFunction, MonomialClosedForm) {
    // value^2 = n^2 int_0^1 r^{2n-2} (1 - r) dr = n / (2(2n - 1))
    for (int n : {1, 3, 6}) {
        std::vector<cplx> c(n + 1);
        c[n] = 1.0;
        const auto e = g_function_norm(polynomial_handle(c), 2.0, opt);
        EXPECT_NEAR(e.value * e.value, n / (2.0 * (2 * n - 1)), 1e-8);
    }
}

TEST(Bmoa, Examples) {
    EXPECT_LE(bmoa_seminorm(constant_handle(2.0), default_bmoa_grid(), opt).estimate.value, 1e-10);
    const auto z = bmoa_seminorm(identity_handle(), default_bmoa_grid(), opt);
    // ||phi_a - a||_2^2 = 1 + 3|a|^2 at the outermost modulus
    EXPECT_NEAR(z.estimate.value, std::sqrt(1.0 + 3.0 * 0.999 * 0.999), 1e-9);
    EXPECT_GE(bmoa_seminorm(identity_handle(), refined_bmoa_grid(), opt).estimate.value, 1.99);
    EXPECT_EQ(bmoa_seminorm(log1mz_handle(), default_bmoa_grid(), opt).estimate.classification,
              Classification::Finite);
}

TEST(BmoaProperty, RefinementNeverDecreases) {
    for (const auto& f : {identity_handle(), polynomial_handle({0, 1, 0.5}), parse_function_expr("blaschke(0.5)")}) {
        const double a = bmoa_seminorm(f, default_bmoa_grid(), opt).estimate.value;
        const double b = bmoa_seminorm(f, refined_bmoa_grid(), opt).estimate.value;
        EXPECT_GE(b, a);
    }
}

TEST(Bergman, Examples) {
    EXPECT_NEAR(bergman_weighted_norm(constant_handle(1.0), identity_symbol(), opt).value, 0.5, 1e-10);
    for (int n : {1, 3, 5}) {
        std::vector<cplx> c(n + 1);
        c[n] = 1.0;
        EXPECT_NEAR(bergman_weighted_norm(polynomial_handle(c), identity_symbol(), opt).value,
                    1.0 / ((n + 1.0) * (n + 2.0)), 1e-10);
    }
    const auto r = bergman_weighted_norm(parse_function_expr("recip(poly(1,-1))"), identity_symbol(), opt);
    EXPECT_EQ(r.classification, Classification::Finite);
}

TEST(Pairing, Examples) {
    const double r = 1.0 - std::exp2(-12);
    EXPECT_NEAR(std::abs(boundary_pairing(identity_handle(), identity_handle()).value - r * r), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(boundary_pairing(identity_handle(), polynomial_handle({0, 0, 1})).value), 0.0, 1e-14);
    const auto v = boundary_pairing(polynomial_handle({1, 1}), polynomial_handle({1, -1})).value;
    EXPECT_NEAR(v.real(), 1.0 - r * r, 1e-12);
}

TEST(PairingProperty, ConjugateSymmetry) {
    const std::vector<AnalyticHandle> fs{pow1mz_handle(-0.3), log1mz_handle(), polynomial_handle({1, cplx(0, 2), 3}),
                                         parse_function_expr("blaschke(0+0.4i)")};
    for (const auto& a : fs)
        for (const auto& b : fs)
            EXPECT_LE(std::abs(boundary_pairing(a, b).value - std::conj(boundary_pairing(b, a).value)), 1e-10);
}

TEST(KFunctional, TrivialSplitsAndMonotonicity) {
    const Symbol g = identity_symbol();
    const auto f = polynomial_handle({1, 1});
    // X0 norm ||z + z^2/2||_1, X1 norm sup |z + z^2/2| = 3/2
    const double x1 = 1.5;
    const double small = k_functional_upper(f, 0.01, g, {}, opt);
    EXPECT_NEAR(small, 0.01 * x1, 1e-9);
    double prev = 0.0;
    for (double t : {0.1, 1.0, 10.0}) {
        const double v = k_functional_upper(f, t, g, {{polynomial_handle({1}), polynomial_handle({0, 1})}}, opt);
        EXPECT_GE(v, prev);
        EXPECT_LE(v, t * x1 + 1e-12);
        prev = v;
    }
}
