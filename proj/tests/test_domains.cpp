#include <gtest/gtest.h>

#include <random>

#include "vd/vd.hpp"

using namespace vd;

namespace {

NormOptions opt;

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::ParseError;
}

Symbol one_minus_z_sq() { return polynomial_symbol({1, -2, 1}); }
Symbol with_derivative(std::vector<cplx> d) { return symbol_from_derivative(polynomial_handle(std::move(d))); }

} // namespace

TEST(Membership, Examples) {
    const auto zsq = polynomial_symbol({0, 0, 1});
    const auto f = parse_function_expr("recip(poly(0,2))");
    const auto mero = mero_domain_membership(zsq, f, 2.0, opt);
    EXPECT_EQ(mero.status, Verdict::In);
    EXPECT_TRUE(mero.pole_check);
    EXPECT_EQ(holo_domain_membership(zsq, f, 2.0, opt).status, Verdict::Out);
    EXPECT_EQ(mero_domain_membership(log1mz_symbol(), pow1mz_handle(-0.6), 2.0, opt).status, Verdict::Out);
    for (const auto& g : {identity_symbol(), log1mz_symbol(), zsq})
        EXPECT_EQ(mero_domain_membership(g, polynomial_handle({1, 1}), 2.0, opt).status, Verdict::In);
    const auto bad = mero_domain_membership(identity_symbol(), parse_function_expr("recip(poly(-0.3,1))"), 2.0, opt);
    EXPECT_EQ(bad.status, Verdict::Out);
    EXPECT_FALSE(bad.pole_check);
    EXPECT_EQ(code_of([] { mero_domain_membership(polynomial_symbol({1.0}), constant_handle(1.0), 2.0); }),
              ErrorCode::ConstantSymbol);
}

TEST(Membership, InvariantInImpliesFinite) {
    for (const auto& f : standard_samples()) {
        const auto v = mero_domain_membership(log1mz_symbol(), f, 2.0, opt);
        if (v.status == Verdict::In) {
            EXPECT_TRUE(v.pole_check);
            EXPECT_EQ(v.image_norm.classification, Classification::Finite);
        }
    }
}

TEST(OptimalNorm, Examples) {
    EXPECT_NEAR(optdomain_norm(identity_symbol(), constant_handle(1.0), 2.0, opt).value, 1.0, 1e-12);
    EXPECT_NEAR(optdomain_norm(polynomial_symbol({0, 0, 1}), parse_function_expr("recip(poly(0,2))"), 2.0, opt).value,
                1.0, 1e-9);
    EXPECT_EQ(optdomain_norm(log1mz_symbol(), constant_handle(0.0), 3.0, opt).value, 0.0);
}

TEST(OptimalNormProperty, ScalingTheSymbol) {
    const cplx c(-1.5, 2.0);
    const std::vector<Symbol> gs{identity_symbol(), log1mz_symbol(), polynomial_symbol({0, 0, 1})};
    const std::vector<AnalyticHandle> fs{constant_handle(1.0), pow1mz_handle(-0.3), pow1mz_handle(-0.7)};
    for (const auto& g : gs) {
        const auto cg = scale_symbol(g, c);
        for (const auto& f : fs) {
            const auto a = optdomain_norm(g, f, 2.0, opt);
            const auto b = optdomain_norm(cg, f, 2.0, opt);
            EXPECT_EQ(a.classification, b.classification);
            if (a.finite())
                EXPECT_NEAR(b.value / a.value, std::abs(c), 1e-9);
            EXPECT_EQ(mero_domain_membership(g, f, 2.0, opt).status, mero_domain_membership(cg, f, 2.0, opt).status);
        }
    }
}

TEST(Witness, ClosedFormImages) {
    for (const auto& g : {identity_symbol(), log1mz_symbol()}) {
        const auto img = volterra_apply(g, strict_inclusion_witness(g, 1.0, 2.0)).value;
        for (const cplx& z : test_grid())
            ASSERT_LE(std::abs(img(z) - 2.0 * (std::pow(1.0 - z, -0.5) - 1.0)), 1e-9 * (1.0 + std::abs(img(z))));
    }
    const auto w = strict_inclusion_witness(polynomial_symbol({0, 0, 1}), 2.0, 4.0);
    ASSERT_EQ(w.poles().size(), 1u);
    EXPECT_TRUE(check_pole_compatibility(polynomial_symbol({0, 0, 1}), w).ok);
    EXPECT_EQ(code_of([] { strict_inclusion_witness(identity_symbol(), 2.0, 2.0); }), ErrorCode::ParameterOutOfRange);
    EXPECT_EQ(code_of([] { strict_inclusion_witness(identity_symbol(), 0.5, 2.0); }), ErrorCode::ParameterOutOfRange);
}

TEST(WitnessProperty, SoundOnTheSymbolZoo) {
    const std::vector<Symbol> zoo{identity_symbol(), polynomial_symbol({0, 0, 1}), log1mz_symbol(), one_minus_z_sq()};
    for (const auto& g : zoo)
        for (auto [p1, p2] : {std::pair{1.0, 2.0}, std::pair{2.0, 4.0}}) {
            const auto w = strict_inclusion_witness(g, p1, p2);
            EXPECT_EQ(mero_domain_membership(g, w, p1, opt).status, Verdict::In) << g.g.description() << " " << p1;
            EXPECT_EQ(mero_domain_membership(g, w, p2, opt).status, Verdict::Out) << g.g.description() << " " << p2;
        }
}

TEST(PointEvaluation, Bounds) {
    EXPECT_FALSE(point_eval_bound(polynomial_symbol({0, 0, 1}), 0.0, 2.0).has_value());
    EXPECT_NEAR(*point_eval_bound(identity_symbol(), 0.0, 2.0), 1.0, 1e-15);
    // |g'(0.5)| = 2 for log1mz, (1 - 0.5)^{-3/2} = 2^{3/2}
    EXPECT_NEAR(*point_eval_bound(log1mz_symbol(), 0.5, 2.0), std::sqrt(2.0), 1e-14);
}

TEST(PointEvaluation, EmpiricalConstant) {
    // f = h'/g' with ||h||_2 = 1, h(0) = 0; Cauchy-Schwarz gives |h'(z0)| <= sqrt(2) (1 - |z0|)^{-3/2}
    std::mt19937_64 rng(77);
    const Symbol g = log1mz_symbol();
    for (int i = 0; i < 50; ++i) {
        auto c = random_polynomial(rng, 12);
        c[0] = 0.0;
        double n2 = 0.0;
        for (const cplx& x : c)
            n2 += std::norm(x);
        for (auto& x : c)
            x /= std::sqrt(n2);
        const auto f = canonical_domain_element(g, polynomial_handle(c));
        ASSERT_NEAR(optdomain_norm(g, f, 2.0, opt).value, 1.0, 1e-5);
        for (double r : {0.0, 0.5, 0.9})
            ASSERT_LE(std::abs(f(r)) / *point_eval_bound(g, r, 2.0), std::sqrt(2.0));
    }
}

TEST(Wg, Examples) {
    const auto self = wg_membership(log1mz_symbol(), log1mz_handle(), opt);
    EXPECT_TRUE(self.member);
    EXPECT_NEAR(self.k_sup.value, 1.0, 1e-9);
    const auto zc = wg_membership(identity_symbol(), polynomial_handle({0, 0, 0.5}), opt);
    EXPECT_TRUE(zc.member);
    EXPECT_NEAR(std::abs(zc.k(0.4) - 0.4), 0.0, 1e-14);
    const auto no = wg_membership(one_minus_z_sq(), identity_handle(), opt);
    EXPECT_FALSE(no.member);
    EXPECT_EQ(no.k_sup.classification, Classification::Divergent);
}

TEST(WgProperty, ConstantsAreMembers) {
    for (const auto& g : {identity_symbol(), log1mz_symbol(), polynomial_symbol({0, 0, 1})}) {
        const auto c = wg_membership(g, constant_handle(cplx(1, -1)), opt);
        EXPECT_TRUE(c.member);
        EXPECT_EQ(c.k_sup.value, 0.0);
        EXPECT_NEAR(c.wg_norm, std::sqrt(2.0), 1e-14);
    }
}

TEST(WgProperty, NormFormula) {
    const auto c = wg_membership(identity_symbol(), polynomial_handle({0, 0, 0.5}), opt);
    const double bmoa = bmoa_seminorm(polynomial_handle({0, 0, 0.5}), default_bmoa_grid(), opt).estimate.value;
    EXPECT_NEAR(c.wg_norm, bmoa + 0.0 + c.k_sup.value, 1e-12);
}

TEST(DomainEquality, Examples) {
    const auto a = mero_domains_equal(identity_symbol(), polynomial_symbol({0, 2}), opt);
    EXPECT_EQ(a.relation, Relation::Equal);
    EXPECT_TRUE(a.reciprocal_check);
    EXPECT_NEAR(std::abs(a.k1(0.2) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.k2(0.2) - 2.0), 0.0, 1e-15);
    const auto b = mero_domains_equal(identity_symbol(), with_derivative({1, 0.5}), opt);
    EXPECT_EQ(b.relation, Relation::Equal);
    EXPECT_LE(b.k1_sup.value, 2.0 + 1e-12);
    EXPECT_LE(b.k2_sup.value, 2.0 + 1e-12);
    const auto c = mero_domains_equal(identity_symbol(), with_derivative({1, -1}), opt);
    EXPECT_EQ(c.relation, Relation::LeftInRight);
    EXPECT_EQ(c.k2_sup.classification, Classification::Finite);
    EXPECT_EQ(c.k1_sup.classification, Classification::Divergent);
}

TEST(DomainEqualityProperty, Reflexive) {
    const std::vector<Symbol> zoo{identity_symbol(), log1mz_symbol(), polynomial_symbol({0, 0, 1}), one_minus_z_sq(),
                                  power_symbol(0.5), blaschke_symbol({0.3, cplx(0, -0.5)})};
    for (const auto& g : zoo) {
        const auto r = mero_domains_equal(g, g, opt);
        EXPECT_EQ(r.relation, Relation::Equal) << g.g.description();
        EXPECT_TRUE(r.reciprocal_check);
        for (const cplx& z : test_grid()) {
            ASSERT_NEAR(std::abs(r.k1(z) - 1.0), 0.0, 1e-9);
            ASSERT_NEAR(std::abs(r.k2(z) - 1.0), 0.0, 1e-9);
        }
    }
}

TEST(DomainEquality, Incomparable) {
    // g1' = 1 - z and g2' = 1 + z: each quotient blows up at one boundary point.
    const auto r = mero_domains_equal(with_derivative({1, -1}), with_derivative({1, 1}), opt);
    EXPECT_EQ(r.relation, Relation::Incomparable);
}

TEST(PolynomialClassify, Examples) {
    EXPECT_EQ(polynomial_domain_classify(polynomial_symbol({0, 0, 1}), 2.0).classification, PolyClass::EqualToTz);
    const auto b = polynomial_domain_classify(one_minus_z_sq(), 2.0);
    EXPECT_EQ(b.classification, PolyClass::StrictlyLarger);
    ASSERT_TRUE(b.witness.has_value());
    EXPECT_NEAR(std::abs((*b.witness)(0.5) - std::pow(0.5, -1.5)), 0.0, 1e-12);
    EXPECT_EQ(polynomial_domain_classify(polynomial_symbol({0, -1, 0, 1.0 / 3.0}), 2.0).classification,
              PolyClass::StrictlyLarger);
    EXPECT_EQ(code_of([] { polynomial_domain_classify(with_derivative({-(1.0 + 1e-10), 1}), 2.0); }),
              ErrorCode::NearCircleAmbiguous);
    EXPECT_EQ(polynomial_domain_classify(with_derivative({-(1.0 + 1e-6), 1}), 2.0).classification,
              PolyClass::EqualToTz);
}

TEST(PolynomialClassify, RotatedWitness) {
    // g' = 1 + z vanishes at -1; witness (1 + z)^{-1/p-1} leaves [T_z,H^2] and stays in [T_g,H^2].
    const auto g = with_derivative({1, 1});
    const auto r = polynomial_domain_classify(g, 2.0);
    ASSERT_EQ(r.classification, PolyClass::StrictlyLarger);
    EXPECT_NEAR(std::abs((*r.witness)(0.5) - std::pow(1.5, -1.5)), 0.0, 1e-12);
    EXPECT_EQ(holo_domain_membership(identity_symbol(), *r.witness, 2.0, opt).status, Verdict::Out);
    EXPECT_EQ(holo_domain_membership(g, *r.witness, 2.0, opt).status, Verdict::In);
}

TEST(PolynomialClassifyProperty, EqualToTzAgreesWithZ) {
    const std::vector<Symbol> gs{polynomial_symbol({0, 0, 1}), polynomial_symbol({0, 1, 0.2}),
                                 with_derivative({0.25, 0, 1})};
    for (const auto& g : gs) {
        ASSERT_EQ(polynomial_domain_classify(g, 2.0).classification, PolyClass::EqualToTz);
        for (const auto& f : standard_samples())
            EXPECT_EQ(holo_domain_membership(g, f, 2.0, opt).status,
                      holo_domain_membership(identity_symbol(), f, 2.0, opt).status);
    }
}

TEST(RootShift, Examples) {
    EXPECT_LE(root_shift_decomposition(identity_symbol(), 0.5, constant_handle(1.0)).residual, 1e-9);
    EXPECT_LE(root_shift_decomposition(log1mz_symbol(), cplx(0, 0.3), polynomial_handle({1, 1})).residual, 1e-7);
    const auto z = root_shift_decomposition(identity_symbol(), 0.5, constant_handle(0.0));
    EXPECT_EQ(z.residual, 0.0);
    EXPECT_EQ(z.constant_term, cplx(0.0));
    EXPECT_EQ(code_of([] { root_shift_decomposition(identity_symbol(), 0.0, constant_handle(1.0)); }),
              ErrorCode::Z0AtOrigin);
}

TEST(RootShift, ClosedFormTerms) {
    // u = z, f = 1: h(z) = (z - z0)^2 / 2
    const cplx z0 = 0.5;
    const auto r = root_shift_decomposition(identity_symbol(), z0, constant_handle(1.0));
    for (const cplx& z : {cplx(0.1, 0.2), cplx(-0.4, 0.1)}) {
        EXPECT_NEAR(std::abs(r.quotient_term(z) - (z - z0) / 2.0), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(r.integral_term(z) - z / 2.0), 0.0, 1e-13);
    }
    EXPECT_NEAR(std::abs(r.constant_term - z0 / 2.0), 0.0, 1e-14);
}

TEST(RootShiftProperty, RandomDraws) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Symbol s = i % 4 == 3 ? log1mz_symbol() : polynomial_symbol(random_polynomial(rng, 1 + i % 3));
        const cplx z0 = std::polar(0.05 + 0.8 * u(rng), two_pi * u(rng));
        const AnalyticHandle f = i % 2 ? pow1mz_handle(-0.6 * u(rng)) : polynomial_handle(random_polynomial(rng, 3));
        ASSERT_LE(root_shift_decomposition(s, z0, f).residual, 1e-7) << i;
    }
}

TEST(Separating, Construction) {
    const auto s = separating_symbol(identity_symbol(), identity_handle(), 0.0, 1, 2.0, opt);
    EXPECT_EQ(s.F_in_g.status, Verdict::Out);
    EXPECT_EQ(s.F_in_h2.status, Verdict::In);
    for (const cplx& z : test_grid())
        ASSERT_LE(std::abs(s.image_h2(z) + std::log(1.0 - z)), 1e-8);
    const auto s1 = separating_symbol(identity_symbol(), identity_handle(), 0.0, 1, 1.0, opt);
    EXPECT_EQ(s1.F_in_g.status, Verdict::Out);
    EXPECT_EQ(s1.F_in_h2.status, Verdict::In);
    EXPECT_EQ(code_of([] { separating_symbol(identity_symbol(), identity_handle(), 0.0, 2, 2.0); }),
              ErrorCode::InsufficientVanishing);
}

TEST(Multiplier, Examples) {
    const std::vector<AnalyticHandle> in{constant_handle(1.0), polynomial_handle({1, 1}), pow1mz_handle(-0.3)};
    const auto one = multiplier_check(log1mz_symbol(), constant_handle(1.0), 2.0, in, opt);
    for (double r : one.ratios)
        EXPECT_NEAR(r, 1.0, 1e-12);
    const auto z = multiplier_check(log1mz_symbol(), identity_handle(), 2.0, in, opt);
    EXPECT_TRUE(z.all_finite);
    EXPECT_LE(z.max_ratio, 1.5);
    const auto bad = multiplier_check(identity_symbol(), parse_function_expr("recip(poly(1,-1))"), 2.0,
                                      {constant_handle(1.0), pow1mz_handle(-0.6)}, opt);
    EXPECT_FALSE(bad.all_finite);
    EXPECT_EQ(bad.phi_sup.classification, Classification::Divergent);
    EXPECT_EQ(code_of([&] { multiplier_check(log1mz_symbol(), identity_handle(), 2.0, {pow1mz_handle(-0.6)}, opt); }),
              ErrorCode::NotInDomain);
}

TEST(BoundedBelow, Examples) {
    const auto a = bounded_below_multiplier_check(identity_symbol(), with_derivative({1, 0.5}), 2.0, standard_samples(), opt);
    EXPECT_GE(a.inf_abs, 0.5 - 1e-12);
    EXPECT_LE(a.h_sup.value, 1.5 + 1e-12);
    EXPECT_EQ(a.bounded_below, Classification::Finite);
    // two-sided weights give comparable Bergman norms: ratio in [1/4, 9/4]
    for (double r : a.bergman_ratios) {
        EXPECT_GE(r, 0.25 - 1e-9);
        EXPECT_LE(r, 2.25 + 1e-9);
    }
    const auto b = bounded_below_multiplier_check(identity_symbol(), with_derivative({1, -1}), 2.0, {}, opt);
    EXPECT_EQ(b.bounded_below, Classification::Divergent);
    const auto c = bounded_below_multiplier_check(identity_symbol(), identity_symbol(), 2.0, {}, opt);
    EXPECT_NEAR(c.inf_abs, 1.0, 1e-15);
    EXPECT_EQ(code_of([] { bounded_below_multiplier_check(polynomial_symbol({0, 0, 1}), identity_symbol(), 2.0); }),
              ErrorCode::QuotientNotAnalytic);
}

TEST(BlaschkeReduce, Examples) {
    const auto a = blaschke_reduce_check(identity_symbol(), {0.0}, standard_samples(), opt);
    EXPECT_EQ(a.agreements, 3);
    const auto b = blaschke_reduce_check(log1mz_symbol(), {0.5}, standard_samples(), opt);
    EXPECT_EQ(b.agreements, 3);
    EXPECT_EQ(b.g_verdicts[2], Verdict::Out);
    const auto c = blaschke_reduce_check(identity_symbol(), {}, standard_samples(), opt);
    EXPECT_EQ(c.agreements, 3);
    EXPECT_EQ(code_of([] { blaschke_reduce_check(identity_symbol(), {0.2, 0.2}, standard_samples()); }),
              ErrorCode::NotInterpolatingAsGiven);
    EXPECT_EQ(code_of([] { blaschke_reduce_check(polynomial_symbol({0, 0, 1}), {0.2}, standard_samples()); }),
              ErrorCode::NotLocallyUnivalent);
}

TEST(VgInclusion, Examples) {
    const auto a = vg_inclusion_check(identity_symbol(), constant_handle(1.0), {constant_handle(1.0)}, 2.0, opt);
    EXPECT_TRUE(a.pass);
    EXPECT_TRUE(vg_inclusion_check(log1mz_symbol(), identity_handle(), {constant_handle(1.0), pow1mz_handle(-0.3)},
                                   2.0, opt)
                    .pass);
    EXPECT_TRUE(vg_inclusion_check(identity_symbol(), polynomial_handle({1, -1}),
                                   {constant_handle(1.0), pow1mz_handle(-0.45)}, 2.0, opt)
                    .pass);
    EXPECT_EQ(code_of([] {
                  vg_inclusion_check(identity_symbol(), parse_function_expr("recip(poly(1,-1))"),
                                     {constant_handle(1.0)}, 2.0);
              }),
              ErrorCode::QNotBounded);
}

TEST(Density, Examples) {
    const auto a = density_experiment(log1mz_symbol(), constant_handle(1.0), 2.0, {8, 32, 128}, opt);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_GT(a[0].error, a[1].error);
    EXPECT_GT(a[1].error, a[2].error);
    EXPECT_LE(a[2].error, 0.1);
    // tail of sum 1/k^2 beyond N
    for (const auto& d : a) {
        double tail = 0.0;
        for (int k = static_cast<int>(d.degree) + 1; k < 2000000; ++k)
            tail += 1.0 / (static_cast<double>(k) * k);
        EXPECT_NEAR(d.error / std::sqrt(tail), 1.0, 0.05) << d.degree;
    }
    const auto p = density_experiment(identity_symbol(), polynomial_handle({1, 2}), 2.0, {1, 2, 5}, opt);
    EXPECT_GT(p[0].error, 0.0);
    EXPECT_LE(p[1].error, 1e-14);
    EXPECT_LE(p[2].error, 1e-14);
    for (const auto& d : density_experiment(log1mz_symbol(), constant_handle(0.0), 2.0, {4, 16}, opt))
        EXPECT_EQ(d.error, 0.0);
}
