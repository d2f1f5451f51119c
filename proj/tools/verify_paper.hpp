#pragma once

// Regression ledger of the worked examples, shared by the CLI and the
// acceptance binary. Every item records measured values and its tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "vd/vd.hpp"

namespace vd::verify {

using json = nlohmann::ordered_json;

inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
inline json cnum(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

struct Item {
    std::string id;
    std::string anchor;
    bool pass = false;
    json measured;
    std::string tolerance;
};

struct Config {
    std::uint64_t seed = default_seed;
    NormOptions opt;
};

/// Classifier thresholds that can no longer separate anything.
inline ClassifierConfig broken_classifier() {
    ClassifierConfig c;
    c.finite_tail = 5.0;
    c.divergent_tail = 4.0;
    return c;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "thm2", "thm3", "thm4", "thm5", "sec5"};
    return names;
}

class Ledger {
public:
    explicit Ledger(Config cfg) : cfg_(std::move(cfg)) {}

    const Config& config() const { return cfg_; }
    const NormOptions& opt() const { return cfg_.opt; }

    /// body fills `measured` and returns pass; exceptions count as failures.
    void run(const std::string& id, const std::string& anchor, const std::string& tolerance,
             const std::function<bool(json&)>& body) {
        Item item{id, anchor, false, json::object(), tolerance};
        try {
            item.pass = body(item.measured);
        } catch (const std::exception& e) {
            item.measured["exception"] = e.what();
            item.pass = false;
        }
        items_.push_back(std::move(item));
    }

    std::vector<Item> take() {
        std::sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) { return a.id < b.id; });
        return std::move(items_);
    }

private:
    Config cfg_;
    std::vector<Item> items_;
};

inline std::vector<cplx> sample_points(std::size_t n, double rmax = 0.9) {
    std::vector<cplx> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = rmax * (0.2 + 0.8 * static_cast<double>(k + 1) / static_cast<double>(n));
        pts.push_back(std::polar(r, 2.399963229728653 * static_cast<double>(k) + 0.1));
    }
    return pts;
}

inline double max_deviation(const AnalyticHandle& a, const std::function<cplx(cplx)>& b,
                            const std::vector<cplx>& pts) {
    double worst = 0.0;
    for (const cplx& z : pts)
        worst = std::max(worst, std::abs(a(z) - b(z)));
    return worst;
}

inline json estimate_json(const NormEstimate& e) {
    return {{"value", num(e.value)}, {"classification", to_string(e.classification)}, {"p", num(e.p)}};
}

inline std::string verdicts(const std::vector<Verdict>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + to_string(v[i]);
    return s;
}

inline Symbol one_minus_z_squared() { return polynomial_symbol({1.0, -2.0, 1.0}); }

// ---------------------------------------------------------------- estimators

inline void norms_items(Ledger& L) {
    const auto& opt = L.opt();
    L.run("norms.parseval", "Parseval identity for random polynomials", "relative 1e-8", [&](json& m) {
        std::mt19937_64 rng(L.config().seed);
        std::uniform_int_distribution<std::size_t> deg(1, 32);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto c = random_polynomial(rng, deg(rng));
            double ref = 0.0;
            for (const cplx& x : c)
                ref += std::norm(x);
            const double v = hp_norm(polynomial_handle(c), 2.0, opt).value;
            worst = std::max(worst, std::abs(v * v - ref) / ref);
        }
        m["max_relative_error"] = num(worst);
        return worst <= 1e-8;
    });
    L.run("norms.calibration", "(1-z)^{-a} lies in H^p iff a < 1/p", "all non-critical cases correct", [&](json& m) {
        int correct = 0, total = 0;
        json rows = json::array();
        for (double a : {0.3, 0.45, 0.55, 0.7})
            for (double p : {1.0, 2.0, 4.0}) {
                if (std::abs(a - 1.0 / p) < 0.05)
                    continue;
                const auto c = hp_norm(pow1mz_handle(-a), p, opt).classification;
                const auto expect = a < 1.0 / p ? Classification::Finite : Classification::Divergent;
                ++total;
                correct += c == expect;
                rows.push_back({{"a", a}, {"p", p}, {"classification", to_string(c)}});
            }
        m["cases"] = rows;
        m["correct"] = correct;
        m["total"] = total;
        return correct == total;
    });
    L.run("norms.hp.z5", "||z^5||_{H^3} = 1", "1e-9", [&](json& m) {
        const auto e = hp_norm(polynomial_handle({0, 0, 0, 0, 0, 1}), 3.0, opt);
        m = estimate_json(e);
        return e.finite() && std::abs(e.value - 1.0) <= 1e-9;
    });
    L.run("norms.hp.growth", "M_2(r) of (1-z)^{-0.7} grows like (1-r)^{-0.2}", "exponent 0.2 +- 0.03", [&](json& m) {
        const auto e = hp_norm(pow1mz_handle(-0.7), 2.0, opt);
        m["growth_exponent"] = num(e.growth_exponent);
        m["classification"] = to_string(e.classification);
        return std::abs(e.growth_exponent - 0.2) <= 0.03 && e.classification == Classification::Divergent;
    });
    L.run("norms.hp.log", "-log(1-z) in H^p for p = 1, 2, 4", "Finite at each p", [&](json& m) {
        bool ok = true;
        for (double p : {1.0, 2.0, 4.0}) {
            const auto e = hp_norm(log1mz_handle(), p, opt);
            m["p" + format_real(p)] = estimate_json(e);
            ok = ok && e.finite();
        }
        return ok;
    });
    L.run("norms.hp.critical", "(1-z)^{-1/p-0.05} is not in H^p", "Divergent at p = 1, 2, 4", [&](json& m) {
        bool ok = true;
        for (double p : {1.0, 2.0, 4.0}) {
            const auto c = hp_norm(pow1mz_handle(-1.0 / p - 0.05), p, opt).classification;
            m["p" + format_real(p)] = to_string(c);
            ok = ok && c == Classification::Divergent;
        }
        return ok;
    });
    L.run("norms.hinf", "sup norms of z, (1+z)/2 and 1/(1-z)", "1, 1 within 1e-9; Divergent", [&](json& m) {
        const auto a = hinf_sup(identity_handle(), opt);
        const auto b = hinf_sup(polynomial_handle({0.5, 0.5}), opt);
        const auto c = hinf_sup(parse_function_expr("recip(poly(1,-1))"), opt);
        m["z"] = estimate_json(a);
        m["half_one_plus_z"] = estimate_json(b);
        m["recip_one_minus_z"] = estimate_json(c);
        return std::abs(a.value - 1.0) <= 1e-9 && std::abs(b.value - 1.0) <= 1e-9 &&
               c.classification == Classification::Divergent;
    });
    L.run("norms.gfunc.z", "G-function of z at p = 2 gives value^2 = 1/2", "1e-8", [&](json& m) {
        const auto e = g_function_norm(identity_handle(), 2.0, opt);
        m = estimate_json(e);
        return std::abs(e.value * e.value - 0.5) <= 1e-8;
    });
    L.run("norms.gfunc.ratio", "G-function against H^2 norm on the calibration family", "ratio in [0.05, 20]",
          [&](json& m) {
              const std::vector<AnalyticHandle> fam{polynomial_handle({1.0, 1.0}), identity_handle(),
                                                    polynomial_handle({0, 0, 0, 0, 0, 1}), pow1mz_handle(-0.1),
                                                    pow1mz_handle(-0.3), pow1mz_handle(-0.45), log1mz_handle(),
                                                    pow1mz_handle(0.5)};
              bool ok = true;
              json rows = json::array();
              for (const auto& f : fam) {
                  const double gv = g_function_norm(f, 2.0, opt).value;
                  const auto h = hp_norm(f, 2.0, opt);
                  const double ratio = (gv * gv) / (h.value * h.value);
                  rows.push_back({{"f", f.description()}, {"ratio", num(ratio)}});
                  ok = ok && h.finite() && ratio >= 0.05 && ratio <= 20.0;
              }
              m["ratios"] = rows;
              return ok;
          });
    L.run("norms.bmoa.z", "||z||_* on the refined grid approaches 2", ">= 1.99", [&](json& m) {
        const auto e = bmoa_seminorm(identity_handle(), refined_bmoa_grid(), opt);
        m = estimate_json(e.estimate);
        m["refinement_delta"] = num(e.refinement_delta);
        return e.estimate.value >= 1.99;
    });
    L.run("norms.bmoa.const", "constants have zero BMOA seminorm", "<= 1e-10", [&](json& m) {
        const auto e = bmoa_seminorm(constant_handle(3.0), default_bmoa_grid(), opt);
        m = estimate_json(e.estimate);
        return e.estimate.value <= 1e-10;
    });
    L.run("norms.bmoa.log", "-log(1-z) lies in BMOA", "Finite", [&](json& m) {
        const auto e = bmoa_seminorm(log1mz_handle(), default_bmoa_grid(), opt);
        m = estimate_json(e.estimate);
        return e.estimate.finite();
    });
    L.run("norms.bergman", "weighted Bergman integrals against direct radial integrals", "1e-8; Finite",
          [&](json& m) {
              const auto a = bergman_weighted_norm(constant_handle(1.0), identity_symbol(), opt);
              const auto b = bergman_weighted_norm(polynomial_handle({0, 0, 0, 1}), identity_symbol(), opt);
              const auto c = bergman_weighted_norm(parse_function_expr("recip(poly(1,-1))"), identity_symbol(), opt);
              m["one"] = estimate_json(a);
              m["z3"] = estimate_json(b);
              m["recip_one_minus_z"] = estimate_json(c);
              return std::abs(a.value - 0.5) <= 1e-8 && std::abs(b.value - 0.05) <= 1e-8 && c.finite();
          });
    L.run("norms.pairing", "boundary pairings against coefficient pairings", "1e-10", [&](json& m) {
        const double r = 1.0 - std::exp2(-12);
        const auto a = boundary_pairing(identity_handle(), identity_handle(), r, opt).value;
        const auto b = boundary_pairing(identity_handle(), polynomial_handle({0, 0, 1}), r, opt).value;
        const auto c = boundary_pairing(polynomial_handle({1, 1}), polynomial_handle({1, -1}), r, opt).value;
        m["z_z"] = cnum(a);
        m["z_z2"] = cnum(b);
        m["sum_diff"] = cnum(c);
        return std::abs(a - r * r) <= 1e-10 && std::abs(b) <= 1e-10 && std::abs(c - (1.0 - r * r)) <= 1e-10;
    });
}

// ---------------------------------------------------------------- optimal-domain properties

inline void thm2_items(Ledger& L) {
    const auto& opt = L.opt();
    const std::vector<std::pair<std::string, Symbol>> zoo{
        {"z", identity_symbol()}, {"log1mz", log1mz_symbol()}, {"one_minus_z_sq", one_minus_z_squared()}};
    for (const auto& [name, g] : zoo) {
        L.run("thm2.witness." + name, "strict inclusion witness for g = " + name + ", p1 = 1, p2 = 2",
              "In at p1, Out at p2", [&, g = g](json& m) {
                  const auto w = strict_inclusion_witness(g, 1.0, 2.0);
                  const auto a = mero_domain_membership(g, w, 1.0, opt);
                  const auto b = mero_domain_membership(g, w, 2.0, opt);
                  m["p1"] = to_string(a.status);
                  m["p2"] = to_string(b.status);
                  return a.status == Verdict::In && b.status == Verdict::Out;
              });
    }
    L.run("thm2.witness.z_sq", "strict inclusion witness for g = z^2, p1 = 2, p2 = 4", "pole compatible; In, Out",
          [&](json& m) {
              const auto g = polynomial_symbol({0, 0, 1});
              const auto w = strict_inclusion_witness(g, 2.0, 4.0);
              const auto a = mero_domain_membership(g, w, 2.0, opt);
              const auto b = mero_domain_membership(g, w, 4.0, opt);
              m["pole_check"] = a.pole_check;
              m["p1"] = to_string(a.status);
              m["p2"] = to_string(b.status);
              return a.pole_check && a.status == Verdict::In && b.status == Verdict::Out;
          });
    L.run("thm2.witness.closed_form", "T_z of (1-z)^{-3/2} equals 2((1-z)^{-1/2} - 1)", "1e-8", [&](json& m) {
        const auto img = volterra_apply(identity_symbol(), strict_inclusion_witness(identity_symbol(), 1, 2)).value;
        const double dev = max_deviation(img, [](cplx z) { return 2.0 * (std::pow(1.0 - z, -0.5) - 1.0); },
                                         sample_points(20));
        m["max_deviation"] = num(dev);
        return dev <= 1e-8;
    });
    L.run("thm2.point_eval.unbounded", "point evaluation at a zero of g' is unbounded", "Unbounded", [&](json& m) {
        const auto b = point_eval_bound(polynomial_symbol({0, 0, 1}), 0.0, 2.0);
        m["bound"] = b ? num(*b) : json("Unbounded");
        return !b.has_value();
    });
    L.run("thm2.point_eval.origin", "point evaluation bound for g = z at 0", "1 within 1e-15", [&](json& m) {
        const auto b = point_eval_bound(identity_symbol(), 0.0, 2.0);
        m["bound"] = b ? num(*b) : json("Unbounded");
        return b && std::abs(*b - 1.0) <= 1e-15;
    });
    L.run("thm2.point_eval.empirical", "|f(z0)| against the bound shape on the unit ball, g = log1mz",
          "ratio <= sqrt(2)", [&](json& m) {
              std::mt19937_64 rng(L.config().seed + 1);
              const Symbol g = log1mz_symbol();
              double worst = 0.0;
              for (int i = 0; i < 50; ++i) {
                  auto c = random_polynomial(rng, 16);
                  c[0] = 0.0;
                  double n2 = 0.0;
                  for (const cplx& x : c)
                      n2 += std::norm(x);
                  for (auto& x : c)
                      x /= std::sqrt(n2);
                  // f = h'/g' with ||T_g f||_{H^2} = ||h||_{H^2} = 1
                  const auto f = canonical_domain_element(g, polynomial_handle(c));
                  for (double r : {0.0, 0.5, 0.9}) {
                      const cplx z0 = std::polar(r, 0.7 * i);
                      worst = std::max(worst, std::abs(f(z0)) / *point_eval_bound(g, z0, 2.0));
                  }
              }
              m["max_ratio"] = num(worst);
              return worst <= std::sqrt(2.0);
          });
    L.run("thm2.pairing.holder", "Holder bound for the boundary pairing of T_g images", "factor 1.01 on 20 pairs",
          [&](json& m) {
              std::mt19937_64 rng(L.config().seed + 2);
              const std::vector<double> ps{1.5, 2.0, 3.0, 4.0};
              const std::vector<Symbol> gs{identity_symbol(), log1mz_symbol()};
              const std::vector<AnalyticHandle> rough{pow1mz_handle(-0.2), pow1mz_handle(0.3), log1mz_handle()};
              double worst = 0.0;
              for (int i = 0; i < 20; ++i) {
                  const Symbol& g = gs[i % 2];
                  const double p = ps[(i / 2) % 4];
                  const double q = p / (p - 1.0);
                  const AnalyticHandle f = i < 14 ? polynomial_handle(random_polynomial(rng, 6)) : rough[i % 3];
                  const AnalyticHandle k = polynomial_handle(random_polynomial(rng, 6));
                  const auto F = volterra_apply(g, f).value;
                  const auto K = volterra_apply(g, k).value;
                  const double lhs = std::abs(boundary_pairing(F, K, 1.0 - std::exp2(-12), opt).value);
                  const double rhs = hp_norm(F, p, opt).value * hp_norm(K, q, opt).value;
                  worst = std::max(worst, lhs / rhs);
              }
              m["max_ratio"] = num(worst);
              return worst <= 1.01;
          });
    L.run("thm2.multiplier.one", "phi = 1 is an isometric multiplier", "ratios 1 within 1e-12", [&](json& m) {
        const auto r = multiplier_check(log1mz_symbol(), constant_handle(1.0), 2.0, {constant_handle(1.0), polynomial_handle({1, 1}), pow1mz_handle(-0.3)}, opt);
        m["max_ratio"] = num(r.max_ratio);
        return std::abs(r.max_ratio - 1.0) <= 1e-12 && r.all_finite;
    });
    L.run("thm2.multiplier.z", "phi = z on samples for g = log1mz", "ratios <= 1.5", [&](json& m) {
        const auto r = multiplier_check(log1mz_symbol(), identity_handle(), 2.0,
                                        {constant_handle(1.0), polynomial_handle({1, 1}), pow1mz_handle(-0.3)}, opt);
        m["ratios"] = json::array();
        for (double x : r.ratios)
            m["ratios"].push_back(num(x));
        return r.all_finite && r.max_ratio <= 1.5;
    });
    L.run("thm2.multiplier.unbounded", "phi = 1/(1-z) fails as a multiplier for g = z", "a Divergent product",
          [&](json& m) {
              const auto r = multiplier_check(identity_symbol(), parse_function_expr("recip(poly(1,-1))"), 2.0,
                                              {constant_handle(1.0), pow1mz_handle(-0.6)}, opt);
              m["phi_sup"] = estimate_json(r.phi_sup);
              m["products"] = json::array();
              for (auto c : r.product_classes)
                  m["products"].push_back(to_string(c));
              return !r.all_finite && r.product_classes.front() == Classification::Finite;
          });
    L.run("thm2.density.log", "Taylor truncations of T_g(1) for g = log1mz", "strictly decreasing; N = 128 <= 0.1",
          [&](json& m) {
              const auto d = density_experiment(log1mz_symbol(), constant_handle(1.0), 2.0, {8, 32, 128}, opt);
              m["errors"] = json::array();
              for (const auto& x : d)
                  m["errors"].push_back({{"N", x.degree}, {"error", num(x.error)}});
              return d[0].error > d[1].error && d[1].error > d[2].error && d[2].error <= 0.1;
          });
    L.run("thm2.kfunctional", "K-functional upper bound is monotone in t", "nondecreasing on 0.1, 1, 10",
          [&](json& m) {
              const auto f = pow1mz_handle(-0.3);
              const std::vector<KSplit> splits{{difference(f, constant_handle(1.0)), constant_handle(1.0)}};
              std::vector<double> v;
              for (double t : {0.1, 1.0, 10.0})
                  v.push_back(k_functional_upper(f, t, identity_symbol(), splits, opt));
              m["values"] = {num(v[0]), num(v[1]), num(v[2])};
              return v[0] <= v[1] && v[1] <= v[2] && std::isfinite(v[2]);
          });
    L.run("thm2.optdomain", "optimal-domain norms of simple elements", "1e-9", [&](json& m) {
        const double a = optdomain_norm(identity_symbol(), constant_handle(1.0), 2.0, opt).value;
        const double b =
            optdomain_norm(polynomial_symbol({0, 0, 1}), parse_function_expr("recip(poly(0,2))"), 2.0, opt).value;
        const double c = optdomain_norm(log1mz_symbol(), constant_handle(0.0), 2.0, opt).value;
        m["z_one"] = num(a);
        m["z_sq_recip"] = num(b);
        m["zero"] = num(c);
        return std::abs(a - 1.0) <= 1e-9 && std::abs(b - 1.0) <= 1e-9 && c == 0.0;
    });
    L.run("thm2.membership", "meromorphic and holomorphic membership examples", "expected verdicts", [&](json& m) {
        const auto g = polynomial_symbol({0, 0, 1});
        const auto f = parse_function_expr("recip(poly(0,2))");
        const auto a = mero_domain_membership(g, f, 2.0, opt).status;
        const auto b = holo_domain_membership(g, f, 2.0, opt).status;
        const auto c = mero_domain_membership(log1mz_symbol(), pow1mz_handle(-0.6), 2.0, opt).status;
        const auto d = mero_domain_membership(log1mz_symbol(), polynomial_handle({1, 1}), 2.0, opt).status;
        m["z_sq_mero"] = to_string(a);
        m["z_sq_holo"] = to_string(b);
        m["log_pow"] = to_string(c);
        m["log_one_plus_z"] = to_string(d);
        return a == Verdict::In && b == Verdict::Out && c == Verdict::Out && d == Verdict::In;
    });
}

// ---------------------------------------------------------------- W_g

inline void thm3_items(Ledger& L) {
    const auto& opt = L.opt();
    L.run("thm3.wg.self", "h = g gives k = 1", "member, k_sup = 1", [&](json& m) {
        const auto c = wg_membership(log1mz_symbol(), log1mz_handle(), opt);
        m["member"] = c.member;
        m["k_sup"] = num(c.k_sup.value);
        return c.member && std::abs(c.k_sup.value - 1.0) <= 1e-9;
    });
    L.run("thm3.wg.z", "g = z, h = z^2/2 gives k = z", "member, k = z within 1e-9", [&](json& m) {
        const auto c = wg_membership(identity_symbol(), polynomial_handle({0, 0, 0.5}), opt);
        const double dev = max_deviation(c.k, [](cplx z) { return z; }, sample_points(10));
        m["member"] = c.member;
        m["k_deviation"] = num(dev);
        return c.member && dev <= 1e-9;
    });
    L.run("thm3.wg.unbounded", "g = (1-z)^2, h = z leaves W_g", "not member", [&](json& m) {
        const auto c = wg_membership(one_minus_z_squared(), identity_handle(), opt);
        m["member"] = c.member;
        m["k_sup"] = to_string(c.k_sup.classification);
        return !c.member && c.k_sup.classification == Classification::Divergent;
    });
    L.run("thm3.wg.norm", "W_g norm of log1mz for g = log1mz", "||T_g(1)||_* + 0 + 1 within 1e-9", [&](json& m) {
        const auto c = wg_membership(log1mz_symbol(), log1mz_handle(), opt);
        const double direct = bmoa_seminorm(log1mz_handle(), default_bmoa_grid(), opt).estimate.value + 1.0;
        m["wg_norm"] = num(c.wg_norm);
        m["direct"] = num(direct);
        return c.member && std::abs(c.wg_norm - direct) <= 1e-9;
    });
    L.run("thm3.wg.constant", "constants lie in W_g with k = 0", "member, k_sup = 0", [&](json& m) {
        const auto c = wg_membership(log1mz_symbol(), constant_handle(2.0), opt);
        m["member"] = c.member;
        m["wg_norm"] = num(c.wg_norm);
        return c.member && c.k_sup.value == 0.0 && std::abs(c.wg_norm - 2.0) <= 1e-12;
    });
}

// ---------------------------------------------------------------- equality of domains

inline void thm4_items(Ledger& L) {
    const auto& opt = L.opt();
    L.run("thm4.eq.scaled", "g1 = z, g2 = 2z", "Equal, k1 = 1/2, reciprocal check", [&](json& m) {
        const auto r = mero_domains_equal(identity_symbol(), polynomial_symbol({0, 2}), opt);
        m["relation"] = to_string(r.relation);
        m["k1"] = cnum(r.k1(0.3));
        return r.relation == Relation::Equal && r.reciprocal_check && std::abs(r.k1(0.3) - 0.5) <= 1e-15;
    });
    L.run("thm4.eq.bounded_below", "g1 = z, g2' = 1 + z/2", "Equal, reciprocal check", [&](json& m) {
        const auto r = mero_domains_equal(identity_symbol(), symbol_from_derivative(polynomial_handle({1, 0.5})), opt);
        m["relation"] = to_string(r.relation);
        m["k1_sup"] = num(r.k1_sup.value);
        m["k2_sup"] = num(r.k2_sup.value);
        return r.relation == Relation::Equal && r.reciprocal_check && r.k1_sup.value <= 2.0 + 1e-12 &&
               r.k2_sup.value <= 2.0 + 1e-12;
    });
    L.run("thm4.eq.one_sided", "g1 = z, g2' = 1 - z", "one-sided: LeftInRight", [&](json& m) {
        const auto r = mero_domains_equal(identity_symbol(), symbol_from_derivative(polynomial_handle({1, -1})), opt);
        m["relation"] = to_string(r.relation);
        m["k1"] = to_string(r.k1_sup.classification);
        m["k2"] = to_string(r.k2_sup.classification);
        return r.relation == Relation::LeftInRight;
    });
    L.run("thm4.eq.self", "every symbol is equal to itself", "Equal with k1 = k2 = 1", [&](json& m) {
        bool ok = true;
        for (const Symbol& g : {identity_symbol(), log1mz_symbol(), polynomial_symbol({0, 0, 1})}) {
            const auto r = mero_domains_equal(g, g, opt);
            m[g.g.description()] = to_string(r.relation);
            ok = ok && r.relation == Relation::Equal && std::abs(r.k1(0.4) - 1.0) <= 1e-9;
        }
        return ok;
    });
}

// ---------------------------------------------------------------- separating symbols

inline void thm5_items(Ledger& L) {
    const auto& opt = L.opt();
    for (double p : {2.0, 1.0}) {
        const std::string tag = p == 2.0 ? "p2" : "p1";
        L.run("thm5.separating." + tag, "separating symbol for g = z, q = z, z0 = 0 at p = " + format_real(p),
              "T_g(F) Out, T_h2(F) In, T_h2(F) = -log(1-z) within 1e-8", [&, p](json& m) {
                  const auto s = separating_symbol(identity_symbol(), identity_handle(), 0.0, 1, p, opt);
                  const double dev = max_deviation(s.image_h2, [](cplx z) { return -std::log(1.0 - z); },
                                                   sample_points(10));
                  m["F_in_g"] = to_string(s.F_in_g.status);
                  m["F_in_h2"] = to_string(s.F_in_h2.status);
                  m["log_deviation"] = num(dev);
                  bool ok = s.F_in_g.status == Verdict::Out && s.F_in_h2.status == Verdict::In;
                  if (p == 2.0)
                      ok = ok && dev <= 1e-8;
                  return ok;
              });
    }
    L.run("thm5.separating.insufficient", "q = z cannot absorb (z - 0)^2", "InsufficientVanishing", [&](json& m) {
        try {
            separating_symbol(identity_symbol(), identity_handle(), 0.0, 2, 2.0, opt);
        } catch (const Error& e) {
            m["error"] = to_string(e.code());
            return e.code() == ErrorCode::InsufficientVanishing;
        }
        return false;
    });
}

// ---------------------------------------------------------------- holomorphic domains

inline void sec5_items(Ledger& L) {
    const auto& opt = L.opt();
    L.run("sec5.poly.z_sq", "g = z^2 has the same holomorphic domain as z", "EqualToTz", [&](json& m) {
        const auto r = polynomial_domain_classify(polynomial_symbol({0, 0, 1}), 2.0);
        m["classification"] = to_string(r.classification);
        return r.classification == PolyClass::EqualToTz;
    });
    L.run("sec5.poly.one_minus_z_sq", "g = (1-z)^2 has a strictly larger holomorphic domain",
          "StrictlyLarger; witness Out for z, In for g", [&](json& m) {
              const auto g = one_minus_z_squared();
              const auto r = polynomial_domain_classify(g, 2.0);
              m["classification"] = to_string(r.classification);
              if (!r.witness)
                  return false;
              const auto a = holo_domain_membership(identity_symbol(), *r.witness, 2.0, opt).status;
              const auto b = holo_domain_membership(g, *r.witness, 2.0, opt).status;
              // T_g(f) = (2p/(p-1)) ((1-z)^{1-1/p} - 1)
              const double dev = max_deviation(volterra_apply(g, *r.witness).value,
                                               [](cplx z) { return 4.0 * (std::pow(1.0 - z, 0.5) - 1.0); },
                                               sample_points(10));
              m["T_z"] = to_string(a);
              m["T_g"] = to_string(b);
              m["closed_form_deviation"] = num(dev);
              return r.classification == PolyClass::StrictlyLarger && a == Verdict::Out && b == Verdict::In &&
                     dev <= 1e-8;
          });
    L.run("sec5.poly.cubic", "g' = z^2 - 1 has roots on the circle", "StrictlyLarger", [&](json& m) {
        const auto r = polynomial_domain_classify(polynomial_symbol({0, -1, 0, 1.0 / 3.0}), 2.0);
        m["classification"] = to_string(r.classification);
        return r.classification == PolyClass::StrictlyLarger;
    });
    L.run("sec5.poly.near_circle", "root at distance 1e-11 from the circle", "NearCircleAmbiguous", [&](json& m) {
        try {
            polynomial_domain_classify(symbol_from_derivative(polynomial_handle({-(1.0 + 1e-11), 1.0})), 2.0);
        } catch (const Error& e) {
            m["error"] = to_string(e.code());
            return e.code() == ErrorCode::NearCircleAmbiguous;
        }
        return false;
    });
    L.run("sec5.poly.coherence", "EqualToTz symbols agree with z on the sample family", "verdicts agree",
          [&](json& m) {
              const auto g = polynomial_symbol({0, 0.5, 0, 0.25});
              std::vector<Verdict> a, b;
              for (const auto& f : standard_samples()) {
                  a.push_back(holo_domain_membership(g, f, 2.0, opt).status);
                  b.push_back(holo_domain_membership(identity_symbol(), f, 2.0, opt).status);
              }
              m["g"] = verdicts(a);
              m["z"] = verdicts(b);
              return polynomial_domain_classify(g, 2.0).classification == PolyClass::EqualToTz && a == b;
          });
    L.run("sec5.rootshift.z", "decomposition for u = z, z0 = 0.5, f = 1", "residual <= 1e-9", [&](json& m) {
        const auto r = root_shift_decomposition(identity_symbol(), 0.5, constant_handle(1.0));
        m["residual"] = num(r.residual);
        return r.residual <= 1e-9;
    });
    L.run("sec5.rootshift.log", "decomposition for u = log1mz, z0 = 0.3i, f = 1 + z", "residual <= 1e-7",
          [&](json& m) {
              const auto r = root_shift_decomposition(log1mz_symbol(), cplx{0.0, 0.3}, polynomial_handle({1, 1}));
              m["residual"] = num(r.residual);
              return r.residual <= 1e-7;
          });
    L.run("sec5.rootshift.random", "decomposition on 50 seeded draws", "residual <= 1e-7", [&](json& m) {
        std::mt19937_64 rng(L.config().seed + 3);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            auto uc = random_polynomial(rng, 1 + i % 4);
            const Symbol u = i % 5 == 4 ? log1mz_symbol() : polynomial_symbol(uc);
            const cplx z0 = std::polar(0.1 + 0.7 * u01(rng), two_pi * u01(rng));
            const AnalyticHandle f =
                i % 3 == 2 ? pow1mz_handle(-0.5 * u01(rng)) : polynomial_handle(random_polynomial(rng, 1 + i % 5));
            worst = std::max(worst, root_shift_decomposition(u, z0, f).residual);
        }
        m["max_residual"] = num(worst);
        return worst <= 1e-7;
    });
    L.run("sec5.rootshift.origin", "z0 = 0 is rejected", "Z0AtOrigin", [&](json& m) {
        try {
            root_shift_decomposition(identity_symbol(), 0.0, constant_handle(1.0));
        } catch (const Error& e) {
            m["error"] = to_string(e.code());
            return e.code() == ErrorCode::Z0AtOrigin;
        }
        return false;
    });
    const std::vector<std::tuple<std::string, Symbol, std::vector<cplx>>> bl{
        {"z", identity_symbol(), {cplx{0.0}}}, {"log1mz", log1mz_symbol(), {cplx{0.5}}}, {"trivial", identity_symbol(), {}}};
    for (const auto& [name, u, zeros] : bl) {
        L.run("sec5.blaschke." + name, "g' = B u' with u = " + name, "verdicts agree on all samples",
              [&, u = u, zeros = zeros](json& m) {
                  const auto r = blaschke_reduce_check(u, zeros, standard_samples(), opt);
                  m["g"] = verdicts(r.g_verdicts);
                  m["u"] = verdicts(r.u_verdicts);
                  m["agreements"] = r.agreements;
                  m["delta"] = num(r.separation.delta);
                  return r.agreements == static_cast<int>(r.g_verdicts.size());
              });
    }
    L.run("sec5.vg.log", "g = log1mz, q = z enlarges the holomorphic domain", "all samples pass", [&](json& m) {
        const auto r = vg_inclusion_check(log1mz_symbol(), identity_handle(),
                                          {constant_handle(1.0), pow1mz_handle(-0.3)}, 2.0, opt);
        m["h"] = verdicts(r.sample_in_h);
        return r.pass;
    });
    L.run("sec5.vg.z", "g = z, q = 1 - z enlarges the holomorphic domain", "all samples pass", [&](json& m) {
        const auto r = vg_inclusion_check(identity_symbol(), polynomial_handle({1, -1}),
                                          {constant_handle(1.0), pow1mz_handle(-0.45)}, 2.0, opt);
        m["h"] = verdicts(r.sample_in_h);
        return r.pass;
    });
    L.run("sec5.bounded_below.two_sided", "g1 = z, g2' = 1 + z/2", "inf >= 1/2, sup <= 3/2", [&](json& m) {
        const auto r = bounded_below_multiplier_check(identity_symbol(),
                                                      symbol_from_derivative(polynomial_handle({1, 0.5})), 2.0,
                                                      standard_samples(), opt);
        m["inf"] = num(r.inf_abs);
        m["sup"] = num(r.h_sup.value);
        m["bounded_below"] = to_string(r.bounded_below);
        return r.inf_abs >= 0.5 - 1e-12 && r.h_sup.value <= 1.5 + 1e-12 &&
               r.bounded_below == Classification::Finite;
    });
    L.run("sec5.bounded_below.degenerate", "g1 = z, g2' = 1 - z", "not bounded below", [&](json& m) {
        const auto r = bounded_below_multiplier_check(identity_symbol(),
                                                      symbol_from_derivative(polynomial_handle({1, -1})), 2.0, {}, opt);
        m["inf"] = num(r.inf_abs);
        m["bounded_below"] = to_string(r.bounded_below);
        return r.bounded_below == Classification::Divergent;
    });
    L.run("sec5.bounded_below.same", "g1 = g2 = z", "h = 1", [&](json& m) {
        const auto r = bounded_below_multiplier_check(identity_symbol(), identity_symbol(), 2.0, {}, opt);
        m["inf"] = num(r.inf_abs);
        m["sup"] = num(r.h_sup.value);
        return std::abs(r.inf_abs - 1.0) <= 1e-15 && std::abs(r.h_sup.value - 1.0) <= 1e-15;
    });
}

inline std::vector<Item> run_suite(const std::string& suite, const Config& cfg) {
    Ledger L(cfg);
    const bool all = suite == "all";
    if (all)
        norms_items(L);
    if (all || suite == "thm2")
        thm2_items(L);
    if (all || suite == "thm3")
        thm3_items(L);
    if (all || suite == "thm4")
        thm4_items(L);
    if (all || suite == "thm5")
        thm5_items(L);
    if (all || suite == "sec5")
        sec5_items(L);
    return L.take();
}

inline json items_json(const std::vector<Item>& items) {
    json arr = json::array();
    for (const auto& it : items)
        arr.push_back({{"id", it.id},
                       {"anchor", it.anchor},
                       {"pass", it.pass},
                       {"tolerance", it.tolerance},
                       {"measured", it.measured}});
    return arr;
}

} // namespace vd::verify
