// vd: command-line front end for the Volterra-domain library.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "verify_paper.hpp"
#include "vd/vd.hpp"

namespace {

using vd::verify::json;
using vd::verify::num;

constexpr const char* tool_version = "0.1.0";

enum Exit : int {
    ExitOk = 0,
    ExitOut = 1,
    ExitUsage = 2,
    ExitPole = 3,
    ExitInconclusive = 4,
    ExitAmbiguous = 5,
    ExitFailure = 6,
};

struct Common {
    std::uint64_t seed = vd::default_seed;
    std::string json_out;
    std::optional<int> schedule_k;
};

vd::NormOptions norm_options(const Common& c) {
    vd::NormOptions opt;
    int depth = 14;
    if (const char* env = std::getenv("VD_SCHEDULE_K")) {
        try {
            depth = std::stoi(env);
        } catch (const std::exception&) {
            throw vd::Error(vd::ErrorCode::ParameterOutOfRange, std::string("VD_SCHEDULE_K is not an integer: ") + env);
        }
    }
    if (c.schedule_k)
        depth = *c.schedule_k;
    opt.schedule = vd::RadiusSchedule::geometric(depth);
    return opt;
}

json means_json(const vd::NormEstimate& e) {
    json arr = json::array();
    for (const auto& [r, m] : e.means)
        arr.push_back({num(r), num(m)});
    return arr;
}

json estimate_json(const vd::NormEstimate& e) {
    return {{"value", num(e.value)},
            {"classification", vd::to_string(e.classification)},
            {"p", num(e.p)},
            {"growth_exponent", num(e.growth_exponent)},
            {"tail_exponent", num(e.tail_exponent)},
            {"evidence", e.evidence},
            {"means", means_json(e)}};
}

int emit(const std::string& command, const json& inputs, const json& results, const Common& c,
         std::chrono::steady_clock::time_point start) {
    json report;
    report["command"] = command;
    report["inputs"] = inputs;
    report["results"] = results;
    report["provenance"] = {{"tool_version", tool_version}, {"seed", c.seed}};
    report["wallclock_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (c.json_out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(c.json_out);
        if (!out)
            throw vd::Error(vd::ErrorCode::ParameterOutOfRange, "cannot write " + c.json_out);
        out << report.dump(2) << "\n";
    }
    return ExitOk;
}

int exit_for(vd::Verdict v) {
    switch (v) {
    case vd::Verdict::In: return ExitOk;
    case vd::Verdict::Out: return ExitOut;
    case vd::Verdict::Inconclusive: return ExitInconclusive;
    }
    return ExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Volterra operators and their optimal domains"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    int schedule_k = 0;
    app.add_option("--seed", common.seed, "seed for randomized sample families");
    app.add_option("--json", common.json_out, "write the report to this file instead of stdout");
    auto* sk = app.add_option("--schedule-k", schedule_k, "radius schedule depth K (radii 1 - 2^-k, k = 2..K)");

    // norm
    auto* norm = app.add_subcommand("norm", "estimate a norm of f");
    std::string f_expr, g_expr, h_expr, g1_expr, g2_expr, csv_path, bergman_expr;
    double hp = 0.0, gfunc = 0.0, p = 2.0;
    bool hinf = false, bmoa = false, refined = false;
    norm->add_option("--f", f_expr, "function expression")->required();
    auto* o_hp = norm->add_option("--hp", hp, "Hardy space exponent p >= 1");
    auto* o_hinf = norm->add_flag("--hinf", hinf, "supremum norm");
    auto* o_bmoa = norm->add_flag("--bmoa", bmoa, "BMOA seminorm");
    auto* o_gf = norm->add_option("--gfunc", gfunc, "Littlewood-Paley G-function at exponent p");
    auto* o_berg = norm->add_option("--bergman", bergman_expr, "weighted Bergman norm for the symbol g");
    norm->add_flag("--refined-grid", refined, "BMOA: add twelve points at modulus 0.9999");
    norm->add_option("--csv", csv_path, "write the (r, M) table as CSV");
    for (auto* o : {o_hp, o_hinf, o_bmoa, o_gf, o_berg})
        for (auto* other : {o_hp, o_hinf, o_bmoa, o_gf, o_berg})
            if (o != other)
                o->excludes(other);

    // member
    auto* member = app.add_subcommand("member", "membership of f in the optimal domain of T_g");
    bool mero = false, holo = false, poly = false;
    member->add_option("--g", g_expr, "symbol expression")->required();
    member->add_option("--f", f_expr, "function expression")->required();
    member->add_option("--p", p, "exponent p >= 1");
    auto* m_mero = member->add_flag("--mero", mero, "meromorphic domain (default)");
    auto* m_holo = member->add_flag("--holo", holo, "holomorphic domain");
    m_mero->excludes(m_holo);

    // domain-eq
    auto* domeq = app.add_subcommand("domain-eq", "compare the optimal domains of two symbols");
    domeq->add_option("--g1", g1_expr, "left symbol")->required();
    domeq->add_option("--g2", g2_expr, "right symbol")->required();
    domeq->add_option("--p", p, "exponent p >= 1");
    auto* d_mero = domeq->add_flag("--mero", mero, "meromorphic domains (default)");
    auto* d_holo = domeq->add_flag("--holo", holo, "holomorphic domains");
    auto* d_poly = domeq->add_flag("--poly", poly, "polynomial symbols against T_z");
    d_mero->excludes(d_holo)->excludes(d_poly);
    d_holo->excludes(d_poly);

    // wg
    auto* wg = app.add_subcommand("wg", "membership of h in W_g");
    wg->set_help_flag("--help", "print this help message and exit");
    wg->add_option("--g", g_expr, "symbol expression")->required();
    wg->add_option("--h", h_expr, "candidate symbol")->required();

    // verify-paper
    auto* verify = app.add_subcommand("verify-paper", "run the regression ledger of worked examples");
    std::string suite = "all";
    bool inject = false;
    verify->add_option("--suite", suite, "all|thm2|thm3|thm4|thm5|sec5")
        ->check(CLI::IsMember(vd::verify::suite_names()));
    verify->add_flag("--inject-fault", inject, "run with deliberately broken classifier thresholds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ExitOk : ExitUsage;
    }
    if (sk->count() > 0)
        common.schedule_k = schedule_k;

    const auto start = std::chrono::steady_clock::now();
    // Parsing of expressions and parameters maps to the usage exit code.
    auto parse_symbol = [](const std::string& s) { return vd::symbol_from_handle(vd::parse_function_expr(s)); };
    try {
        vd::NormOptions opt;
        std::optional<vd::AnalyticHandle> f, h;
        std::optional<vd::Symbol> g, g1, g2;
        try {
            opt = norm_options(common);
            opt.schedule.validate();
            if (!f_expr.empty())
                f = vd::parse_function_expr(f_expr);
            if (!h_expr.empty())
                h = vd::parse_function_expr(h_expr);
            if (!g_expr.empty())
                g = parse_symbol(g_expr);
            if (!g1_expr.empty())
                g1 = parse_symbol(g1_expr);
            if (!g2_expr.empty())
                g2 = parse_symbol(g2_expr);
            if (!bergman_expr.empty())
                g = parse_symbol(bergman_expr);
            const bool uses_p = member->parsed() || domeq->parsed();
            if (uses_p && !(p >= 1.0))
                throw vd::Error(vd::ErrorCode::ParameterOutOfRange, "p must be at least 1");
            if (norm->parsed() && (o_hp->count() || o_gf->count()) && !((o_hp->count() ? hp : gfunc) >= 1.0))
                throw vd::Error(vd::ErrorCode::ParameterOutOfRange, "p must be at least 1");
        } catch (const vd::ParseError& e) {
            std::cerr << "parse error: " << e.what() << "\n";
            return ExitUsage;
        } catch (const vd::Error& e) {
            if (e.code() != vd::ErrorCode::ParameterOutOfRange)
                throw;
            std::cerr << "invalid parameter: " << e.what() << "\n";
            return ExitUsage;
        }

        if (norm->parsed()) {
            json inputs{{"f", f_expr}, {"schedule_depth", opt.schedule.radii.size() + 1}};
            json results;
            vd::NormEstimate est;
            if (o_hp->count()) {
                inputs["norm"] = "hp";
                inputs["p"] = hp;
                est = vd::hp_norm(*f, hp, opt);
            } else if (hinf) {
                inputs["norm"] = "hinf";
                est = vd::hinf_sup(*f, opt);
            } else if (bmoa) {
                inputs["norm"] = "bmoa";
                inputs["refined_grid"] = refined;
                const auto b = vd::bmoa_seminorm(*f, refined ? vd::refined_bmoa_grid() : vd::default_bmoa_grid(), opt);
                est = b.estimate;
                json pts = json::array();
                for (const auto& [a, v] : b.per_point)
                    pts.push_back({{"a", vd::verify::cnum(a)}, {"value", num(v)}});
                results["per_point"] = pts;
                results["refinement_delta"] = num(b.refinement_delta);
            } else if (o_gf->count()) {
                inputs["norm"] = "gfunc";
                inputs["p"] = gfunc;
                est = vd::g_function_norm(*f, gfunc, opt);
            } else if (o_berg->count()) {
                inputs["norm"] = "bergman";
                inputs["g"] = bergman_expr;
                est = vd::bergman_weighted_norm(*f, *g, opt);
            } else {
                std::cerr << "choose one of --hp, --hinf, --bmoa, --gfunc, --bergman\n";
                return ExitUsage;
            }
            results["estimate"] = estimate_json(est);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                csv << "r,M\n";
                for (const auto& [r, m] : est.means)
                    csv << vd::format_real(r) << "," << vd::format_real(m) << "\n";
            }
            return emit("norm", inputs, results, common, start);
        }

        if (member->parsed()) {
            const bool use_holo = holo;
            json inputs{{"g", g_expr}, {"f", f_expr}, {"p", p}, {"domain", use_holo ? "holo" : "mero"}};
            const auto v = use_holo ? vd::holo_domain_membership(*g, *f, p, opt)
                                    : vd::mero_domain_membership(*g, *f, p, opt);
            json results{{"status", vd::to_string(v.status)},
                         {"pole_check", v.pole_check},
                         {"image_norm", estimate_json(v.image_norm)},
                         {"notes", v.notes}};
            emit("member", inputs, results, common, start);
            return exit_for(v.status);
        }

        if (domeq->parsed()) {
            json inputs{{"g1", g1_expr}, {"g2", g2_expr}, {"p", p}};
            json results;
            if (poly) {
                inputs["mode"] = "poly";
                const auto r1 = vd::polynomial_domain_classify(*g1, p);
                const auto r2 = vd::polynomial_domain_classify(*g2, p);
                results["g1"] = vd::to_string(r1.classification);
                results["g2"] = vd::to_string(r2.classification);
                results["classification"] = vd::to_string(r1.classification);
                std::string rel = "Equal";
                if (r1.classification != r2.classification)
                    rel = r1.classification == vd::PolyClass::StrictlyLarger ? "RightInLeft" : "LeftInRight";
                else if (r1.classification == vd::PolyClass::StrictlyLarger)
                    rel = "Inconclusive";
                results["relation"] = rel;
                if (r1.circle_root) {
                    results["circle_root"] = vd::verify::cnum(*r1.circle_root);
                    results["witness"] = r1.witness->description();
                }
            } else {
                inputs["mode"] = holo ? "holo" : "mero";
                const auto r = holo ? vd::holo_domains_equal(*g1, *g2, opt) : vd::mero_domains_equal(*g1, *g2, opt);
                results["relation"] = vd::to_string(r.relation);
                results["k1_sup"] = estimate_json(r.k1_sup);
                results["k2_sup"] = estimate_json(r.k2_sup);
                results["reciprocal_check"] = r.reciprocal_check;
                results["notes"] = r.notes;
            }
            return emit("domain-eq", inputs, results, common, start);
        }

        if (wg->parsed()) {
            json inputs{{"g", g_expr}, {"h", h_expr}};
            const auto c = vd::wg_membership(*g, *h, opt);
            json results{{"member", c.member},
                         {"k", c.k.description()},
                         {"k_sup", estimate_json(c.k_sup)},
                         {"notes", c.notes}};
            if (c.member) {
                results["tg_k_bmoa"] = estimate_json(c.tg_k_bmoa.estimate);
                results["wg_norm"] = num(c.wg_norm);
            }
            emit("wg", inputs, results, common, start);
            return c.member ? ExitOk : ExitOut;
        }

        if (verify->parsed()) {
            vd::verify::Config cfg{common.seed, opt};
            if (inject)
                cfg.opt.classifier = vd::verify::broken_classifier();
            const auto items = vd::verify::run_suite(suite, cfg);
            int failed = 0;
            for (const auto& it : items) {
                if (it.pass)
                    continue;
                ++failed;
                std::cerr << "FAIL " << it.id << " [" << it.anchor << "] expected " << it.tolerance
                          << "; measured " << it.measured.dump() << "\n";
            }
            std::cerr << (items.size() - failed) << "/" << items.size() << " items passed\n";
            json inputs{{"suite", suite}, {"inject_fault", inject}};
            json results{{"passed", items.size() - failed}, {"total", items.size()},
                         {"items", vd::verify::items_json(items)}};
            emit("verify-paper", inputs, results, common, start);
            return failed ? ExitOut : ExitOk;
        }
    } catch (const vd::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return ExitUsage;
    } catch (const vd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case vd::ErrorCode::RadiusHitsPole: return ExitPole;
        case vd::ErrorCode::NearCircleAmbiguous: return ExitAmbiguous;
        case vd::ErrorCode::ParameterOutOfRange: return ExitUsage;
        default: return ExitFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitFailure;
    }
    return ExitFailure;
}
