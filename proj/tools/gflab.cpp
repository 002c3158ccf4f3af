#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "gflab/heights.hpp"
#include "gflab/isogeny.hpp"
#include "gflab/ode_guess.hpp"
#include "gflab/qexp.hpp"
#include "gflab/report.hpp"

using namespace gflab;
using nlohmann::json;

namespace {

void write_output(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open " + out);
    os << text << "\n";
}

QSeries series_by_spec(const std::string& spec, long order) {
    if (is_known_series(spec)) return named_series(spec, order);
    return load_series_file(spec);
}

std::string series_to_text(const QSeries& s, size_t max_terms = 12) {
    std::string out;
    size_t shown = 0;
    for (long n = s.offset(); n <= s.order() && shown < max_terms; ++n) {
        if (s.coeff(n) == 0 && !(n == 0 && s.is_zero())) continue;
        if (!out.empty()) out += " + ";
        out += "(" + rat_to_string(s.coeff(n)) + ")*q^" + std::to_string(n);
        ++shown;
    }
    if (out.empty()) out = "0";
    out += "  [certified through q^" + std::to_string(s.order()) + "]";
    return out;
}

json series_to_json(const QSeries& s) {
    json j;
    j["offset"] = s.offset();
    j["order"] = s.order();
    json cs = json::array();
    for (long n = s.offset(); n <= s.order(); ++n) cs.push_back(rat_to_string(s.coeff(n)));
    j["coefficients"] = cs;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact modular q-expansions, certified place evaluation, and isogeny period relations"};
    app.require_subcommand(1);

    // ---- qexp ----
    std::string qexp_name, qexp_format = "text", qexp_out;
    long qexp_order = 20;
    auto* cmd_qexp = app.add_subcommand("qexp", "print a named q-expansion");
    cmd_qexp->add_option("name", qexp_name, "series name (s1 s3 s5 E2 E4 E6 a4_tate a6_tate delta j inv_j h alpha theta F G)")->required();
    cmd_qexp->add_option("--order", qexp_order, "truncation order");
    cmd_qexp->add_option("--format", qexp_format, "text | json | cache");
    cmd_qexp->add_option("--out", qexp_out, "output file");

    // ---- eval ----
    std::string eval_series, eval_place = "inf", eval_x = "0", eval_bound;
    long eval_precision = 50;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a series at a place");
    cmd_eval->add_option("--series", eval_series, "name or cache file")->required();
    cmd_eval->add_option("--place", eval_place, "inf or p=<prime>");
    cmd_eval->add_option("--x", eval_x, "rational evaluation point")->required();
    cmd_eval->add_option("--precision", eval_precision, "p-adic digits or mpfr bits");
    cmd_eval->add_option("--coeff-bound", eval_bound, "C,rho with |a_n| <= C rho^-n");

    // ---- ode ----
    std::string ode_series;
    long ode_order = 400, ode_max_order = 3, ode_max_degree = 12;
    auto* cmd_ode = app.add_subcommand("ode", "guess a linear differential operator");
    auto* cmd_ode_guess = cmd_ode->add_subcommand("guess", "find the minimal operator");
    cmd_ode_guess->add_option("--series", ode_series)->required();
    cmd_ode_guess->add_option("--order", ode_order, "series truncation order");
    cmd_ode_guess->add_option("--max-order", ode_max_order);
    cmd_ode_guess->add_option("--max-degree", ode_max_degree);

    // ---- relations ----
    std::string rel_series;
    long rel_delta = 1, rel_xdeg = 1, rel_order = 120;
    auto* cmd_rel = app.add_subcommand("relations", "functional relations between series");
    auto* cmd_rel_find = cmd_rel->add_subcommand("find", "nullspace of the coefficient system");
    cmd_rel_find->add_option("--series", rel_series, "comma-separated names")->required();
    cmd_rel_find->add_option("--delta", rel_delta, "homogeneous degree");
    cmd_rel_find->add_option("--xdeg", rel_xdeg, "X-degree bound");
    cmd_rel_find->add_option("--order", rel_order, "series truncation order");

    // ---- height ----
    std::string height_value, height_minpoly;
    auto* cmd_height = app.add_subcommand("height", "logarithmic Weil height");
    cmd_height->add_option("value", height_value, "rational p/q");
    cmd_height->add_option("--minpoly", height_minpoly, "integer coefficients c0,c1,...");

    // ---- divisor scan ----
    std::string div_eps = "1/2";
    long div_nmax = 1000000;
    auto* cmd_div = app.add_subcommand("divisor-scan", "max of d(N)/N^eps");
    cmd_div->add_option("--eps", div_eps);
    cmd_div->add_option("--nmax", div_nmax);

    // ---- verify periods ----
    long vp_samples = 5, vp_bits = 256;
    auto* cmd_verify = app.add_subcommand("verify", "verification suites");
    auto* cmd_vp = cmd_verify->add_subcommand("periods", "series/lattice agreement and Legendre");
    cmd_vp->add_option("--samples", vp_samples);
    cmd_vp->add_option("--bits", vp_bits);

    // ---- gseries ----
    long gs_order = 40, gs_bits = 768;
    std::string gs_out;
    auto* cmd_gs = app.add_subcommand("gseries", "reconstruct G = aF + bF'");
    cmd_gs->add_option("--order", gs_order);
    cmd_gs->add_option("--bits", gs_bits);
    cmd_gs->add_option("--out", gs_out);

    // ---- modpoly ----
    long mp_level = 2, mp_order = 0;
    std::string mp_out;
    auto* cmd_mp = app.add_subcommand("modpoly", "classical modular polynomial");
    cmd_mp->add_option("--level", mp_level)->required();
    cmd_mp->add_option("--order", mp_order, "generation order (defaults to the requirement)");
    cmd_mp->add_option("--out", mp_out);

    // ---- pair ----
    std::string pair_t = "5", pair_out;
    long pair_p = 5, pair_bits = 512;
    bool pair_extract = true;
    auto* cmd_pair = app.add_subcommand("pair", "isogenous curve pairs");
    auto* cmd_pair_x0 = cmd_pair->add_subcommand("x0", "degree-2 pair from the X0(2) parametrization");
    cmd_pair_x0->add_option("--t", pair_t, "rational parameter")->required();
    cmd_pair_x0->add_option("--p", pair_p, "prime with v_p(s_i) >= 1")->required();
    cmd_pair_x0->add_option("--bits", pair_bits);
    cmd_pair_x0->add_flag("--extract,!--no-extract", pair_extract, "populate scalars");
    cmd_pair_x0->add_option("--out", pair_out);

    // ---- relation ----
    std::string rb_pair_file, rb_pair2_file, rb_out;
    auto* cmd_relation = app.add_subcommand("relation", "relation bundles");
    auto* cmd_rb = cmd_relation->add_subcommand("build", "P_fin (and quadratic P_inf for two pairs)");
    cmd_rb->add_option("--pair-file", rb_pair_file)->required();
    cmd_rb->add_option("--pair2-file", rb_pair2_file);
    cmd_rb->add_option("--out", rb_out);

    std::string rv_rel_file, rv_pair_file, rv_places = "inf,p=5";
    long rv_precision = 50, rv_bits = 512;
    auto* cmd_rv = cmd_relation->add_subcommand("verify", "evaluate a bundle at the admissible places");
    cmd_rv->add_option("--rel", rv_rel_file)->required();
    cmd_rv->add_option("--pair", rv_pair_file)->required();
    cmd_rv->add_option("--places", rv_places);
    cmd_rv->add_option("--precision", rv_precision);
    cmd_rv->add_option("--bits", rv_bits);

    // ---- suite ----
    std::string suite_name, suite_out, suite_format = "json";
    SuiteOptions sopt;
    auto* cmd_suite = app.add_subcommand("suite", "run a verification suite");
    cmd_suite->add_option("name", suite_name, "identities growth nonarch-lemmas periods padic-relations relations modpoly heights")->required();
    cmd_suite->add_option("--order", sopt.order);
    cmd_suite->add_option("--bits", sopt.bits);
    cmd_suite->add_option("--prime", sopt.prime);
    cmd_suite->add_option("--precision", sopt.precision);
    cmd_suite->add_option("--samples", sopt.samples);
    cmd_suite->add_option("--seed", sopt.seed);
    cmd_suite->add_option("--out", suite_out);
    cmd_suite->add_option("--format", suite_format, "json | text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_qexp->parsed()) {
            QSeries s = qexp_name == "G" ? G_series(qexp_order) : named_series(qexp_name, qexp_order);
            if (qexp_format == "text") write_output(qexp_out, series_to_text(s, qexp_order + 2));
            else if (qexp_format == "json") write_output(qexp_out, series_to_json(s).dump(2));
            else if (qexp_format == "cache") {
                std::ostringstream os;
                write_series(os, s);
                write_output(qexp_out, os.str());
            } else {
                std::cerr << "unknown format " << qexp_format << "\n";
                return 2;
            }
            return 0;
        }
        if (cmd_eval->parsed()) {
            auto x = rat_from_string(eval_x);
            if (!x) { std::cerr << "bad rational: " << eval_x << "\n"; return 2; }
            json out;
            if (eval_place == "inf") {
                long bits = std::max(eval_precision, 64L);
                long need = static_cast<long>(bits * 0.7) + 40;
                QSeries s = series_by_spec(eval_series, need);
                std::optional<CoeffBound> cb;
                if (!eval_bound.empty()) {
                    auto comma = eval_bound.find(',');
                    cb = CoeffBound{*rat_from_string(eval_bound.substr(0, comma)),
                                    *rat_from_string(eval_bound.substr(comma + 1))};
                } else if (eval_series == "F" || eval_series == "theta" || eval_series == "alpha") {
                    cb = f_coeff_bound();
                }
                RealEval ev = eval_real(s, RealBall::exact(*x, bits), bits, cb);
                out["value"] = ev.value.to_string(static_cast<size_t>(bits / 4));
                out["certified"] = ev.certified;
                out["precision"] = std::to_string(bits) + " bits";
            } else if (eval_place.rfind("p=", 0) == 0) {
                Int p(eval_place.substr(2));
                QSeries s = series_by_spec(eval_series, eval_precision + 8);
                PadicNum xp = PadicNum::from_rat(*x, p, eval_precision + 8);
                PadicNum v = eval_padic(s, xp, eval_precision);
                out["value"] = v.to_string();
                out["certified"] = true;
                out["precision"] = p.get_str() + "^" + std::to_string(eval_precision);
            } else {
                std::cerr << "unknown place " << eval_place << "\n";
                return 2;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_ode_guess->parsed()) {
            QSeries s = series_by_spec(ode_series, ode_order);
            auto ode = find_ode(s, ode_max_order, ode_max_degree);
            if (!ode) {
                std::cout << "no operator within the bounds\n";
                return 1;
            }
            std::cout << ode->to_string() << "\n";
            return 0;
        }
        if (cmd_rel_find->parsed()) {
            std::vector<QSeries> ys;
            std::string rest = rel_series;
            while (!rest.empty()) {
                auto comma = rest.find(',');
                std::string name = rest.substr(0, comma);
                ys.push_back(series_by_spec(name, rel_order));
                if (comma == std::string::npos) break;
                rest = rest.substr(comma + 1);
            }
            auto rels = find_functional_relations(ys, rel_delta, rel_xdeg);
            json out = json::array();
            for (const auto& r : rels) out.push_back(r.to_string());
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_height->parsed()) {
            RealBall h(256);
            if (!height_minpoly.empty()) {
                std::vector<Int> cs;
                std::string rest = height_minpoly;
                while (!rest.empty()) {
                    auto comma = rest.find(',');
                    cs.emplace_back(rest.substr(0, comma));
                    if (comma == std::string::npos) break;
                    rest = rest.substr(comma + 1);
                }
                h = weil_height_minpoly(cs);
            } else if (!height_value.empty()) {
                auto x = rat_from_string(height_value);
                if (!x) { std::cerr << "bad rational\n"; return 2; }
                h = weil_height(*x);
            } else {
                std::cerr << "need a value or --minpoly\n";
                return 2;
            }
            std::cout << h.to_string(30) << "\n";
            return 0;
        }
        if (cmd_div->parsed()) {
            auto eps = rat_from_string(div_eps);
            if (!eps) { std::cerr << "bad eps\n"; return 2; }
            auto scan = check_divisor_bound(*eps, div_nmax);
            json out;
            out["argmax"] = std::to_string(scan.argmax);
            out["d_argmax"] = std::to_string(scan.d_argmax);
            out["max_ratio"] = std::to_string(scan.max_ratio);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_vp->parsed()) {
            SuiteOptions o;
            o.samples = static_cast<int>(vp_samples);
            o.bits = vp_bits;
            Report rep = run_suite("periods", o);
            std::cout << rep.to_json() << "\n";
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd_gs->parsed()) {
            GReconstruction gr = reconstruct_G(gs_order, 26, gs_bits);
            json out;
            out["a"] = "(" + gr.a_num.to_string() + ") / (" + gr.a_den.to_string() + ")";
            out["b"] = "(" + gr.b_num.to_string() + ") / (" + gr.b_den.to_string() + ")";
            out["degree_budget"] = gr.degree_budget;
            out["G"] = series_to_json(gr.g);
            write_output(gs_out, out.dump(2));
            return 0;
        }
        if (cmd_mp->parsed()) {
            long order = mp_order > 0 ? mp_order : modular_polynomial_order_requirement(mp_level);
            ModularPolynomial phi = modular_polynomial(mp_level, order);
            json out;
            out["level"] = phi.level;
            out["bidegree"] = phi.bidegree;
            json rows = json::array();
            for (long i = 0; i <= phi.bidegree; ++i) {
                json row = json::array();
                for (long k = 0; k <= phi.bidegree; ++k) row.push_back(phi.coeff(i, k).get_str());
                rows.push_back(row);
            }
            out["coefficients"] = rows;
            write_output(mp_out, out.dump(2));
            return 0;
        }
        if (cmd_pair_x0->parsed()) {
            auto t = rat_from_string(pair_t);
            if (!t) { std::cerr << "bad t\n"; return 2; }
            IsogenyPair pair = x0_pair(*t, Int(pair_p));
            if (pair_extract) pair = extract_isogeny_scalars(pair, pair_bits);
            write_output(pair_out, pair.to_json());
            return 0;
        }
        if (cmd_rb->parsed()) {
            std::ifstream is(rb_pair_file);
            if (!is) { std::cerr << "cannot open " << rb_pair_file << "\n"; return 2; }
            std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
            IsogenyPair pair = IsogenyPair::from_json(text);
            if (!pair.populated) { std::cerr << "pair has no scalars; run extraction first\n"; return 2; }
            RelationBundle bundle;
            bundle.P_fin = build_P_fin(pair.a_squared(), pair.M);
            if (!rb_pair2_file.empty()) {
                std::ifstream is2(rb_pair2_file);
                std::string t2((std::istreambuf_iterator<char>(is2)), std::istreambuf_iterator<char>());
                IsogenyPair p2 = IsogenyPair::from_json(t2);
                if (pair.disc == 1 && p2.disc == 1 && pair.hr != 0)
                    bundle.P_inf = build_P_inf_quadratic(pair.a0, pair.b0, pair.d0, pair.hr, p2.a0,
                                                         p2.b0, p2.d0, p2.hr);
            }
            write_output(rb_out, bundle.to_json());
            return 0;
        }
        if (cmd_rv->parsed()) {
            auto read_all = [](const std::string& path) {
                std::ifstream is(path);
                if (!is) throw std::runtime_error("cannot open " + path);
                return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
            };
            RelationBundle bundle = RelationBundle::from_json(read_all(rv_rel_file));
            IsogenyPair pair = IsogenyPair::from_json(read_all(rv_pair_file));
            std::vector<std::string> places;
            std::string rest = rv_places;
            while (!rest.empty()) {
                auto comma = rest.find(',');
                places.push_back(rest.substr(0, comma));
                if (comma == std::string::npos) break;
                rest = rest.substr(comma + 1);
            }
            VerifyReport rep = multi_place_verify(pair, bundle, places, rv_precision, rv_bits);
            json out;
            json checks = json::array();
            for (const auto& c : rep.checks) {
                json cj;
                cj["place"] = c.place;
                cj["admissible"] = c.admissible;
                cj["passed"] = c.passed;
                cj["matched_m"] = c.matched_m;
                cj["detail"] = c.detail;
                checks.push_back(cj);
            }
            out["checks"] = checks;
            out["all_passed"] = rep.all_passed;
            std::cout << out.dump(2) << "\n";
            return rep.all_passed ? 0 : 1;
        }
        if (cmd_suite->parsed()) {
            Report rep = run_suite(suite_name, sopt);
            std::string text = suite_format == "text" ? rep.to_text() : rep.to_json();
            write_output(suite_out, text);
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const unknown_suite& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
