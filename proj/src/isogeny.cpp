#include "gflab/isogeny.hpp"

#include <json.hpp>

#include "gflab/qexp.hpp"
#include "gflab/ratrec.hpp"

namespace gflab {

using nlohmann::json;

namespace {

const char* provenance_name(PairProvenance p) {
    switch (p) {
        case PairProvenance::tate_power: return "tate_power";
        case PairProvenance::x0_param: return "x0_param";
        default: return "synthetic";
    }
}

PairProvenance provenance_from(const std::string& s) {
    if (s == "tate_power") return PairProvenance::tate_power;
    if (s == "x0_param") return PairProvenance::x0_param;
    return PairProvenance::synthetic;
}

}  // namespace

std::string IsogenyPair::to_json() const {
    json j;
    j["s1"] = rat_to_string(s1);
    j["s2"] = rat_to_string(s2);
    j["M"] = M.get_str();
    j["provenance"] = provenance_name(provenance);
    // directly generated pairs carry no auxiliary isogeny, so T = 1 and the
    // finite-place relation degree bound is 2 d(M T^2)
    j["auxiliary_degree_T"] = "1";
    j["p_fin_degree_bound"] = (2 * divisor_count(M)).get_str();
    j["populated"] = populated;
    if (populated) {
        j["disc"] = disc.get_str();
        j["a0"] = rat_to_string(a0);
        j["b0"] = rat_to_string(b0);
        j["d0"] = rat_to_string(d0);
        j["homology"] = {hp, hq, hr, hs};
    }
    return j.dump(2);
}

IsogenyPair IsogenyPair::from_json(const std::string& text) {
    json j = json::parse(text);
    IsogenyPair p;
    p.s1 = *rat_from_string(j.at("s1").get<std::string>());
    p.s2 = *rat_from_string(j.at("s2").get<std::string>());
    p.M = Int(j.at("M").get<std::string>());
    p.provenance = provenance_from(j.value("provenance", "synthetic"));
    p.populated = j.value("populated", false);
    if (p.populated) {
        p.disc = Int(j.at("disc").get<std::string>());
        p.a0 = *rat_from_string(j.at("a0").get<std::string>());
        p.b0 = *rat_from_string(j.at("b0").get<std::string>());
        p.d0 = *rat_from_string(j.at("d0").get<std::string>());
        auto h = j.at("homology");
        p.hp = h[0].get<long>();
        p.hq = h[1].get<long>();
        p.hr = h[2].get<long>();
        p.hs = h[3].get<long>();
    }
    return p;
}

IsogenyPair x0_pair(const Rat& t, const Int& p) {
    if (t == 0) throw bad_parameter("x0_pair: t = 0");
    Rat j1 = pow_rat(t + 256, 3) / (t * t);
    Rat j2 = pow_rat(t + 16, 3) / t;
    for (const Rat& j : {j1, j2}) {
        if (j == 0 || j == 1728) throw bad_parameter("x0_pair: j-invariant hits 0 or 1728");
        if (is_integer(j))
            throw cm_point("x0_pair: integral j-invariant " + rat_to_string(j) +
                           " rejected by the conservative CM filter");
    }
    // the defining property of the parametrization, as an exact identity here
    static ModularPolynomial phi2 = modular_polynomial(2, modular_polynomial_order_requirement(2));
    if (phi2.eval(j1, j2) != 0)
        throw bad_parameter("x0_pair: Phi_2(j1, j2) != 0 at t = " + rat_to_string(t));

    IsogenyPair pair;
    pair.s1 = 1 / j1;
    pair.s2 = 1 / j2;
    pair.M = 2;
    pair.provenance = PairProvenance::x0_param;

    Rat radius = delta_s_radius();
    if (abs(pair.s1) > radius || abs(pair.s2) > radius)
        throw bad_parameter("x0_pair: curve parameter outside the certified disc radius");
    if (ord_p(pair.s1, p) < 1 || ord_p(pair.s2, p) < 1)
        throw bad_parameter("x0_pair: p-adic valuation below 1 at p = " + p.get_str());
    return pair;
}

TateIsogenyData tate_isogeny_data(long m, long n) {
    if (m < 1 || n < 1) throw bad_parameter("tate_isogeny_data: m, n >= 1 required");
    TateIsogenyData d;
    d.m = m;
    d.n = n;
    d.M = Int(m) * Int(n);
    d.hom_p = m;
    d.hom_r = 0;
    return d;
}

namespace {

struct Matrices {
    PeriodMatrix P1, P2;
};

Matrices matrices_for(const IsogenyPair& pair, mpfr_prec_t bits) {
    return {period_matrix(CurvePoint(pair.s1), bits), period_matrix(CurvePoint(pair.s2), bits)};
}

}  // namespace

IsogenyPair extract_isogeny_scalars(IsogenyPair pair, mpfr_prec_t bits) {
    if (pair.s1 == pair.s2 && pair.M == 1) {
        pair.populated = true;
        pair.disc = 1;
        pair.a0 = 1;
        pair.b0 = 0;
        pair.d0 = 1;
        pair.hp = 1; pair.hq = 0; pair.hr = 0; pair.hs = 1;
        return pair;
    }
    const long Ml = static_cast<long>(pair.M.get_si());
    Matrices mats = matrices_for(pair, bits);
    const PeriodMatrix& P1 = mats.P1;
    const PeriodMatrix& P2 = mats.P2;

    // On the real segment the omega-row is (real, i*real), so the homology
    // matrix is forced diagonal: a F1 = p F2 and a F1* = s F2* with p s = M.
    // Search the divisor pairs; the +- ambiguity (f vs [-1]f) is fixed by
    // a > 0, i.e. p > 0.
    struct Candidate { long p, s; RealBall a; };
    std::vector<Candidate> passing;
    for (const Int& dv : divisors(pair.M)) {
        long pc = static_cast<long>(dv.get_si());
        long sc = Ml / pc;
        RealBall a_from_F = (RealBall::exact_int(pc, bits) * P2.F_lattice) / P1.F_lattice;
        RealBall a_from_Fs = (RealBall::exact_int(sc, bits) * P2.fstar_im) / P1.fstar_im;
        if ((a_from_F - a_from_Fs).contains_zero()) passing.push_back({pc, sc, a_from_F});
    }
    if (passing.empty())
        throw precision_exhausted("extract_isogeny_scalars: no homology candidate at " +
                                  std::to_string(bits) + " bits");
    if (passing.size() > 1)
        throw ambiguous_lattice("extract_isogeny_scalars: " + std::to_string(passing.size()) +
                                " homology candidates; raise the precision");
    const Candidate& cand = passing.front();

    // exact a^2 by rational reconstruction, revalidated at doubled precision
    RealBall a2_ball = cand.a * cand.a;
    auto a2 = reconstruct_rational_checked(a2_ball, pow_int(Int(10), 12), [&] {
        Matrices hi = matrices_for(pair, 2 * bits);
        RealBall a_hi = (RealBall::exact_int(cand.p, 2 * bits) * hi.P2.F_lattice) / hi.P1.F_lattice;
        return a_hi * a_hi;
    });
    if (!a2) throw precision_exhausted("extract_isogeny_scalars: a^2 reconstruction failed");

    pair.disc = squarefree_kernel(*a2);
    if (pair.disc <= 0)
        throw ambiguous_lattice("extract_isogeny_scalars: nonpositive a^2");
    // a0 = sqrt(a2 / disc), an exact rational square root
    Rat ratio = *a2 / Rat(pair.disc);
    Int rn, rd;
    if (!mpz_perfect_square_p(Int(ratio.get_num()).get_mpz_t()) ||
        !mpz_perfect_square_p(Int(ratio.get_den()).get_mpz_t()))
        throw ambiguous_lattice("extract_isogeny_scalars: a^2/disc is not a rational square");
    mpz_sqrt(rn.get_mpz_t(), Int(ratio.get_num()).get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), Int(ratio.get_den()).get_mpz_t());
    pair.a0 = Rat(rn, rd);
    pair.a0.canonicalize();

    // d from ad = M, then b from the eta-row: b F1 + d G1 = p G2
    pair.d0 = Rat(pair.M) / (pair.a0 * Rat(pair.disc));
    RealBall sqrt_disc = RealBall::exact(Rat(pair.disc), bits).sqrt();
    RealBall d_ball = RealBall::exact(pair.d0, bits) * sqrt_disc;
    RealBall b_ball = (RealBall::exact_int(cand.p, bits) * P2.G_lattice - d_ball * P1.G_lattice) /
                      P1.F_lattice;
    RealBall b0_ball = b_ball / sqrt_disc;
    auto b0 = reconstruct_rational_checked(b0_ball, pow_int(Int(10), 12), [&] {
        Matrices hi = matrices_for(pair, 2 * bits);
        RealBall sd = RealBall::exact(Rat(pair.disc), 2 * bits).sqrt();
        RealBall db = RealBall::exact(pair.d0, 2 * bits) * sd;
        RealBall bb = (RealBall::exact_int(cand.p, 2 * bits) * hi.P2.G_lattice - db * hi.P1.G_lattice) /
                      hi.P1.F_lattice;
        return bb / sd;
    });
    if (!b0) throw precision_exhausted("extract_isogeny_scalars: b reconstruction failed");
    pair.b0 = *b0;

    // second eta-row equation as a consistency check:
    // b F1* + d G1* = s G2*   (imaginary parts)
    {
        RealBall lhs = RealBall::exact(pair.b0, bits) * sqrt_disc * P1.fstar_im + d_ball * P1.gstar_im;
        RealBall rhs = RealBall::exact_int(cand.s, bits) * P2.gstar_im;
        if (!(lhs - rhs).contains_zero())
            throw ambiguous_lattice("extract_isogeny_scalars: eta-row consistency failed");
    }

    pair.hp = cand.p;
    pair.hq = 0;
    pair.hr = 0;
    pair.hs = cand.s;
    pair.populated = true;
    if (pair.ad() != Rat(pair.M))
        throw std::logic_error("extract_isogeny_scalars: ad != M after population");
    if (Int(pair.hp) * Int(pair.hs) - Int(pair.hq) * Int(pair.hr) != pair.M)
        throw std::logic_error("extract_isogeny_scalars: homology determinant != M");
    return pair;
}

RelationPoly build_P_fin(const Rat& a_squared, const Int& M) {
    if (a_squared == 0) throw degenerate_input("build_P_fin: a = 0");
    if (M < 1) throw degenerate_input("build_P_fin: M < 1");
    // (a Y1 - m Y2)(a Y1 + m Y2) = a^2 Y1^2 - m^2 Y2^2 over positive divisors
    RelationPoly acc(2, 0);
    acc.set_term({0, 0}, PolyQ::constant(1));
    for (const Int& m : divisors(M)) {
        RelationPoly factor(2, 2);
        factor.set_term({2, 0}, PolyQ::constant(a_squared));
        factor.set_term({0, 2}, PolyQ::constant(-Rat(m * m)));
        acc = acc.multiplied(factor);
    }
    return acc;
}

namespace {
std::vector<int> expo8(int y1, int z1, int y2, int z2, int y3, int z3, int y4, int z4) {
    return {y1, z1, y2, z2, y3, z3, y4, z4};
}
}  // namespace

RelationPoly build_P_inf_linear(const Rat& a, long p) {
    if (a == 0) throw degenerate_input("build_P_inf_linear: a = 0");
    RelationPoly P(8, 1);
    P.set_term(expo8(1, 0, 0, 0, 0, 0, 0, 0), PolyQ::constant(a));
    P.set_term(expo8(0, 0, 1, 0, 0, 0, 0, 0), PolyQ::constant(-Rat(p)));
    return P;
}

RelationPoly build_P_inf_quadratic(const Rat& a, const Rat& b, const Rat& d, long r,
                                   const Rat& a2, const Rat& b2, const Rat& d2, long r2) {
    if (r == 0 && r2 == 0)
        throw degenerate_input("build_P_inf_quadratic: both r vanish; use the linear branch");
    RelationPoly P(8, 2);
    Rat rp(r), rp2(r2);
    // r' ( -a Z2 Y1 + b Y2 Y1 + d Y2 Z1 ) + r ( a' Z4 Y3 - b' Y4 Y3 - d' Y4 Z3 )
    P.add_term(expo8(1, 0, 0, 1, 0, 0, 0, 0), PolyQ::constant(-rp2 * a));
    P.add_term(expo8(1, 0, 1, 0, 0, 0, 0, 0), PolyQ::constant(rp2 * b));
    P.add_term(expo8(0, 1, 1, 0, 0, 0, 0, 0), PolyQ::constant(rp2 * d));
    P.add_term(expo8(0, 0, 0, 0, 1, 0, 0, 1), PolyQ::constant(rp * a2));
    P.add_term(expo8(0, 0, 0, 0, 1, 1, 0, 0), PolyQ::constant(-rp * b2));
    P.add_term(expo8(0, 0, 0, 0, 0, 1, 1, 0), PolyQ::constant(-rp * d2));
    if (P.is_zero()) throw degenerate_input("build_P_inf_quadratic: zero polynomial");
    return P;
}

bool survives_identification(const RelationPoly& P) {
    // Y1 -> Y3, Z1 -> Z3 (variables 0 -> 4, 1 -> 5)
    std::vector<int> perm{4, 5, 2, 3, 4, 5, 6, 7};
    return !P.renamed(perm).is_zero();
}

std::string RelationBundle::to_json() const {
    auto poly_json = [](const RelationPoly& p) {
        json terms = json::array();
        for (const auto& [e, c] : p.terms()) {
            json t;
            t["exponents"] = e;
            json cs = json::array();
            for (long i = 0; i <= c.degree(); ++i) cs.push_back(rat_to_string(c.coeff(i)));
            t["coefficient"] = cs;
            terms.push_back(t);
        }
        json out;
        out["variables"] = p.n_vars();
        out["degree"] = p.delta();
        out["terms"] = terms;
        return out;
    };
    json j;
    j["P_fin"] = poly_json(P_fin);
    if (P_inf) j["P_inf"] = poly_json(*P_inf);
    return j.dump(2);
}

RelationBundle RelationBundle::from_json(const std::string& text) {
    json j = json::parse(text);
    auto poly_from = [](const json& pj) {
        RelationPoly p(pj.at("variables").get<long>(), pj.at("degree").get<long>());
        for (const auto& t : pj.at("terms")) {
            std::vector<int> e = t.at("exponents").get<std::vector<int>>();
            std::vector<Rat> cs;
            for (const auto& s : t.at("coefficient")) cs.push_back(*rat_from_string(s.get<std::string>()));
            p.set_term(e, PolyQ(cs));
        }
        return p;
    };
    RelationBundle b;
    b.P_fin = poly_from(j.at("P_fin"));
    if (j.contains("P_inf")) b.P_inf = poly_from(j.at("P_inf"));
    return b;
}

VerifyReport multi_place_verify(const IsogenyPair& pair, const RelationBundle& bundle,
                                const std::vector<std::string>& places, long precision,
                                mpfr_prec_t bits) {
    if (!pair.populated)
        throw bad_parameter("multi_place_verify: scalars not populated");
    VerifyReport report;
    Rat radius = delta_s_radius();
    for (const std::string& place : places) {
        PlaceCheck pc;
        pc.place = place;
        if (place == "inf") {
            pc.admissible = abs(pair.s1) <= radius && abs(pair.s2) <= radius;
            if (!pc.admissible) {
                pc.detail = "curve parameter outside the archimedean disc";
                report.checks.push_back(pc);
                continue;
            }
            report.admissible_count++;
            PeriodMatrix P1 = period_matrix(CurvePoint(pair.s1), bits);
            PeriodMatrix P2 = period_matrix(CurvePoint(pair.s2), bits);
            RealBall a_ball = RealBall::exact(pair.a0, bits) *
                              RealBall::exact(Rat(pair.disc), bits).sqrt();
            RealBall lin = a_ball * P1.F_lattice -
                           RealBall::exact_int(pair.hp, bits) * P2.F_lattice;
            bool lin_ok = lin.contains_zero();
            // P_fin at the archimedean evaluations as well: one +-m factor
            // vanishes, so the product ball must contain zero
            ComplexBall y1(P1.F_lattice, RealBall(bits));
            ComplexBall y2(P2.F_lattice, RealBall(bits));
            ComplexBall pf = bundle.P_fin.eval_complex_points({y1, y2}, bits);
            bool pfin_ok = pf.contains_zero();
            bool pinf_ok = true;
            if (bundle.P_inf && bundle.P_inf->coefficients_constant() &&
                pair.disc == 1) {
                std::vector<ComplexBall> vals;
                ComplexBall g1(P1.G_lattice, RealBall(bits)), g2(P2.G_lattice, RealBall(bits));
                // single-pair layout: (Y1,Z1,Y2,Z2) from the pair, 3,4 mirror 1,2
                vals = {y1, g1, y2, g2, y1, g1, y2, g2};
                pinf_ok = bundle.P_inf->eval_complex_points(vals, bits).contains_zero();
            }
            pc.passed = lin_ok && pfin_ok && pinf_ok;
            pc.detail = std::string("linear relation ") + (lin_ok ? "ok" : "FAILED") +
                        "; P_fin " + (pfin_ok ? "ok" : "FAILED");
        } else if (place.rfind("p=", 0) == 0) {
            Int p(place.substr(2));
            bool v_ok = ord_p(pair.s1, p) >= 1 && ord_p(pair.s2, p) >= 1;
            bool disc_ok = pair.disc == 1 ||
                           (p % 2 == 1 && ord_p(Rat(pair.disc), p) == 0 &&
                            PadicNum::from_int(pair.disc, p, 2).is_square());
            pc.admissible = v_ok && disc_ok;
            if (!pc.admissible) {
                pc.detail = !v_ok ? "valuation below 1" : "sqrt(disc) has no embedding";
                report.checks.push_back(pc);
                continue;
            }
            report.admissible_count++;
            long D_need = precision + 4;
            long ser = D_need + 8;
            QSeries F = F_series(ser);
            PadicNum x1 = PadicNum::from_rat(pair.s1, p, precision + 8);
            PadicNum x2 = PadicNum::from_rat(pair.s2, p, precision + 8);
            PadicNum F1 = eval_padic(F, x1, precision);
            PadicNum F2 = eval_padic(F, x2, precision);
            // both embeddings of sqrt(disc)
            std::vector<PadicNum> embeddings;
            if (pair.disc == 1) {
                embeddings.push_back(PadicNum::from_int(1, p, precision));
            } else {
                PadicNum r = PadicNum::from_int(pair.disc, p, precision).sqrt();
                embeddings.push_back(r);
                embeddings.push_back(-r);
            }
            bool all_embeddings_ok = true;
            for (const PadicNum& sq : embeddings) {
                PadicNum a_p = PadicNum::from_rat(pair.a0, p, precision) * sq;
                std::vector<long> matches;
                for (const Int& m : divisors(pair.M)) {
                    for (int sign : {1, -1}) {
                        Int ms = sign * m;
                        PadicNum resid = a_p * F1 - PadicNum::from_int(ms, p, precision) * F2;
                        long common = std::min(resid.abs_precision(),
                                               std::min(F1.abs_precision(), F2.abs_precision()));
                        bool vanish = resid.is_zero() ? resid.zero_bound() >= common
                                                      : resid.valuation() >= common;
                        if (vanish) matches.push_back(static_cast<long>(ms.get_si()));
                    }
                }
                if (matches.size() == 1) {
                    pc.matched_m.push_back(matches[0]);
                } else {
                    all_embeddings_ok = false;
                    pc.detail += "embedding matched " + std::to_string(matches.size()) + " divisors; ";
                }
            }
            pc.passed = all_embeddings_ok && !pc.matched_m.empty();
            if (pc.passed)
                pc.detail = "one divisor per embedding";
        } else {
            pc.detail = "unrecognized place";
        }
        report.checks.push_back(pc);
    }
    if (report.admissible_count == 0)
        throw no_admissible_place("multi_place_verify: every place was filtered out");
    report.all_passed = true;
    for (const auto& c : report.checks)
        if (c.admissible && !c.passed) report.all_passed = false;
    return report;
}

}  // namespace gflab
