#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gflab/heights.hpp"
#include "gflab/hensel.hpp"
#include "gflab/ode_guess.hpp"
#include "gflab/place_eval.hpp"
#include "gflab/qexp.hpp"
#include "gflab/relations.hpp"

using namespace gflab;

TEST_CASE("find_ode: geometric series") {
    std::vector<Rat> v(40, Rat(1));
    QSeries geo(0, 39, v);
    auto ode = find_ode(geo, 1, 1, 10);
    REQUIRE(ode.has_value());
    CHECK(ode->order == 1);
    CHECK(ode->x_degree() <= 1);
    CHECK(apply_ode(*ode, geo).is_zero());
    // (1-X) f' - f = 0 up to normalization
    Rat g10 = ode->gamma[1].coeff(0), g11 = ode->gamma[1].coeff(1), g00 = ode->gamma[0].coeff(0);
    CHECK(g10 == -g11);
    CHECK(g00 == g11);
}

TEST_CASE("find_ode: exponential") {
    std::vector<Rat> v(40);
    v[0] = 1;
    for (long n = 1; n <= 39; ++n) {
        v[n] = v[n - 1] / n;
    }
    QSeries e(0, 39, v);
    auto ode = find_ode(e, 2, 1, 10);
    REQUIRE(ode.has_value());
    CHECK(ode->order == 1);
    CHECK(ode->x_degree() == 0);
    CHECK(ode->gamma[1].coeff(0) == 1);
    CHECK(ode->gamma[0].coeff(0) == -1);
}

TEST_CASE("find_ode: F satisfies a second-order operator") {
    QSeries F = F_series(220);
    auto ode = find_ode(F, 3, 12, 50);
    REQUIRE(ode.has_value());
    CHECK(ode->order == 2);
    // held-out certification: every known coefficient is annihilated, and a
    // longer regeneration still is
    CHECK(apply_ode(*ode, F).is_zero());
    QSeries F2 = F_series(280);
    CHECK(apply_ode(*ode, F2).is_zero());

    CHECK_THROWS_AS(find_ode(F_series(20), 3, 12, 50), insufficient_coefficients);
}

TEST_CASE("planted functional relation is recovered") {
    QSeries F = F_series(80);
    QSeries onepx(0, 80, [] {
        std::vector<Rat> v(81);
        v[0] = 1;
        v[1] = 1;
        return v;
    }());
    QSeries y2 = onepx * F;
    auto rels = find_functional_relations({F, y2}, 1, 1);
    REQUIRE(rels.size() == 1);
    const RelationPoly& r = rels[0];
    CHECK(r.apply_to_series({F, y2}).is_zero());
    // (1+X) Y1 - Y2 up to scalar
    PolyQ c1 = r.terms().at({1, 0});
    PolyQ c2 = r.terms().at({0, 1});
    CHECK(c1 == Rat(-1) * (c2 * PolyQ({Rat(1), Rat(1)})));
}

TEST_CASE("duplicated series give Y1 - Y2") {
    QSeries F = F_series(40);
    auto rels = find_functional_relations({F, F}, 1, 0);
    REQUIRE(rels.size() == 1);
    PolyQ c1 = rels[0].terms().at({1, 0});
    PolyQ c2 = rels[0].terms().at({0, 1});
    CHECK(c1 == Rat(-1) * c2);
}

TEST_CASE("F alone admits no low-degree rational-function relation") {
    QSeries F = F_series(60);
    auto rels = find_functional_relations({F}, 1, 10);
    CHECK(rels.empty());  // certified for the finite system by full rank
}

TEST_CASE("specialize_relation") {
    RelationPoly rel(2, 1);
    rel.set_term({1, 0}, PolyQ({Rat(1), Rat(1)}));   // (1+X) Y1
    rel.set_term({0, 1}, PolyQ::constant(Rat(-1)));  // -Y2
    auto sp = specialize_relation(rel, Rat(1));
    CHECK(sp.safe);
    CHECK(sp.specialized.terms().at({1, 0}).coeff(0) == 2);
    CHECK(sp.specialized.terms().at({0, 1}).coeff(0) == -1);

    RelationPoly degen(2, 1);
    degen.set_term({1, 0}, PolyQ({Rat(0), Rat(1)}));
    degen.set_term({0, 1}, PolyQ({Rat(0), Rat(-1)}));
    auto sp0 = specialize_relation(degen, Rat(0));
    CHECK(!sp0.safe);
    CHECK(sp0.specialized.is_zero());
}

TEST_CASE("specialized planted relation annihilates place evaluations") {
    QSeries F = F_series(90);
    QSeries onepx(0, 90, [] {
        std::vector<Rat> v(91);
        v[0] = 1;
        v[1] = 1;
        return v;
    }());
    QSeries y2 = onepx * F;
    auto rels = find_functional_relations({F, y2}, 1, 1);
    REQUIRE(rels.size() == 1);

    // archimedean at xi = 1/2000 (inside the 1/1728 disc of convergence)
    Rat xi(1, 2000);
    auto sp = specialize_relation(rels[0], xi);
    CHECK(sp.safe);
    auto ev1 = eval_complex(F, ComplexBall::exact(xi, 0, 256), 256, CoeffBound{Rat(2), Rat(1, 1728)});
    // y2 = (1+X) F has the same radius of convergence; bound its coefficients
    auto ev2 = eval_complex(y2, ComplexBall::exact(xi, 0, 256), 256, CoeffBound{Rat(4), Rat(1, 1728)});
    ComplexBall res = sp.specialized.eval_complex_points({ev1.value, ev2.value}, 256);
    CHECK(res.contains_zero());

    // 5-adic at xi = 5
    Rat xi5(5);
    auto sp5 = specialize_relation(rels[0], xi5);
    CHECK(sp5.safe);
    Int p(5);
    PadicNum x5 = PadicNum::from_rat(xi5, p, 40);
    PadicNum f5 = eval_padic(F, x5, 40);
    PadicNum y25 = eval_padic(y2, x5, 40);
    PadicNum r5 = sp5.specialized.eval_padic_points({f5, y25}, 40);
    CHECK((r5.is_zero() || r5.valuation() >= 38));
}

TEST_CASE("weil heights") {
    CHECK(weil_height(Rat(2, 3)).contains(Rat(0)) == false);
    RealBall h = weil_height(Rat(2, 3));
    // log 3
    RealBall log3 = RealBall::exact_int(3, 256).log();
    CHECK((h - log3).contains_zero());
    CHECK(weil_height(Rat(1)).contains(Rat(0)));
    CHECK(weil_height(Rat(0)).contains(Rat(0)));

    // golden ratio: h = (1/2) log phi = 0.2406059125...
    RealBall hphi = weil_height_minpoly({Int(-1), Int(-1), Int(1)});
    CHECK(hphi.mid_d() == doctest::Approx(0.24060591252980172).epsilon(1e-13));
    CHECK(hphi.rad_d() < 1e-13);
    // independent identity: exp(2h) must be a root of x^2 - x - 1
    RealBall x = (hphi + hphi).exp();
    RealBall resid = x * x - x - RealBall::exact_int(1, 256);
    CHECK(resid.contains_zero());

    CHECK_THROWS_AS(weil_height_minpoly({Int(2), Int(4)}), not_primitive);
    CHECK_THROWS_AS(weil_height_minpoly({Int(1), Int(0)}), not_primitive);
}

TEST_CASE("height power rule on rationals") {
    for (long n = 1; n <= 4; ++n) {
        Rat x(3, 5);
        Int pn = pow_int(Int(3), n), qn = pow_int(Int(5), n);
        RealBall hn = weil_height_minpoly({-pn, qn});
        RealBall href = weil_height(x);
        RealBall diff = hn - RealBall::exact_int(n, 256) * href;
        CHECK(diff.contains_zero());
    }
}

TEST_CASE("divisor counting and the N^eps scan") {
    CHECK(divisor_count(Int(1)) == 1);
    CHECK(divisor_count(Int(12)) == 6);
    CHECK(divisor_count_small(12) == 6);
    CHECK(divisors(Int(12)).size() == 6);

    auto rep = check_divisor_bound(Rat(1, 2), 100000);
    CHECK(rep.argmax == 12);
    CHECK(rep.d_argmax == 6);
    CHECK(rep.max_ratio == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("hensel series") {
    // P = Y - X
    BiPoly lin(1, 1);
    lin.at(1, 0) = -1;
    lin.at(0, 1) = 1;
    QSeries y = hensel_series(lin, Rat(0), 10);
    CHECK(agree_to_common_order(y, QSeries::x(10)));

    // P = Y^2 - (1+4X): the integral square-root branch at y0 = 1
    BiPoly sq(1, 2);
    sq.at(0, 2) = 1;
    sq.at(0, 0) = -1;
    sq.at(1, 0) = -4;
    QSeries r = hensel_series(sq, Rat(1), 16);
    QSeries oracle = sqrt_one(QSeries(0, 16, [] {
        std::vector<Rat> v(17);
        v[0] = 1;
        v[1] = 4;
        return v;
    }()));
    CHECK(agree_to_common_order(r, oracle));
    CHECK(eisenstein_profile(r).all_integral);

    // P = Y^2 + Y - X: signed Catalan numbers
    BiPoly cat(1, 2);
    cat.at(0, 2) = 1;
    cat.at(0, 1) = 1;
    cat.at(1, 0) = -1;
    QSeries c = hensel_series(cat, Rat(0), 6);
    CHECK(c.coeff(1) == 1);
    CHECK(c.coeff(2) == -1);
    CHECK(c.coeff(3) == 2);
    CHECK(c.coeff(4) == -5);
    CHECK(c.coeff(5) == 14);

    // singular branch: P = Y^2 - X at y0 = 0
    BiPoly sing(1, 2);
    sing.at(0, 2) = 1;
    sing.at(1, 0) = -1;
    CHECK_THROWS_AS(hensel_series(sing, Rat(0), 5), singular_branch);

    // denominator profile: 3Y^2 + 2Y - X has a 2-power ladder
    BiPoly den(1, 2);
    den.at(0, 2) = 3;
    den.at(0, 1) = 2;
    den.at(1, 0) = -1;
    QSeries yd = hensel_series(den, Rat(0), 12);
    CHECK(!yd.is_integral());
    auto prof = eisenstein_profile(yd);
    for (long n = 1; n <= 12; ++n) {
        Rat scaled = Rat(prof.D) * pow_rat(Rat(prof.d), n) * yd.coeff(n);
        CHECK(is_integer(scaled));
    }
}
