#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gflab/qseries.hpp"

using namespace gflab;

namespace {

QSeries from_ints(std::initializer_list<long> cs, long offset = 0) {
    std::vector<Rat> v;
    for (long c : cs) v.emplace_back(c);
    const long order = offset + static_cast<long>(v.size()) - 1;
    return QSeries(offset, order, std::move(v));
}

// independent oracle: compositional inverse by Lagrange inversion,
// g_n = (1/n) [X^{n-1}] (X/f)^n
QSeries lagrange_inverse(const QSeries& f) {
    long ord = f.order();
    QSeries xf = reciprocal(f).shifted(1);  // X/f(X), a unit power series
    std::vector<Rat> g(ord + 1);
    QSeries pw = QSeries::constant(1, ord);
    for (long n = 1; n <= ord; ++n) {
        pw = (pw * xf).truncated(ord - 1);
        if (n - 1 <= pw.order()) g[n] = pw.coeff(n - 1) / n;
    }
    return QSeries(0, ord, std::move(g));
}

QSeries random_integral_series(std::mt19937_64& rng, long order, long cmax, bool zero_const) {
    std::uniform_int_distribution<long> d(-cmax, cmax);
    std::vector<Rat> v(order + 1);
    for (long i = zero_const ? 1 : 0; i <= order; ++i) v[i] = Rat(d(rng));
    return QSeries(0, order, std::move(v));
}

}  // namespace

TEST_CASE("arith basics") {
    QSeries x = QSeries::x(4);
    CHECK(agree_to_common_order(x + QSeries::zero(4), x));

    QSeries a = from_ints({1, 1});
    QSeries b = from_ints({1, -1});
    QSeries p = a * b;
    CHECK(p.order() == 1);  // convolution certification: order 1 from two order-1 inputs
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 0);

    QSeries a2 = from_ints({1, 1, 0});
    QSeries b2 = from_ints({1, -1, 0});
    QSeries p2 = a2 * b2;
    CHECK(p2.order() == 2);
    CHECK(p2.coeff(2) == -1);

    QSeries s3 = from_ints({0, 1, 9, 28});
    QSeries m = Rat(-5) * s3;
    CHECK(m.coeff(1) == -5);
    CHECK(m.coeff(2) == -45);
    CHECK(m.coeff(3) == -140);
}

TEST_CASE("mul commutative and associative on random triples") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 20; ++iter) {
        QSeries a = random_integral_series(rng, 12, 50, false);
        QSeries b = random_integral_series(rng, 12, 50, false);
        QSeries c = random_integral_series(rng, 12, 50, false);
        CHECK(agree_to_common_order(a * b, b * a));
        CHECK(agree_to_common_order((a * b) * c, a * (b * c)));
    }
}

TEST_CASE("compose identity and quadratic example") {
    QSeries f = from_ints({7, 3, -2, 5});
    CHECK(agree_to_common_order(compose(f, QSeries::x(3)), f));

    // (X^2) o (X + X^2) = X^2 + 2X^3 + X^4
    QSeries x2 = QSeries::monomial(1, 2, 4);
    QSeries inner = from_ints({0, 1, 1, 0, 0});
    QSeries comp = compose(x2, inner);
    CHECK(comp.coeff(2) == 1);
    CHECK(comp.coeff(3) == 2);
    CHECK(comp.coeff(4) == 1);

    CHECK_THROWS_AS(compose(f, from_ints({1, 1, 1, 1})), nonzero_inner_constant);
}

TEST_CASE("compose preserves integrality (property)") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 15; ++iter) {
        QSeries f = random_integral_series(rng, 15, 30, false);
        QSeries g = random_integral_series(rng, 15, 30, true);
        CHECK(compose(f, g).is_integral());
    }
}

TEST_CASE("sqrt_one") {
    CHECK(agree_to_common_order(sqrt_one(QSeries::constant(1, 5)), QSeries::constant(1, 5)));

    // binomial-series oracle for (1+4X)^(1/2): 1 + sum (-1)^(n+1) (2/n) C(2n-2,n-1) X^n
    long N = 12;
    std::vector<Rat> bin(N + 1);
    bin[0] = 1;
    for (long n = 1; n <= N; ++n) {
        Rat c = Rat(2) * Rat(binomial(2 * n - 2, n - 1), Int(n));
        c.canonicalize();
        bin[n] = (n % 2 == 1) ? c : -c;
    }
    QSeries oracle(0, N, bin);
    QSeries f = from_ints({1, 4});
    QSeries s = sqrt_one(QSeries(0, N, [&] {
        std::vector<Rat> v(N + 1);
        v[0] = 1; v[1] = 4;
        return v;
    }()));
    CHECK(agree_to_common_order(s, oracle));
    CHECK(s.coeff(1) == 2);
    CHECK(s.coeff(2) == -2);
    CHECK(s.coeff(3) == 4);
    CHECK(s.coeff(4) == -10);
    CHECK(s.coeff(5) == 28);
    CHECK(s.is_integral());

    // (1+X)^2 back to 1+X
    QSeries sq = from_ints({1, 2, 1});
    CHECK(agree_to_common_order(sqrt_one(sq), from_ints({1, 1, 0})));

    CHECK_THROWS_AS(sqrt_one(from_ints({2, 1})), bad_constant_term);
}

TEST_CASE("sqrt_one squared returns input (property)") {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 15; ++iter) {
        QSeries f = random_integral_series(rng, 14, 20, true) + QSeries::constant(1, 14);
        QSeries s = sqrt_one(f);
        CHECK(agree_to_common_order(s * s, f));
    }
}

TEST_CASE("reciprocal") {
    QSeries r = reciprocal(from_ints({1, 1, 0, 0}));
    CHECK(r.coeff(0) == 1);
    CHECK(r.coeff(1) == -1);
    CHECK(r.coeff(2) == 1);
    CHECK(r.coeff(3) == -1);

    // brute-force convolution oracle for 1/E4 prefix
    QSeries e4 = from_ints({1, 240, 2160});
    QSeries inv = reciprocal(e4);
    CHECK(inv.coeff(0) == 1);
    CHECK(inv.coeff(1) == -240);
    CHECK(inv.coeff(2) == 55440);
    CHECK(agree_to_common_order(e4 * inv, QSeries::constant(1, 2)));

    CHECK_THROWS_AS(reciprocal(QSeries::zero(5)), zero_leading_coefficient);
}

TEST_CASE("reciprocal of Laurent series") {
    // j-like: q^-1 + 744 + 196884 q; long-division oracle gives 1/j = q - 744 q^2 + ...
    QSeries j = from_ints({1, 744, 196884, 21493760}, -1);
    QSeries invj = reciprocal(j);
    CHECK(invj.valuation() == 1);
    CHECK(invj.coeff(1) == 1);
    CHECK(invj.coeff(2) == -744);
    CHECK(invj.coeff(3) == Rat(744) * 744 - 196884);  // 356652
    CHECK(agree_to_common_order(j * invj, QSeries::constant(1, 10)));
}

TEST_CASE("derivative") {
    CHECK(derivative(QSeries::constant(5, 4)).is_zero());
    QSeries d = derivative(from_ints({0, 1, 744}));
    CHECK(d.coeff(0) == 1);
    CHECK(d.coeff(1) == 1488);
    // Laurent: d/dX (X^-1) = -X^-2
    QSeries l = derivative(from_ints({3, 0, 5}, -1));
    CHECK(l.coeff(-2) == -3);
    CHECK(l.coeff(0) == 5);
}

TEST_CASE("comp_inverse") {
    CHECK(agree_to_common_order(comp_inverse(QSeries::x(6)), QSeries::x(6)));

    // Catalan numbers from X - X^2 (Lagrange-inversion oracle cross-check)
    QSeries f = from_ints({0, 1, -1, 0, 0, 0, 0});
    QSeries g = comp_inverse(f);
    CHECK(g.coeff(1) == 1);
    CHECK(g.coeff(2) == 1);
    CHECK(g.coeff(3) == 2);
    CHECK(g.coeff(4) == 5);
    CHECK(g.coeff(5) == 14);
    CHECK(agree_to_common_order(g, lagrange_inverse(f)));

    CHECK_THROWS_AS(comp_inverse(from_ints({1, 1})), not_invertible);
    CHECK_THROWS_AS(comp_inverse(from_ints({0, 0, 1})), not_invertible);
}

TEST_CASE("comp_inverse round trips against Newton on random units (property)") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 10; ++iter) {
        QSeries f = random_integral_series(rng, 16, 25, true);
        // force f'(0) = +-1 so the inverse stays integral
        std::vector<Rat> v(17);
        for (long i = 2; i <= 16; ++i) v[i] = f.coeff(i);
        v[1] = (iter % 2) ? 1 : -1;
        f = QSeries(0, 16, v);
        QSeries g = comp_inverse(f);
        CHECK(g.is_integral());
        CHECK(agree_to_common_order(compose(f, g), QSeries::x(16)));
        CHECK(agree_to_common_order(compose(g, f), QSeries::x(16)));
        CHECK(agree_to_common_order(g, lagrange_inverse(f)));
    }
}

TEST_CASE("chain rule: d/dX (inv_j o theta) = 1") {
    // small synthetic stand-in: f = X - 3X^2 + X^3, theta = f^{-1}
    QSeries f = from_ints({0, 1, -3, 1, 0, 0, 0, 0});
    QSeries th = comp_inverse(f);
    QSeries lhs = derivative(compose(f, th));
    CHECK(lhs.coeff(0) == 1);
    for (long n = 1; n <= lhs.order(); ++n) CHECK(lhs.coeff(n) == 0);
}

TEST_CASE("cache round trip is bit exact") {
    std::vector<Rat> v{Rat(-3, 7), Rat(0), Rat(22), Rat(5, 2)};
    QSeries s(-1, 2, v);
    std::stringstream ss;
    write_series(ss, s);
    CHECK(ss.str().substr(0, 28) == "QSERIES v1 offset=-1 order=2");
    QSeries t = read_series(ss);
    CHECK(t.offset() == s.offset());
    CHECK(t.order() == s.order());
    for (long n = s.offset(); n <= s.order(); ++n) CHECK(t.coeff(n) == s.coeff(n));

    std::stringstream bad("QSERIES v1 offset=0 order=1\n1/2\n");
    CHECK_THROWS_AS(read_series(bad), series_parse_error);
}

TEST_CASE("truncation is tracked, never widened") {
    QSeries a = from_ints({1, 2, 3});
    QSeries b = from_ints({1, 1, 1, 1, 1});
    CHECK((a + b).order() == 2);
    CHECK((a * b).order() == 2);
    CHECK(compose(b, from_ints({0, 1, 1})).order() == 2);
}
