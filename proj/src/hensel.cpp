#include "gflab/hensel.hpp"

#include <map>

namespace gflab {

Rat BiPoly::eval(const Rat& x, const Rat& y) const {
    Rat acc;
    for (long j = yd_; j >= 0; --j) {
        Rat row;
        for (long i = xd_; i >= 0; --i) row = row * x + Rat(at(i, j));
        acc = acc * y + row;
    }
    return acc;
}

BiPoly BiPoly::dY() const {
    if (yd_ == 0) return BiPoly(xd_, 0);
    BiPoly out(xd_, yd_ - 1);
    for (long i = 0; i <= xd_; ++i)
        for (long j = 1; j <= yd_; ++j) out.at(i, j - 1) = Int(j) * at(i, j);
    return out;
}

QSeries BiPoly::eval_series(const QSeries& y) const {
    const long ord = y.order();
    QSeries acc = QSeries::zero(ord);
    for (long j = yd_; j >= 0; --j) {
        acc = (acc * y).truncated(ord);
        std::vector<Rat> row(ord + 1);
        for (long i = 0; i <= std::min(xd_, ord); ++i) row[i] = Rat(at(i, j));
        acc = acc + QSeries(0, ord, std::move(row));
    }
    return acc;
}

QSeries hensel_series(const BiPoly& P, const Rat& y0, long order) {
    if (P.eval(Rat(0), y0) != 0)
        throw std::invalid_argument("hensel_series: P(0, y0) != 0");
    BiPoly Py = P.dY();
    if (Py.eval(Rat(0), y0) == 0) throw singular_branch();

    // Newton iteration doubling the certified order
    long cur = 1;
    QSeries y = QSeries::constant(y0, 1);
    while (true) {
        QSeries num = P.eval_series(y).tight();
        QSeries den = Py.eval_series(y);
        y = (y - num * reciprocal(den)).truncated(cur);
        if (cur >= order) break;
        cur = std::min(2 * cur, order);
        // re-expand the window
        std::vector<Rat> v(cur + 1);
        for (long n = 0; n <= y.order(); ++n) v[n] = y.coeff(n);
        y = QSeries(0, cur, std::move(v));
    }
    return y.truncated(order);
}

EisensteinProfile eisenstein_profile(const QSeries& y) {
    EisensteinProfile prof;
    prof.D = 1;
    prof.d = 1;
    if (y.is_integral()) {
        prof.all_integral = true;
        return prof;
    }
    // per-prime linear fit of the denominator valuations: v_l(den(a_n)) is
    // bounded by alpha_l + beta_l * n; take the minimal beta then alpha
    std::map<Int, long> beta, alpha;
    for (long n = std::max(1L, y.offset()); n <= y.order(); ++n) {
        Int den = Int(y.coeff(n).get_den());
        if (den == 1) continue;
        Int rem = den;
        for (Int p = 2; p * p <= rem; ++p) {
            if (rem % p == 0) {
                long v = 0;
                while (rem % p == 0) { rem /= p; ++v; }
                long need_beta = (v + n - 1) / n;
                if (beta[p] < need_beta) beta[p] = need_beta;
            }
        }
        if (rem > 1) {
            long need_beta = 1;  // v = 1 here
            if (beta[rem] < need_beta) beta[rem] = need_beta;
        }
    }
    // alpha picks up what beta*n misses
    for (long n = std::max(1L, y.offset()); n <= y.order(); ++n) {
        Int den = Int(y.coeff(n).get_den());
        for (auto& [p, b] : beta) {
            long v = den % p == 0 ? ord_p(den, p) : 0;
            long excess = v - b * n;
            if (excess > alpha[p]) alpha[p] = excess;
        }
    }
    for (auto& [p, b] : beta) prof.d *= pow_int(p, b);
    for (auto& [p, a] : alpha)
        if (a > 0) prof.D *= pow_int(p, a);
    // constant term's denominator goes into D as well
    if (y.offset() <= 0 && y.order() >= 0) {
        Int d0 = Int(y.coeff(0).get_den());
        mpz_lcm(prof.D.get_mpz_t(), prof.D.get_mpz_t(), d0.get_mpz_t());
    }
    return prof;
}

}  // namespace gflab
