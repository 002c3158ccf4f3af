#include "gflab/modpoly.hpp"

#include "gflab/qexp.hpp"

namespace gflab {

bool ModularPolynomial::symmetric() const {
    for (long i = 0; i <= bidegree; ++i)
        for (long k = i + 1; k <= bidegree; ++k)
            if (c[i][k] != c[k][i]) return false;
    return true;
}

Rat ModularPolynomial::eval(const Rat& x, const Rat& y) const {
    Rat acc;
    for (long i = bidegree; i >= 0; --i) {
        Rat row;
        for (long k = bidegree; k >= 0; --k) row = row * y + Rat(c[i][k]);
        acc = acc * x + row;
    }
    return acc;
}

QSeries substitute_power(const QSeries& f, long M) {
    long off = M * f.offset();
    long ord = M * f.order() + M - 1;
    std::vector<Rat> v(ord - off + 1);
    for (long n = f.offset(); n <= f.order(); ++n) v[M * n - off] = f.coeff(n);
    return QSeries(off, ord, std::move(v));
}

namespace {

// g with g_n = f_{M n}
QSeries extract_arithmetic(const QSeries& f, long M) {
    long off = f.offset() >= 0 ? (f.offset() + M - 1) / M : f.offset() / M;
    long ord = f.order() >= 0 ? f.order() / M : (f.order() - M + 1) / M;
    if (ord < off) return QSeries(off, off - 1, {});
    std::vector<Rat> v(ord - off + 1);
    for (long n = off; n <= ord; ++n) v[n - off] = f.coeff(M * n);
    return QSeries(off, ord, std::move(v));
}

}  // namespace

// the deepest pole among the power sums is M*(M+1) (from j(q^M)^(M+1)); the
// Laurent window must clear it with room, and the extraction step reads
// j-power coefficients up to M times the window
long modular_polynomial_order_requirement(long M) { return M * (M * (M + 1) + 20); }

ModularPolynomial modular_polynomial(long M, long order) {
    if (M != 2 && M != 3 && M != 5 && M != 7)
        throw std::invalid_argument("modular_polynomial: prime level in {2,3,5,7} required");
    const long need = modular_polynomial_order_requirement(M);
    if (order < need)
        throw insufficient_order("modular_polynomial: generation order " + std::to_string(order) +
                                 " below requirement " + std::to_string(need));

    const long deg = M + 1;               // bidegree for prime level
    const long window = M * deg + 12;     // q-orders retained for the symmetric functions
    QSeries j = j_series(order);

    // powers of j as Laurent series
    std::vector<QSeries> jt;
    jt.push_back(QSeries::constant(1, order));
    for (long t = 1; t <= deg; ++t) jt.push_back(jt.back() * j);

    // power sums of the conjugates: p_t = j(q^M)^t + M * (every M-th
    // coefficient of j^t, reindexed)
    std::vector<QSeries> psum(deg + 1, QSeries());
    for (long t = 1; t <= deg; ++t) {
        QSeries d1 = substitute_power(jt[t], M).truncated(window);
        QSeries d2 = Rat(M) * extract_arithmetic(jt[t], M).truncated(window);
        psum[t] = (d1 + d2).truncated(window);
    }

    // Newton's identities
    std::vector<QSeries> e(deg + 1, QSeries());
    e[0] = QSeries::constant(1, window);
    for (long k = 1; k <= deg; ++k) {
        QSeries acc = QSeries::zero(window);
        for (long i = 1; i <= k; ++i) {
            QSeries term = (e[k - i] * psum[i]).truncated(window);
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        e[k] = Rat(1, k) * acc;
    }

    // rewrite each e_k as an integer polynomial in j by pole peeling
    ModularPolynomial phi;
    phi.level = M;
    phi.bidegree = deg;
    phi.c.assign(deg + 1, std::vector<Int>(deg + 1));
    for (long k = 0; k <= deg; ++k) {
        QSeries rem = k == 0 ? QSeries::constant(1, window) : e[k];
        std::vector<Int> as_j(deg + 1);
        for (long step = 0; step <= deg + 1; ++step) {
            long v = rem.valuation();
            if (v > 0 || rem.is_zero()) break;
            long jdeg = -v;
            if (v == 0) jdeg = 0;
            if (jdeg > deg)
                throw std::logic_error("modular_polynomial: pole order exceeds the bidegree");
            Rat lead = rem.coeff(v);
            if (!is_integer(lead))
                throw std::logic_error("modular_polynomial: non-integer coefficient in peeling");
            as_j[jdeg] = Int(lead.get_num());
            rem = rem - lead * jt[jdeg].truncated(window);
        }
        if (!rem.is_zero())
            throw insufficient_order("modular_polynomial: nonzero residual after peeling; raise the order");
        long i = deg - k;  // e_k multiplies (-1)^k X^{deg-k}
        for (long d = 0; d <= deg; ++d) phi.c[i][d] = (k % 2 == 0) ? as_j[d] : -as_j[d];
    }

    if (!phi.symmetric()) throw std::logic_error("modular_polynomial: symmetry check failed");
    QSeries resid = modular_annihilation_residual(phi, std::min<long>(order - 3 * deg, 120));
    if (!resid.is_zero()) throw std::logic_error("modular_polynomial: q-expansion check failed");
    return phi;
}

QSeries modular_annihilation_residual(const ModularPolynomial& phi, long order) {
    const long deg = phi.bidegree;
    const long M = phi.level;
    // generous working order so the certified result reaches `order`
    long work = order + deg * (M + 1) + 4;
    QSeries j = j_series(work);
    QSeries jM = substitute_power(j, M);
    std::vector<QSeries> xi, yk;
    xi.push_back(QSeries::constant(1, work));
    yk.push_back(QSeries::constant(1, work));
    for (long t = 1; t <= deg; ++t) {
        xi.push_back(xi.back() * j);
        yk.push_back(yk.back() * jM);
    }
    QSeries acc = QSeries::zero(order);
    for (long i = 0; i <= deg; ++i)
        for (long k = 0; k <= deg; ++k) {
            if (phi.c[i][k] == 0) continue;
            acc = acc + Rat(phi.c[i][k]) * (xi[i] * yk[k]).truncated(order);
        }
    acc = acc.truncated(order);
    if (acc.order() < order)
        throw insufficient_order("annihilation residual certified only to order " +
                                 std::to_string(acc.order()));
    return acc;
}

}  // namespace gflab
