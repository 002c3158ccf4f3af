#include "gflab/ratrec.hpp"

namespace gflab {

std::optional<Rat> reconstruct_rational(const RealBall& x, const Int& den_bound) {
    if (!x.is_finite()) return std::nullopt;
    Rat mid = x.mid_as_rat();
    // continued fraction of the exact dyadic midpoint
    Int num = mid.get_num(), den = mid.get_den();
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Int a, r;
    bool neg = num < 0;
    if (neg) num = -num;
    for (int steps = 0; steps < 20000; ++steps) {
        if (den == 0) break;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > den_bound) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Rat cand(neg ? -p1 : p1, q1);
        cand.canonicalize();
        if (x.contains(cand)) return cand;
        num = den;
        den = r;
    }
    return std::nullopt;
}

std::optional<Rat> reconstruct_rational_checked(const RealBall& x, const Int& den_bound,
                                                const std::function<RealBall()>& recompute) {
    auto cand = reconstruct_rational(x, den_bound);
    if (!cand) return std::nullopt;
    RealBall refined = recompute();
    if (!refined.contains(*cand)) return std::nullopt;
    return cand;
}

}  // namespace gflab
