#include "gflab/place_eval.hpp"

#include <random>

namespace gflab {

RadiusBound r_dagger(const QSeries& f, const Int& p) {
    if (!f.is_power_series()) throw std::domain_error("r_dagger: Laurent input");
    RadiusBound rb;
    bool any = false;
    for (long n = 1; n <= f.order(); ++n)
        if (f.coeff(n) != 0) { any = true; break; }
    if (!any) {
        rb.no_constraint = true;
        rb.certified = true;
        rb.basis = RadiusBound::Basis::integral_coefficients;
        return rb;
    }
    if (f.is_integral()) {
        rb.lower = 1;
        rb.certified = true;
        rb.basis = RadiusBound::Basis::integral_coefficients;
        return rb;
    }
    // truncation-based estimate: min over known n of |a_n|_p^{-1/n},
    // rounded down to the nearest integer power of p
    bool first = true;
    Rat best;
    for (long n = 1; n <= f.order(); ++n) {
        const Rat& a = f.coeff(n);
        if (a == 0) continue;
        long v = ord_p(a, p);
        // |a_n|^{-1/n} = p^{v/n}; floor the exponent
        long e = v >= 0 ? v / n : -((-v + n - 1) / n);
        Rat cand = pow_rat(Rat(p), e);
        if (first || cand < best) { best = cand; first = false; }
    }
    rb.lower = best;
    rb.certified = false;
    rb.basis = RadiusBound::Basis::empirical;
    return rb;
}

PadicNum eval_padic(const QSeries& f, const PadicNum& x, long target_precision,
                    bool integral_override) {
    if (!f.is_power_series()) throw std::domain_error("eval_padic: Laurent input");
    if (!f.is_integral() && !integral_override)
        throw uncertified_tail("eval_padic: series not integral and no tail certificate supplied");
    const Int& p = x.prime();
    if (x.is_zero()) {
        // x = O(p^b) with b >= 1 still evaluates: tail beyond the constant
        // term is O(p^b)
        if (x.zero_bound() < 1) throw not_in_radius();
        PadicNum c0 = PadicNum::from_rat(f.order() >= 0 ? f.coeff(0) : Rat(0), p, target_precision);
        return c0 + PadicNum::zero(p, std::min(target_precision, x.zero_bound()));
    }
    long v = x.valuation();
    if (v < 1) throw not_in_radius();
    // truncation degree: terms beyond D contribute O(p^{(D+1)v})
    long D = std::max(0L, (target_precision + v - 1) / v - 1);
    if (f.order() < D)
        throw insufficient_coefficients("eval_padic: need series order >= " + std::to_string(D));
    PadicNum acc = PadicNum::zero(p, target_precision);
    PadicNum xq = x.with_precision(target_precision);
    for (long n = D; n >= 0; --n) {
        acc = acc * xq + PadicNum::from_rat(f.coeff(n), p, target_precision);
    }
    // the truncated tail
    return acc + PadicNum::zero(p, std::min(target_precision, (D + 1) * v));
}

namespace {

RealEval eval_real_impl(const QSeries& f, const RealBall& x, mpfr_prec_t prec,
                        std::optional<CoeffBound> bound) {
    if (!f.is_power_series()) throw std::domain_error("eval_real: Laurent input");
    RealEval out;
    RealBall ax = x.abs_upper_bound();
    if (mpfr_zero_p(x.mid()) && mpfr_zero_p(x.rad())) {
        out.value = RealBall::exact(f.order() >= 0 ? f.coeff(0) : Rat(0), prec);
        out.certified = true;
        return out;
    }
    CoeffBound cb;
    bool certified;
    if (bound) {
        cb = *bound;
        certified = true;
        // the certificate must majorize every known coefficient
        for (long n = 0; n <= f.order(); ++n) {
            const Rat& a = f.coeff(n);
            if (a == 0) continue;
            Rat lim = cb.C * pow_rat(cb.rho, -n);
            if (abs(a) > lim)
                throw uncertified_tail("eval: supplied coefficient bound is violated by a known coefficient");
        }
    } else {
        if (!f.is_integral())
            throw uncertified_tail("eval: non-integral series and no coefficient bound");
        Rat mx(1);
        for (long n = 0; n <= f.order(); ++n)
            if (abs(f.coeff(n)) > mx) mx = abs(f.coeff(n));
        cb.C = 2 * mx;  // heuristic safety factor; result flagged uncertified
        cb.rho = 1;
        certified = false;
    }
    // require |x| < rho with some room
    RealBall rho = RealBall::exact(cb.rho, prec);
    RealBall t = ax / rho;  // point ball
    RealBall one = RealBall::exact_int(1, prec);
    if (!(one - t).definitely_positive()) throw not_in_radius();

    long D = f.order();
    RealBall acc(prec);
    for (long n = D; n >= 0; --n) {
        acc = acc * x;
        if (f.coeff(n) != 0) acc = acc + RealBall::exact(f.coeff(n), prec);
    }
    // tail: C t^{D+1}/(1-t), computed on upper bounds
    mpfr_t e;
    mpfr_init2(e, prec);
    mpfr_pow_ui(e, t.mid(), static_cast<unsigned long>(D + 1), MPFR_RNDU);
    RealBall tpow = RealBall::from_endpoints(e, e, prec);
    mpfr_clear(e);
    RealBall tail = (RealBall::exact(cb.C, prec) * tpow) / (one - t);
    acc.add_error(tail);
    out.value = acc;
    out.certified = certified;
    return out;
}

}  // namespace

RealEval eval_real(const QSeries& f, const RealBall& x, mpfr_prec_t prec,
                   std::optional<CoeffBound> bound) {
    return eval_real_impl(f, x, prec, bound);
}

ComplexEval eval_complex(const QSeries& f, const ComplexBall& x, mpfr_prec_t prec,
                         std::optional<CoeffBound> bound) {
    if (!f.is_power_series()) throw std::domain_error("eval_complex: Laurent input");
    ComplexEval out;
    if (mpfr_zero_p(x.re_mid()) && mpfr_zero_p(x.im_mid()) && mpfr_zero_p(x.rad())) {
        out.value = ComplexBall::exact(f.order() >= 0 ? f.coeff(0) : Rat(0), 0, prec);
        out.certified = true;
        return out;
    }
    CoeffBound cb;
    bool certified;
    if (bound) {
        cb = *bound;
        certified = true;
        for (long n = 0; n <= f.order(); ++n) {
            const Rat& a = f.coeff(n);
            if (a == 0) continue;
            if (abs(a) > cb.C * pow_rat(cb.rho, -n))
                throw uncertified_tail("eval: supplied coefficient bound is violated by a known coefficient");
        }
    } else {
        if (!f.is_integral())
            throw uncertified_tail("eval: non-integral series and no coefficient bound");
        Rat mx(1);
        for (long n = 0; n <= f.order(); ++n)
            if (abs(f.coeff(n)) > mx) mx = abs(f.coeff(n));
        cb.C = 2 * mx;
        cb.rho = 1;
        certified = false;
    }
    RealBall ax = x.abs_upper();
    RealBall rho = RealBall::exact(cb.rho, prec);
    RealBall t = ax / rho;
    RealBall one = RealBall::exact_int(1, prec);
    if (!(one - t).definitely_positive()) throw not_in_radius();

    ComplexBall acc(prec);
    for (long n = f.order(); n >= 0; --n) {
        acc = acc * x;
        if (f.coeff(n) != 0) acc = acc + ComplexBall::exact(f.coeff(n), 0, prec);
    }
    mpfr_t e;
    mpfr_init2(e, prec);
    mpfr_pow_ui(e, t.mid(), static_cast<unsigned long>(f.order() + 1), MPFR_RNDU);
    RealBall tpow = RealBall::from_endpoints(e, e, prec);
    mpfr_clear(e);
    RealBall tail = (RealBall::exact(cb.C, prec) * tpow) / (one - t);
    acc.add_error(tail);
    out.value = acc;
    out.certified = certified;
    return out;
}

NonarchReport check_nonarch_lemmas(const Int& p, int samples, uint64_t seed) {
    NonarchReport rep;
    rep.prime = p;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coeff(-1000, 1000);
    std::uniform_int_distribution<long> vdist(1, 3);
    std::uniform_int_distribution<long> udist(1, 1 << 20);
    const long order = 44;
    const long K = 40;
    for (int it = 0; it < samples; ++it) {
        std::vector<Rat> fc(order + 1), gc(order + 1);
        for (long i = 0; i <= order; ++i) fc[i] = Rat(coeff(rng));
        for (long i = 1; i <= order; ++i) gc[i] = Rat(coeff(rng));
        QSeries f(0, order, fc), g(0, order, gc);

        long v = vdist(rng);
        Int u(udist(rng));
        while (u % p == 0) ++u;
        PadicNum x(p, v, u, K);

        // increment bound: integral g forces |g(x)-g(0)| <= |x|
        PadicNum gx = eval_padic(g, x, K);
        PadicNum diff = gx - PadicNum::from_rat(g.coeff(0), p, K);
        Rat lhs = diff.abs_upper();
        Rat rhs = pow_rat(Rat(p), -v);
        if (lhs > rhs) rep.increment_failures++;

        // two-path composition at the common certified precision
        QSeries fog = compose(f, g);
        long common = std::min(K, (fog.order() + 1) * v);
        PadicNum path1 = eval_padic(fog, x, common);
        PadicNum path2 = eval_padic(f, eval_padic(g, x, common), common);
        if (!equal_to_precision(path1, path2)) rep.composition_failures++;
    }
    return rep;
}

}  // namespace gflab
