#include "gflab/heights.hpp"

#include <cmath>
#include <complex>

#include "gflab/polyq.hpp"

namespace gflab {

RealBall weil_height(const Rat& x, mpfr_prec_t prec) {
    Int n = abs(Int(x.get_num())), d = Int(x.get_den());
    Int mx = n > d ? n : d;
    if (mx <= 1) return RealBall(prec);  // exact zero for 0 and units
    return RealBall::exact(Rat(mx), prec).log();
}

namespace {

// double-precision seeds by Durand-Kerner
std::vector<std::complex<double>> dk_roots(const std::vector<Int>& coeffs) {
    const long d = static_cast<long>(coeffs.size()) - 1;
    std::vector<std::complex<double>> c(d + 1);
    for (long i = 0; i <= d; ++i) c[i] = coeffs[i].get_d();
    auto val = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (long i = d; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    std::vector<std::complex<double>> z(d);
    double radius = 1.0;
    for (long i = 0; i < d; ++i)
        radius = std::max(radius, 2.0 * std::pow(std::abs(c[i].real() / c[d].real()), 1.0 / (d - i)));
    for (long i = 0; i < d; ++i)
        z[i] = std::polar(radius * 0.7, 2.0 * M_PI * i / d + 0.4);
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0;
        for (long i = 0; i < d; ++i) {
            std::complex<double> denom = c[d];
            for (long j = 0; j < d; ++j)
                if (j != i) denom *= z[i] - z[j];
            std::complex<double> step = val(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

// one complex Newton step at high precision on exact rational midpoints
std::pair<Rat, Rat> newton_step(const PolyQ& p, const PolyQ& dp, const Rat& re, const Rat& im,
                                mpfr_prec_t prec) {
    ComplexBall z = ComplexBall::exact(re, im, prec);
    ComplexBall step = p.eval_ball(z, prec) / dp.eval_ball(z, prec);
    ComplexBall nz = z - step;
    return {nz.real_part().mid_as_rat(), nz.imag_part().mid_as_rat()};
}

}  // namespace

RealBall weil_height_minpoly(const std::vector<Int>& coeffs, mpfr_prec_t prec) {
    if (coeffs.empty() || coeffs.back() == 0) throw not_primitive();
    Int content = 0;
    for (const Int& c : coeffs) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content != 1) throw not_primitive();
    const long d = static_cast<long>(coeffs.size()) - 1;
    if (d == 0) throw not_primitive();
    if (d == 1) {
        // root -c0/c1; primitivity makes the height formula immediate
        Rat r(-coeffs[0], coeffs[1]);
        r.canonicalize();
        return weil_height(r, prec);
    }

    PolyQ p([&] {
        std::vector<Rat> v(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) v[i] = Rat(coeffs[i]);
        return v;
    }());
    PolyQ dp = p.derivative();

    mpfr_prec_t wp = std::max<mpfr_prec_t>(prec, 320);
    for (int attempt = 0; attempt < 4; ++attempt, wp *= 2) {
        auto seeds = dk_roots(coeffs);
        // refine to high precision
        std::vector<std::pair<Rat, Rat>> zs;
        for (const auto& s : seeds) {
            Rat re(s.real()), im(s.imag());
            for (int it = 0; it < 64; ++it) {
                auto [nre, nim] = newton_step(p, dp, re, im, wp);
                re = nre;
                im = nim;
            }
            zs.emplace_back(re, im);
        }
        // certified enclosing discs of radius d*|P(z)/P'(z)|
        std::vector<RealBall> abs_lo, abs_hi, radius;
        bool ok = true;
        for (auto& [re, im] : zs) {
            ComplexBall z = ComplexBall::exact(re, im, wp);
            ComplexBall q = p.eval_ball(z, wp) / dp.eval_ball(z, wp);
            RealBall r = q.abs_upper() * RealBall::exact_int(d, wp);
            RealBall az_hi = z.abs_upper() + r;
            RealBall az_lo = z.abs_lower() - r;
            abs_hi.push_back(az_hi.abs_upper_bound());
            abs_lo.push_back(az_lo);
            radius.push_back(r);
        }
        // pairwise disjoint discs certify one root per disc
        for (size_t i = 0; i < zs.size() && ok; ++i)
            for (size_t j = i + 1; j < zs.size() && ok; ++j) {
                ComplexBall zi = ComplexBall::exact(zs[i].first, zs[i].second, wp);
                ComplexBall zj = ComplexBall::exact(zs[j].first, zs[j].second, wp);
                RealBall dist = (zi - zj).abs_lower();
                RealBall rsum = radius[i] + radius[j];
                if (!(dist - rsum.abs_upper_bound()).definitely_positive()) ok = false;
            }
        if (!ok) continue;

        // mahler = |a_d| * prod max(1, |z_i|); sum the certified logs
        RealBall acc = RealBall::exact(Rat(abs(coeffs.back())), wp).log();
        bool width_ok = true;
        for (size_t i = 0; i < zs.size(); ++i) {
            RealBall lo = abs_lo[i];
            RealBall hi = abs_hi[i];
            // log+ interval
            mpfr_t l, h;
            mpfr_init2(l, wp);
            mpfr_init2(h, wp);
            mpfr_sub(l, lo.mid(), lo.rad(), MPFR_RNDD);
            mpfr_add(h, hi.mid(), hi.rad(), MPFR_RNDU);
            if (mpfr_cmp_ui(l, 1) <= 0) mpfr_set_ui(l, 1, MPFR_RNDD);
            if (mpfr_cmp_ui(h, 1) <= 0) mpfr_set_ui(h, 1, MPFR_RNDD);
            mpfr_log(l, l, MPFR_RNDD);
            mpfr_log(h, h, MPFR_RNDU);
            RealBall term = RealBall::from_endpoints(l, h, wp);
            mpfr_clears(l, h, nullptr);
            acc = acc + term;
        }
        acc = acc * RealBall::exact(Rat(1, d), wp);
        if (acc.rad_d() > 1e-13) width_ok = false;
        if (width_ok) return acc;
    }
    throw std::runtime_error("weil_height_minpoly: certification failed at maximum precision");
}

long divisor_count_small(long n) {
    if (n <= 0) throw std::domain_error("divisor_count_small: positive input required");
    long count = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            count *= e + 1;
        }
    }
    if (n > 1) count *= 2;
    return count;
}

DivisorBoundReport check_divisor_bound(const Rat& eps, long n_max) {
    DivisorBoundReport rep;
    rep.eps = eps;
    rep.n_max = n_max;
    const long a = static_cast<long>(Int(eps.get_num()).get_si());
    const long b = static_cast<long>(Int(eps.get_den()).get_si());
    if (a <= 0 || b <= 0 || b > 8)
        throw std::invalid_argument("check_divisor_bound: eps must be a small positive rational");

    // d(N) multiplicatively from a smallest-prime-factor sieve
    std::vector<int32_t> spf(n_max + 1, 0);
    std::vector<int32_t> dN(n_max + 1, 1);
    for (long i = 2; i <= n_max; ++i) {
        if (spf[i] == 0)
            for (long j = i; j <= n_max; j += i)
                if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
    }
    long best = 1;
    const double ae = eps.get_d();
    double best_val = 1.0;
    for (long i = 2; i <= n_max; ++i) {
        long p = spf[i];
        long m = i, e = 0;
        while (m % p == 0) { m /= p; ++e; }
        dN[i] = dN[m] * static_cast<int32_t>(e + 1);
        // double fast path; exact integer comparison on near ties
        double v = dN[i] / std::pow(static_cast<double>(i), ae);
        if (v < best_val * (1 - 1e-9)) continue;
        Int lhs = pow_int(Int(dN[i]), b) * pow_int(Int(best), a);
        Int rhs = pow_int(Int(dN[best]), b) * pow_int(Int(i), a);
        if (lhs > rhs) {
            best = i;
            best_val = v;
        }
    }
    rep.argmax = best;
    rep.d_argmax = dN[best];
    rep.max_ratio = dN[best] / std::pow(static_cast<double>(best), eps.get_d());
    return rep;
}

}  // namespace gflab
