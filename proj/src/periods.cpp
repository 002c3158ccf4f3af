#include "gflab/periods.hpp"

#include <cmath>
#include <mutex>

#include "gflab/ode_guess.hpp"
#include "gflab/qexp.hpp"

namespace gflab {

CurvePoint::CurvePoint(Rat s_in) : s(std::move(s_in)) {
    if (s == 0) throw std::invalid_argument("CurvePoint: s = 0 is the degenerate fibre");
    if (s == Rat(1, 1728)) throw std::invalid_argument("CurvePoint: s = 1/1728 is excluded");
}

CoeffBound theta_coeff_bound() { return {Rat(1), Rat(1, 1728)}; }
CoeffBound f_coeff_bound() { return {Rat(2), Rat(1, 1728)}; }
CoeffBound fprime_coeff_bound() { return {Rat(20000), Rat(1, 1800)}; }
CoeffBound e2_coeff_bound() { return {Rat(1200), Rat(9, 10)}; }

namespace {

std::once_flag radius_once;
Rat radius_cache;

RealBall exp_minus_2pi(mpfr_prec_t bits) {
    RealBall pi = RealBall::pi(bits);
    return (-(pi + pi)).exp();
}

void compute_delta_s_radius() {
    const long order = 600;
    const mpfr_prec_t bits = 192;
    QSeries th = theta_series(order);
    // the certificate behind |theta(s)| <= theta(|s|): nonnegative prefix
    for (long n = 0; n <= th.order(); ++n)
        if (th.coeff(n) < 0) throw std::logic_error("theta has a negative coefficient");
    RealBall limit = exp_minus_2pi(bits);
    const long denom = 1 << 16;
    long best = 0;
    for (long k = denom / 1728; k >= 1; --k) {
        Rat r(k, denom);
        r.canonicalize();
        if (r >= Rat(1, 1728)) continue;
        RealEval v = eval_real(th, RealBall::exact(r, bits), bits, theta_coeff_bound());
        RealBall gap = limit - v.value.abs_upper_bound();
        if (gap.definitely_positive()) {
            best = k;
            break;
        }
    }
    if (best == 0) throw precision_exhausted("delta_s_radius: no dyadic radius certifies");
    radius_cache = Rat(best, denom);
    radius_cache.canonicalize();
}

// enclosures of the three real roots of 4x^3 - g2 x - g3, descending
std::array<RealBall, 3> cubic_roots(const Rat& g2, const Rat& g3, mpfr_prec_t bits) {
    PolyQ p({-g3, -g2, Rat(0), Rat(4)});
    PolyQ dp = p.derivative();

    // double seeds from the trigonometric form of the depressed cubic
    double pd = -g2.get_d() / 4.0, qd = -g3.get_d() / 4.0;
    double m = 2.0 * std::sqrt(-pd / 3.0);
    double arg = 3.0 * qd / (pd * m);
    arg = std::min(1.0, std::max(-1.0, arg));
    double theta = std::acos(arg);
    std::array<double, 3> seeds{m * std::cos(theta / 3.0), m * std::cos(theta / 3.0 - 2.0 * M_PI / 3.0),
                                m * std::cos(theta / 3.0 - 4.0 * M_PI / 3.0)};
    std::sort(seeds.begin(), seeds.end(), std::greater<>());

    std::array<RealBall, 3> out;
    for (int i = 0; i < 3; ++i) {
        Rat z(seeds[i]);
        // Newton on exact rational midpoints, doubling digits per step
        long iters = static_cast<long>(std::log2(static_cast<double>(bits))) + 4;
        for (long it = 0; it < iters; ++it) {
            RealBall zb = RealBall::exact(z, bits + 64);
            RealBall step = p.eval_ball(zb, bits + 64) / dp.eval_ball(zb, bits + 64);
            z = (zb - step).mid_as_rat();
        }
        // certify by exact sign change over a dyadic bracket
        Rat eps = pow_rat(Rat(1, 2), bits - 6);
        bool done = false;
        for (int widen = 0; widen < 20 && !done; ++widen, eps *= 16) {
            Rat lo = z - eps, hi = z + eps;
            Rat plo = p.eval(lo), phi = p.eval(hi);
            if ((plo < 0 && phi > 0) || (plo > 0 && phi < 0)) {
                RealBall lob = RealBall::exact(lo, bits), hib = RealBall::exact(hi, bits);
                out[i] = RealBall::from_endpoints(lob.mid(), hib.mid(), bits);
                done = true;
            }
        }
        if (!done) throw precision_exhausted("cubic_roots: no sign change around Newton limit");
    }
    return out;
}

struct LatticeData {
    RealBall omega_re;   // real period, positive
    RealBall omega_im;   // magnitude of the imaginary period
    RealBall q;          // nome
};

LatticeData lattice_periods(const CurvePoint& pt, mpfr_prec_t bits) {
    if (!(pt.s > 0 && pt.s < Rat(1, 1728)))
        throw not_in_delta_s("period computation supports the real segment 0 < s < 1/1728");
    auto roots = cubic_roots(pt.g2(), pt.g3(), bits);
    const RealBall& e1 = roots[0];
    const RealBall& e2 = roots[1];
    const RealBall& e3 = roots[2];
    RealBall s13 = (e1 - e3).sqrt();
    RealBall s12 = (e1 - e2).sqrt();
    RealBall s23 = (e2 - e3).sqrt();
    RealBall pi = RealBall::pi(bits);
    LatticeData out;
    out.omega_re = pi / RealBall::agm(s13, s12);
    out.omega_im = pi / RealBall::agm(s13, s23);
    // tau = i*omega_re/omega_im on this segment; q = exp(2 pi i tau)
    out.q = (-(pi + pi) * (out.omega_re / out.omega_im)).exp();
    return out;
}

long series_order_for(double ratio, mpfr_prec_t bits, long cap = 4000) {
    // C * ratio^(D+1)/(1-ratio) <= 2^-(bits+8)
    double need = ((bits + 16) * std::log(2.0) + std::log(1.0 / (1.0 - ratio)) + std::log(4.0)) /
                  -std::log(ratio);
    long D = static_cast<long>(need) + 8;
    return std::min(cap, D);
}

std::mutex g_mutex;
std::optional<GReconstruction> g_cache;

}  // namespace

Rat delta_s_radius() {
    std::call_once(radius_once, compute_delta_s_radius);
    return radius_cache;
}

RealBall q_from_s(const Rat& s, mpfr_prec_t bits) {
    if (abs(s) > delta_s_radius())
        throw not_in_delta_s("q_from_s: |s| exceeds the certified disc radius");
    if (s == 0) return RealBall(bits);
    RealBall q(bits);
    double ratio = Rat(abs(s)).get_d() * 1728.0;
    if (ratio < 0.5 && series_order_for(ratio, bits, 2000) < 2000) {
        long ord = series_order_for(ratio, bits, 2000);
        QSeries th = theta_series(ord);
        q = eval_real(th, RealBall::exact(s, bits), bits, theta_coeff_bound()).value;
    } else {
        if (s < 0)
            throw not_in_delta_s("q_from_s: series evaluation only converges usefully for small |s|");
        q = lattice_periods(CurvePoint(s), bits).q;
    }
    RealBall gap = exp_minus_2pi(bits) - q.abs_upper_bound();
    if (!gap.definitely_positive())
        throw precision_exhausted("q_from_s: cannot certify |q| < e^{-2pi}");
    return q;
}

PeriodMatrix period_matrix(const CurvePoint& pt, mpfr_prec_t bits) {
    PeriodMatrix pm;
    LatticeData lat = lattice_periods(pt, bits);
    RealBall pi = RealBall::pi(bits);
    RealBall two_pi = pi + pi;
    pm.q = lat.q;
    pm.F_lattice = lat.omega_im / two_pi;
    pm.fstar_im = lat.omega_re / two_pi;

    // quasi-periods from E2 at the lattice nome
    long e2_order = std::max<long>(32, bits / 8);
    QSeries e2 = eisenstein(Eisenstein::E2, e2_order);
    RealBall E2q = eval_real(e2, lat.q, bits, e2_coeff_bound()).value;
    RealBall A = pi * pi * E2q / (RealBall::exact_int(3, bits) * lat.omega_im);
    pm.G_lattice = A / two_pi;
    pm.gstar_im = (A * lat.omega_re - two_pi) / (two_pi * lat.omega_im);

    // series route for F when the argument is comfortably inside the disc;
    // near the boundary the series converges too slowly to be worth it and
    // the lattice route alone stands
    double ratio = Rat(abs(pt.s)).get_d() * 1728.0;
    long ord = series_order_for(ratio, bits, 600);
    if (ord < 600) {
        QSeries F = F_series(ord);
        pm.F_series = eval_real(F, RealBall::exact(pt.s, bits), bits, f_coeff_bound()).value;
        pm.series_available = true;
    }
    return pm;
}

RealBall legendre_residual(const PeriodMatrix& pm, std::optional<RealBall> F_override,
                           std::optional<RealBall> G_override) {
    const RealBall& F = F_override ? *F_override
                                   : (pm.series_available ? pm.F_series : pm.F_lattice);
    const RealBall& G = G_override ? *G_override : pm.G_lattice;
    mpfr_prec_t bits = F.prec();
    RealBall pi = RealBall::pi(bits);
    RealBall inv2pi = RealBall::exact_int(1, bits) / (pi + pi);
    return F * pm.gstar_im - pm.fstar_im * G + inv2pi;
}

namespace {

// dense ball Gaussian elimination solving M u = rhs (square)
std::vector<RealBall> solve_ball_system(std::vector<std::vector<RealBall>> M,
                                        std::vector<RealBall> rhs, mpfr_prec_t bits) {
    const size_t n = M.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        double best = -1;
        for (size_t r = col; r < n; ++r) {
            double mag = std::abs(M[r][col].mid_d());
            if (mag > best) { best = mag; piv = r; }
        }
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        RealBall inv = RealBall::exact_int(1, bits) / M[col][col];
        for (size_t j = col; j < n; ++j) M[col][j] = M[col][j] * inv;
        rhs[col] = rhs[col] * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            RealBall f = M[r][col];
            if (mpfr_zero_p(f.mid()) && mpfr_zero_p(f.rad())) continue;
            for (size_t j = col; j < n; ++j) M[r][j] = M[r][j] - f * M[col][j];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace

GReconstruction reconstruct_G(long order, int sample_count, mpfr_prec_t bits) {
    // the relation G = aF + bF' rides on F satisfying a linear operator;
    // check that precondition up front
    {
        auto ode = find_ode(F_series(240), 3, 12, 40);
        if (!ode) throw reconstruction_failed("reconstruct_G: no linear operator found for F");
    }
    const mpfr_prec_t wp = std::max<mpfr_prec_t>(bits, 768);
    const Int den_bound = pow_int(Int(10), 12);

    const int max_budget = 8;
    const int want = std::max(sample_count, 3 * (max_budget + 1) + 2);
    // rational samples on the real segment, spread inside (0, 1e-4]
    std::vector<Rat> svals;
    for (int k = 0; svals.size() < static_cast<size_t>(want + 3); ++k) {
        Rat s(7 + 5 * k, 1000000);
        s.canonicalize();
        svals.push_back(s);
    }

    long ser_order = series_order_for(svals.back().get_d() * 1728.0, wp);
    QSeries F = F_series(ser_order + 1);
    QSeries Fp = derivative(F);
    std::vector<RealBall> Fk, Fpk, Gk;
    for (const Rat& s : svals) {
        Fk.push_back(eval_real(F, RealBall::exact(s, wp), wp, f_coeff_bound()).value);
        Fpk.push_back(eval_real(Fp, RealBall::exact(s, wp), wp, fprime_coeff_bound()).value);
        Gk.push_back(period_matrix(CurvePoint(s), wp).G_lattice);
    }

    for (int budget = 1; budget <= max_budget; ++budget) {
        const long cols = 3 * (budget + 1) - 1;  // D_0 normalized to 1
        if (static_cast<long>(svals.size()) < cols + 3) break;
        try {
            std::vector<std::vector<RealBall>> M(cols, std::vector<RealBall>(cols, RealBall(wp)));
            std::vector<RealBall> rhs(cols, RealBall(wp));
            for (long r = 0; r < cols; ++r) {
                RealBall sb = RealBall::exact(svals[r], wp);
                RealBall spow = RealBall::exact_int(1, wp);
                std::vector<RealBall> powers;
                for (int i = 0; i <= budget; ++i) {
                    powers.push_back(spow);
                    spow = spow * sb;
                }
                for (int i = 0; i <= budget; ++i) M[r][i] = powers[i] * Fk[r];
                for (int i = 0; i <= budget; ++i) M[r][budget + 1 + i] = powers[i] * Fpk[r];
                for (int i = 1; i <= budget; ++i) M[r][2 * (budget + 1) + i - 1] = -(powers[i] * Gk[r]);
                rhs[r] = Gk[r];
            }
            std::vector<RealBall> sol = solve_ball_system(std::move(M), std::move(rhs), wp);

            std::vector<Rat> c(cols);
            bool recon_ok = true;
            for (long j = 0; j < cols && recon_ok; ++j) {
                auto cand = reconstruct_rational(sol[j], den_bound);
                if (!cand) recon_ok = false;
                else c[j] = *cand;
            }
            if (!recon_ok) continue;

            std::vector<Rat> av(c.begin(), c.begin() + budget + 1);
            std::vector<Rat> bv(c.begin() + budget + 1, c.begin() + 2 * (budget + 1));
            std::vector<Rat> dv{Rat(1)};
            dv.insert(dv.end(), c.begin() + 2 * (budget + 1), c.end());
            PolyQ A(av), B(bv), D(dv);
            if (D.is_zero()) continue;

            // held-out validation on fresh samples
            bool held_ok = true;
            std::vector<Rat> held;
            for (size_t r = svals.size() - 3; r < svals.size(); ++r) {
                RealBall sb = RealBall::exact(svals[r], wp);
                RealBall resid = A.eval_ball(sb, wp) * Fk[r] + B.eval_ball(sb, wp) * Fpk[r] -
                                 D.eval_ball(sb, wp) * Gk[r];
                held.push_back(svals[r]);
                if (!resid.contains_zero()) { held_ok = false; break; }
            }
            if (!held_ok) continue;

            GReconstruction out;
            out.a_num = A;
            out.a_den = D;
            out.b_num = B;
            out.b_den = D;
            out.degree_budget = budget;
            out.samples_used = static_cast<int>(cols);
            out.held_out_samples = held;

            // G = (A*F + B*F')/D as an exact series
            long go = order;
            QSeries Fg = F_series(go + 1);
            QSeries Fgp = derivative(Fg);
            auto poly_to_series = [&](const PolyQ& p, long ord) {
                std::vector<Rat> v(ord + 1);
                for (long i = 0; i <= std::min<long>(p.degree(), ord); ++i) v[i] = p.coeff(i);
                return QSeries(0, ord, std::move(v));
            };
            QSeries num = poly_to_series(A, go) * Fg.truncated(go) +
                          poly_to_series(B, go) * Fgp.truncated(go);
            out.g = (num * reciprocal(poly_to_series(D, go))).truncated(go);
            return out;
        } catch (const std::domain_error&) {
            continue;  // singular square system at this budget
        }
    }
    throw reconstruction_failed("reconstruct_G: no degree budget up to 8 succeeded");
}

QSeries G_series(long order) {
    std::lock_guard<std::mutex> lk(g_mutex);
    if (g_cache && g_cache->g.order() >= order) return g_cache->g.truncated(order);
    if (g_cache) {
        // re-expand from the stored rational functions
        auto poly_to_series = [&](const PolyQ& p, long ord) {
            std::vector<Rat> v(ord + 1);
            for (long i = 0; i <= std::min<long>(p.degree(), ord); ++i) v[i] = p.coeff(i);
            return QSeries(0, ord, std::move(v));
        };
        QSeries Fg = F_series(order + 1);
        QSeries num = poly_to_series(g_cache->a_num, order) * Fg.truncated(order) +
                      poly_to_series(g_cache->b_num, order) * derivative(Fg).truncated(order);
        g_cache->g = (num * reciprocal(poly_to_series(g_cache->a_den, order))).truncated(order);
        return g_cache->g;
    }
    g_cache = reconstruct_G(order, 26, 768);
    return g_cache->g.truncated(order);
}

}  // namespace gflab
