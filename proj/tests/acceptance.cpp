// Acceptance harness: runs every primary criterion at its stated tolerance
// and prints one pass/fail line each.  Exit status 0 iff all criteria hold.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "gflab/heights.hpp"
#include "gflab/isogeny.hpp"
#include "gflab/ode_guess.hpp"
#include "gflab/qexp.hpp"
#include "gflab/report.hpp"

using namespace gflab;

namespace {

int failures = 0;

void criterion(const char* id, const char* what, double budget_s,
               const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = budget_s <= 0 || secs <= budget_s;
    if (!in_budget) ok = false;
    std::printf("[%s] %-4s %s (%.1fs%s)\n", ok ? "PASS" : "FAIL", id, what, secs,
                in_budget ? "" : " OVER BUDGET");
    if (!err.empty()) std::printf("       error: %s\n", err.c_str());
    if (!ok) ++failures;
    std::fflush(stdout);
}

}  // namespace

int main() {
    criterion("1", "exact q-expansion identities to order 300", 60, [] {
        SuiteOptions o;
        o.order = 300;
        return run_suite("identities", o).all_pass();
    });

    criterion("2", "paper-coefficient golden values and the alpha verdict", 30, [] {
        QSeries th = theta_series(3);
        auto [a4, a6] = tate_coefficients(3);
        QSeries j = j_series(1);
        QSeries a = alpha_series(2);
        bool theta_ok = th.coeff(1) == 1 && th.coeff(2) == 744 && th.coeff(3) == 750420;
        bool tate_ok = a4.coeff(1) == -5 && a4.coeff(2) == -45 && a4.coeff(3) == -140 &&
                       a6.coeff(1) == -1 && a6.coeff(2) == -23 && a6.coeff(3) == -154;
        bool j_ok = j.coeff(-1) == 1 && j.coeff(0) == 744 && j.coeff(1) == 196884;
        bool alpha_ok = a.coeff(0) == 1 && a.coeff(1) == -372 && a.coeff(2) == 10692;
        std::printf("       alpha verdict: oracle fixes (1, -372, 10692); the displayed\n"
                    "       (1, +372, 127692) is inconsistent with E6/E4 = 1 - 744q + ...\n");
        return theta_ok && tate_ok && j_ok && alpha_ok;
    });

    criterion("3", "integrality of F, theta, alpha, a4, a6 to order 500", 120, [] {
        SuiteOptions o;
        o.order = 500;
        return run_suite("growth", o).all_pass();
    });

    criterion("4", "non-archimedean lemmas: 200 samples at p = 2, 3, 5, precision p^40", 300, [] {
        for (long p : {2L, 3L, 5L}) {
            NonarchReport r = check_nonarch_lemmas(Int(p), 200, 0xC0FFEEull + p);
            if (r.increment_failures != 0 || r.composition_failures != 0) return false;
        }
        return true;
    });

    criterion("5", "modular polynomials Phi_2, Phi_3: symmetry, bidegree, q^150 annihilation", 300, [] {
        for (long M : {2L, 3L}) {
            ModularPolynomial phi = modular_polynomial(M, modular_polynomial_order_requirement(M));
            if (phi.bidegree != M + 1 || !phi.symmetric()) return false;
            QSeries resid = modular_annihilation_residual(phi, 150);
            if (!(resid.is_zero() && resid.order() >= 150)) return false;
        }
        ModularPolynomial phi2 = modular_polynomial(2, modular_polynomial_order_requirement(2));
        return phi2.coeff(2, 2) == -1 && phi2.coeff(1, 1) == 40773375;
    });

    criterion("6", "archimedean period identity at 5 samples, radii < 1e-20, Legendre", 120, [] {
        bool ok = true;
        for (int k = 0; k < 5; ++k) {
            Rat s(1, 10000 + 18000 * k);  // inside (0, 1e-4]
            PeriodMatrix pm = period_matrix(CurvePoint(s), 256);
            if (!pm.series_available) return false;
            RealBall diff = pm.F_lattice - pm.F_series;
            ok = ok && diff.contains_zero();
            ok = ok && (pm.F_lattice.rad_d() + pm.F_series.rad_d() < 1e-20);
            ok = ok && legendre_residual(pm).contains_zero();
        }
        return ok;
    });

    criterion("7", "G reconstruction with held-out validation and Legendre", 300, [] {
        GReconstruction gr = reconstruct_G(160, 26, 768);
        if (gr.held_out_samples.size() != 3) return false;
        QSeries g = gr.g;
        Rat s(1, 90000);
        PeriodMatrix pm = period_matrix(CurvePoint(s), 320);
        Rat C(0);
        for (long n = 0; n <= g.order(); ++n) {
            Rat scaled = abs(g.coeff(n)) * pow_rat(Rat(1, 1800), n);
            if (scaled > C) C = scaled;
        }
        C *= 4;
        RealEval ge = eval_real(g, RealBall::exact(s, 320), 320, CoeffBound{C, Rat(1, 1800)});
        if (!(ge.value - pm.G_lattice).contains_zero()) return false;
        return legendre_residual(pm, pm.F_series, ge.value).contains_zero();
    });

    criterion("8a", "cross-place relation for the X0(2) pair t=5, p=5 (K=50, re-checked at K=100)",
              120, [] {
        IsogenyPair pair = extract_isogeny_scalars(x0_pair(Rat(5), Int(5)), 512);
        if (pair.a_squared() != Rat(348, 1183)) return false;  // archimedean reconstruction
        RelationBundle bundle;
        bundle.P_fin = build_P_fin(pair.a_squared(), pair.M);
        VerifyReport r50 = multi_place_verify(pair, bundle, {"inf", "p=5"}, 50, 512);
        VerifyReport r100 = multi_place_verify(pair, bundle, {"p=5"}, 100, 512);
        bool stable = true;
        for (const auto& c : r50.checks)
            if (c.place == "p=5") stable = (c.matched_m == r100.checks[0].matched_m);
        // exactly one divisor among +-1, +-2 per embedding of sqrt(609)
        return r50.all_passed && r100.all_passed && stable;
    });

    criterion("8b", "cross-place relation for the X0(2) pair t=3, p=3", 120, [] {
        IsogenyPair pair = extract_isogeny_scalars(x0_pair(Rat(3), Int(3)), 512);
        RelationBundle bundle;
        bundle.P_fin = build_P_fin(pair.a_squared(), pair.M);
        VerifyReport r50 = multi_place_verify(pair, bundle, {"inf", "p=3"}, 50, 512);
        VerifyReport r100 = multi_place_verify(pair, bundle, {"p=3"}, 100, 512);
        bool stable = true;
        for (const auto& c : r50.checks)
            if (c.place == "p=3") stable = (c.matched_m == r100.checks[0].matched_m);
        return r50.all_passed && r100.all_passed && stable;
    });

    criterion("9", "relation-polynomial bookkeeping: degrees, nonvanishing, ad = M, det = M", 120, [] {
        for (long M : {1L, 2L, 6L, 12L}) {
            RelationPoly pf = build_P_fin(Rat(3, 7), Int(M));
            if (pf.delta() != 2 * divisor_count(Int(M)).get_si() || pf.is_zero()) return false;
        }
        RelationPoly q = build_P_inf_quadratic(Rat(1), Rat(0), Rat(2), 1, Rat(3), Rat(0), Rat(1), 2);
        if (q.is_zero() || !survives_identification(q)) return false;
        IsogenyPair pair = extract_isogeny_scalars(x0_pair(Rat(5), Int(5)), 448);
        return pair.ad() == Rat(pair.M) &&
               Int(pair.hp) * Int(pair.hs) - Int(pair.hq) * Int(pair.hr) == pair.M;
    });

    criterion("10", "ODE discovery on F (400 coeffs, 100 held out) and functional relations", 300, [] {
        QSeries F = F_series(400);
        auto ode = find_ode(F, 3, 12, 100);
        if (!ode || ode->order > 3) return false;
        if (!apply_ode(*ode, F).is_zero()) return false;
        // planted relations
        std::vector<Rat> v(81);
        v[0] = 1;
        v[1] = 1;
        QSeries F80 = F_series(80);
        QSeries y2 = QSeries(0, 80, v) * F80;
        auto rels = find_functional_relations({F80, y2}, 1, 1);
        if (rels.size() != 1 || !rels[0].apply_to_series({F80, y2}).is_zero()) return false;
        auto dup = find_functional_relations({F80, F80}, 1, 0);
        if (dup.size() != 1) return false;
        // certified emptiness for F alone
        return find_functional_relations({F_series(60)}, 1, 10).empty();
    });

    criterion("11", "divisor bound and Weil heights", 120, [] {
        if (divisor_count(Int(12)) != 6) return false;
        auto scan = check_divisor_bound(Rat(1, 2), 1000000);
        std::printf("       d(N)/sqrt(N) max at N = %ld with d = %ld, ratio %.10f\n", scan.argmax,
                    scan.d_argmax, scan.max_ratio);
        if (scan.argmax <= 0) return false;
        RealBall h23 = weil_height(Rat(2, 3));
        if (!(h23 - RealBall::exact_int(3, 256).log()).contains_zero()) return false;
        RealBall hphi = weil_height_minpoly({Int(-1), Int(-1), Int(1)});
        return std::abs(hphi.mid_d() - 0.24060591252980172) < 1e-12 && hphi.rad_d() < 1e-12;
    });

    criterion("12", "determinism under a fixed seed; precision monotonicity", 300, [] {
        SuiteOptions o;
        o.samples = 40;
        o.seed = 20260810;
        Report r1 = run_suite("nonarch-lemmas", o);
        Report r2 = run_suite("nonarch-lemmas", o);
        if (r1.canonical() != r2.canonical()) return false;
        if (!r1.all_pass()) return false;
        // doubling bits keeps enclosures nested
        CurvePoint pt{Rat(1, 75000)};
        PeriodMatrix lo = period_matrix(pt, 128);
        PeriodMatrix hi = period_matrix(pt, 256);
        if (!(hi.F_lattice.rad_d() < lo.F_lattice.rad_d())) return false;
        if (!lo.F_lattice.contains(hi.F_lattice.mid_as_rat())) return false;
        // doubling the p-adic precision keeps the verdict and the divisor
        IsogenyPair pair = extract_isogeny_scalars(x0_pair(Rat(5), Int(5)), 448);
        RelationBundle bundle;
        bundle.P_fin = build_P_fin(pair.a_squared(), pair.M);
        VerifyReport a = multi_place_verify(pair, bundle, {"p=5"}, 30, 448);
        VerifyReport b = multi_place_verify(pair, bundle, {"p=5"}, 60, 448);
        return a.all_passed && b.all_passed && a.checks[0].matched_m == b.checks[0].matched_m;
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
