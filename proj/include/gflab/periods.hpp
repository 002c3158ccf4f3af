#pragma once

#include <optional>

#include "gflab/place_eval.hpp"
#include "gflab/polyq.hpp"
#include "gflab/qseries.hpp"
#include "gflab/ratrec.hpp"

namespace gflab {

struct not_in_delta_s : std::domain_error {
    explicit not_in_delta_s(const std::string& what) : std::domain_error(what) {}
};
struct precision_exhausted : std::runtime_error {
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// parameter on the curve family: j-invariant 1/s, short-form invariants
// c4 = 1/(1-1728s), c6 = -c4
struct CurvePoint {
    Rat s;
    explicit CurvePoint(Rat s_in);
    Rat c4() const { return 1 / (1 - 1728 * s); }
    Rat c6() const { return -c4(); }
    Rat g2() const { return c4() / 12; }
    Rat g3() const { return c6() / 216; }
};

// certified disc radius: the largest dyadic k/2^16 <= 1/1728 with
// theta(r) + tail < e^{-2pi}; memoized after the first computation
Rat delta_s_radius();

// coefficient certificates used throughout (prefix-checked on every call
// that consumes them)
CoeffBound theta_coeff_bound();  // |theta_n| <= 1728^n
CoeffBound f_coeff_bound();      // |F_n| <= 2 * 1728^n
CoeffBound fprime_coeff_bound();
CoeffBound e2_coeff_bound();

// q = theta(s), via the series inside half the disc radius and via the
// lattice nome beyond it; asserts |q| < e^{-2pi}
RealBall q_from_s(const Rat& s, mpfr_prec_t bits);

// Full period data of E_s over the cycle basis (gamma, delta):
//   omega_gamma = 2*pi*i*F_lattice     (gamma pinned to the vanishing cycle)
//   omega_delta = -omega_real          (orientation gamma.delta = +1)
// All stored quantities are real; starred entries carry a factor i:
//   F* = i*fstar_im, G* = i*gstar_im.
struct PeriodMatrix {
    RealBall F_lattice;   // AGM route
    RealBall fstar_im;
    RealBall G_lattice;   // E2 quasi-period route
    RealBall gstar_im;
    RealBall F_series;    // power-series route, for reconciliation
    RealBall q;           // nome exp(2*pi*i*tau), real in (0, e^{-2pi})
    bool series_available = false;
};

PeriodMatrix period_matrix(const CurvePoint& pt, mpfr_prec_t bits);

// det [[F, F*],[G, G*]] = 1/(2*pi*i) reduces to F*gstar_im - fstar_im*G =
// -1/(2*pi); the residual ball should contain zero.  F and G default to the
// series/lattice mix that makes the check a genuine two-path statement.
RealBall legendre_residual(const PeriodMatrix& pm, std::optional<RealBall> F_override = std::nullopt,
                           std::optional<RealBall> G_override = std::nullopt);

// eta = a*omega + b*(Gauss-Manin derivative of omega) recovered from
// lattice-side quasi-period samples; G = a*F + b*F'
struct GReconstruction {
    PolyQ a_num, a_den;
    PolyQ b_num, b_den;
    QSeries g;  // exact rational coefficients
    int degree_budget = 0;
    int samples_used = 0;
    std::vector<Rat> held_out_samples;
};

GReconstruction reconstruct_G(long order, int sample_count, mpfr_prec_t bits);

// G series via the reconstruction (memoized); order extension re-runs the
// composition, not the sampling
QSeries G_series(long order);

}  // namespace gflab
