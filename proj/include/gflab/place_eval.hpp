#pragma once

#include <cstdint>
#include <optional>

#include "gflab/ball.hpp"
#include "gflab/padic.hpp"
#include "gflab/qseries.hpp"

namespace gflab {

// Lower bound for the strict non-archimedean radius (constant term ignored).
struct RadiusBound {
    enum class Basis { integral_coefficients, supplied_bound, empirical };
    Rat lower;            // ignored when no_constraint
    bool certified = false;
    bool no_constraint = false;  // constant series: nothing to bound
    Basis basis = Basis::empirical;
};

RadiusBound r_dagger(const QSeries& f, const Int& p);

// value of f at x (val_p(x) >= 1) modulo p^target_precision.
// f must be integral unless an explicit tail certificate is supplied by the
// caller through `integral_override` (asserting sup_n |a_n|_p <= 1).
PadicNum eval_padic(const QSeries& f, const PadicNum& x, long target_precision,
                    bool integral_override = false);

// archimedean coefficient bound |a_n| <= C * rho^-n
struct CoeffBound {
    Rat C;
    Rat rho;
};

struct ComplexEval {
    ComplexBall value;
    bool certified = false;  // tail bound backed by a supplied certificate
};

ComplexEval eval_complex(const QSeries& f, const ComplexBall& x, mpfr_prec_t prec,
                         std::optional<CoeffBound> bound = std::nullopt);

// real-argument specialization used by the period code (argument and all
// coefficients real)
struct RealEval {
    RealBall value;
    bool certified = false;
};
RealEval eval_real(const QSeries& f, const RealBall& x, mpfr_prec_t prec,
                   std::optional<CoeffBound> bound = std::nullopt);

// randomized checks of the open-disc composition and increment bounds
struct NonarchReport {
    Int prime;
    int samples = 0;
    int increment_failures = 0;    // |g(x)-g(0)| <= |x| for integral g
    int composition_failures = 0;  // two-path evaluation equality
};

NonarchReport check_nonarch_lemmas(const Int& p, int samples, uint64_t seed);

}  // namespace gflab
