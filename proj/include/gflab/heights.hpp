#pragma once

#include "gflab/ball.hpp"
#include "gflab/rational.hpp"

namespace gflab {

struct not_primitive : std::domain_error {
    not_primitive() : std::domain_error("minimal polynomial must be primitive with nonzero leading coefficient") {}
};

// h(p/q) = log max(|p|, |q|) for coprime integers
RealBall weil_height(const Rat& x, mpfr_prec_t prec = 256);

// (1/d)(log|a_d| + sum log+ |roots|) via certified root enclosures,
// coeffs[i] multiplies x^i; the polynomial is assumed squarefree
// (irreducibility is the caller's assertion)
RealBall weil_height_minpoly(const std::vector<Int>& coeffs, mpfr_prec_t prec = 256);

long divisor_count_small(long n);

struct DivisorBoundReport {
    long n_max = 0;
    Rat eps;               // exponent in d(N)/N^eps, must be a/b with small b
    long argmax = 0;
    long d_argmax = 0;
    double max_ratio = 0;  // d(argmax)/argmax^eps
};
// exhaustive scan N <= n_max via a smallest-prime-factor sieve; the argmax
// comparison d(a)^b2 * b^a2 vs ... is exact for rational eps = a2/b2
DivisorBoundReport check_divisor_bound(const Rat& eps, long n_max);

}  // namespace gflab
