#pragma once

#include "gflab/qseries.hpp"

namespace gflab {

struct insufficient_order : std::runtime_error {
    explicit insufficient_order(const std::string& what) : std::runtime_error(what) {}
};

// classical modular polynomial of prime level, exact integer coefficients
struct ModularPolynomial {
    long level = 0;
    long bidegree = 0;                 // psi(M) = M + 1 for prime M
    std::vector<std::vector<Int>> c;   // c[i][k] multiplies X^i Y^k

    const Int& coeff(long i, long k) const { return c[i][k]; }
    bool symmetric() const;
    Rat eval(const Rat& x, const Rat& y) const;
};

// generation order needed to pin every coefficient column of Phi_M
long modular_polynomial_order_requirement(long M);

// construction from q-expansions: power sums of the conjugate functions
// j(q^M), j(zeta^k q^{1/M}) collapse to coefficient extraction, Newton's
// identities give the elementary symmetric functions, and pole peeling
// rewrites them as polynomials in j.  Both invariants (symmetry, vanishing
// on (j(q), j(q^M))) are checked before returning.
ModularPolynomial modular_polynomial(long M, long order);

// Phi_M(j(q), j(q^M)) as a series; certified zero through its order
QSeries modular_annihilation_residual(const ModularPolynomial& phi, long order);

// substitute q -> q^M (exact reindexing; certified order M*ord + M - 1)
QSeries substitute_power(const QSeries& f, long M);

}  // namespace gflab
