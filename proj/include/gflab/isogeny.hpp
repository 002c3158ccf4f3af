#pragma once

#include <optional>
#include <string>

#include "gflab/modpoly.hpp"
#include "gflab/periods.hpp"
#include "gflab/relations.hpp"

namespace gflab {

struct bad_parameter : std::domain_error {
    explicit bad_parameter(const std::string& what) : std::domain_error(what) {}
};
struct cm_point : std::domain_error {
    explicit cm_point(const std::string& what) : std::domain_error(what) {}
};
struct ambiguous_lattice : std::runtime_error {
    explicit ambiguous_lattice(const std::string& what) : std::runtime_error(what) {}
};
struct degenerate_input : std::domain_error {
    explicit degenerate_input(const std::string& what) : std::domain_error(what) {}
};
struct no_admissible_place : std::runtime_error {
    explicit no_admissible_place(const std::string& what) : std::runtime_error(what) {}
};

enum class PairProvenance { tate_power, x0_param, synthetic };

// Two curve parameters with a degree-M isogeny E_{s1} -> E_{s2} and the
// attached scalars.  The differential scaling a and the de-Rham entries b, d
// live in Q(sqrt(disc)); they are stored as rational multiples of sqrt(disc)
// with disc = 1 in the rational case.
struct IsogenyPair {
    Rat s1, s2;
    Int M;
    PairProvenance provenance = PairProvenance::synthetic;

    bool populated = false;
    Int disc = 1;        // squarefree positive
    Rat a0, b0, d0;      // a = a0 sqrt(disc), [f* eta] = b [omega] + d [eta]
    long hp = 0, hq = 0, hr = 0, hs = 0;  // homology matrix (p q; r s), det = M

    Rat a_squared() const { return a0 * a0 * Rat(disc); }
    Rat ad() const { return a0 * d0 * Rat(disc); }  // must equal M when populated

    std::string to_json() const;
    static IsogenyPair from_json(const std::string& text);
};

// degree-2 pairs from the X0(2) parametrization j1 = (t+256)^3/t^2,
// j2 = (t+16)^3/t, with the defining identity Phi_2(j1, j2) = 0 checked as
// an exact rational identity at the chosen t
IsogenyPair x0_pair(const Rat& t, const Int& p);

// symbolic Tate data: q1 = q^n, q2 = q^m, M = m*n; the multiplicative
// uniformization pins the homology entries p = m, r = 0
struct TateIsogenyData {
    long m = 0, n = 0;
    Int M;
    long hom_p = 0, hom_r = 0;
};
TateIsogenyData tate_isogeny_data(long m, long n);

// populate (p,q,r,s), a, b, d from period matrices at both curve parameters
IsogenyPair extract_isogeny_scalars(IsogenyPair pair, mpfr_prec_t bits);

// product of a Y1 - m Y2 over all divisors m of M, positive and negative;
// the +-m factors pair into rational quadratics, so the result is rational
// even when a itself is only rational after squaring
RelationPoly build_P_fin(const Rat& a_squared, const Int& M);

// archimedean relation polynomials in (Y1, Z1, ..., Y4, Z4)
RelationPoly build_P_inf_linear(const Rat& a, long p);
RelationPoly build_P_inf_quadratic(const Rat& a, const Rat& b, const Rat& d, long r,
                                   const Rat& a2, const Rat& b2, const Rat& d2, long r2);
// nonzero after substituting Y1 -> Y3, Z1 -> Z3 (so not in the ideal
// <Y1 - Y3, Z1 - Z3>)
bool survives_identification(const RelationPoly& P);

struct RelationBundle {
    RelationPoly P_fin;                 // in (Y1, Y2)
    std::optional<RelationPoly> P_inf;  // rational-scalar branches only
    std::string to_json() const;
    static RelationBundle from_json(const std::string& text);
};

struct PlaceCheck {
    std::string place;
    bool admissible = false;
    bool passed = false;
    std::vector<long> matched_m;  // which divisor factors vanished (per embedding)
    std::string detail;
};
struct VerifyReport {
    std::vector<PlaceCheck> checks;
    bool all_passed = false;
    int admissible_count = 0;
};

// archimedean: the linear period relation a F(s1) = p F(s2) and P_fin at the
// evaluated balls contain zero; p-adic: exactly the divisor search of the
// product relation, run once per embedding of sqrt(disc)
VerifyReport multi_place_verify(const IsogenyPair& pair, const RelationBundle& bundle,
                                const std::vector<std::string>& places, long precision,
                                mpfr_prec_t bits = 512);

}  // namespace gflab
