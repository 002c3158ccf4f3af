#pragma once

#include <map>
#include <vector>

#include "gflab/ball.hpp"
#include "gflab/padic.hpp"
#include "gflab/polyq.hpp"
#include "gflab/qseries.hpp"

namespace gflab {

// Homogeneous polynomial in Y_1..Y_n with coefficients in Q[X] (functional
// relations) or constants (point relations).  Monomials are exponent vectors;
// the monomial order is plain lex on those vectors.
class RelationPoly {
public:
    RelationPoly() = default;
    RelationPoly(long n_vars, long delta) : n_(n_vars), delta_(delta) {}

    long n_vars() const { return n_; }
    long delta() const { return delta_; }
    bool is_zero() const;
    bool coefficients_constant() const;  // every coefficient has X-degree <= 0

    void set_term(const std::vector<int>& exponents, PolyQ coeff);
    void add_term(const std::vector<int>& exponents, const PolyQ& coeff);
    const std::map<std::vector<int>, PolyQ>& terms() const { return terms_; }

    // largest monomial in the fixed order, with its coefficient
    std::pair<std::vector<int>, PolyQ> leading_term() const;

    // substitute series for the variables; zero to the certified order iff
    // the relation annihilates the truncations
    QSeries apply_to_series(const std::vector<QSeries>& ys) const;

    // point-relation evaluations (requires constant coefficients)
    ComplexBall eval_complex_points(const std::vector<ComplexBall>& vals, mpfr_prec_t prec) const;
    PadicNum eval_padic_points(const std::vector<PadicNum>& vals, long precision) const;

    RelationPoly multiplied(const RelationPoly& other) const;
    // substitution Y_i -> Y_{perm[i]} (used for ideal-membership style checks)
    RelationPoly renamed(const std::vector<int>& perm) const;

    std::string to_string() const;

private:
    long n_ = 0;
    long delta_ = 0;
    std::map<std::vector<int>, PolyQ> terms_;
};

// nullspace basis of the exact linear system "all X-power coefficients of
// Q(X)(y_1..y_n) vanish", over monomials of homogeneous degree delta and
// coefficient X-degree <= xdeg.  Relations are certified to the common
// truncation order; an empty result is a certified emptiness statement for
// the finite system.
std::vector<RelationPoly> find_functional_relations(const std::vector<QSeries>& ys, long delta,
                                                    long xdeg, long margin = 25);

struct SpecializeResult {
    RelationPoly specialized;  // constant coefficients
    bool safe = false;         // leading coefficient did not vanish at xi
};
SpecializeResult specialize_relation(const RelationPoly& rel, const Rat& xi);

}  // namespace gflab
