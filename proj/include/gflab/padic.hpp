#pragma once

#include <string>

#include "gflab/rational.hpp"

namespace gflab {

struct padic_mismatch : std::domain_error {
    explicit padic_mismatch(const char* what) : std::domain_error(what) {}
};

// An element of Q_p known to finite precision: p^val * (unit + O(p^prec)),
// with p not dividing unit.  A "certified zero" carries only an absolute
// bound: value = O(p^zero_bound).
class PadicNum {
public:
    PadicNum(Int prime, long valuation, Int unit, long precision);
    static PadicNum zero(const Int& prime, long zero_bound);
    static PadicNum from_rat(const Rat& x, const Int& prime, long precision);
    static PadicNum from_int(const Int& x, const Int& prime, long precision);

    const Int& prime() const { return p_; }
    bool is_zero() const { return zero_; }          // zero at the stated precision
    long valuation() const;                         // throws for certified zeros
    long zero_bound() const;                        // O(p^zero_bound) for zeros
    const Int& unit() const { return unit_; }
    long precision() const { return prec_; }        // relative precision
    long abs_precision() const;                     // value known mod p^abs_precision

    PadicNum with_precision(long new_prec) const;   // never increases knowledge

    friend PadicNum operator+(const PadicNum& a, const PadicNum& b);
    friend PadicNum operator-(const PadicNum& a, const PadicNum& b);
    friend PadicNum operator*(const PadicNum& a, const PadicNum& b);
    friend PadicNum operator/(const PadicNum& a, const PadicNum& b);
    PadicNum operator-() const;

    // p-adic absolute value as a rational (p^-val); zero gives 0 bound... the
    // certified upper bound p^(-zero_bound)
    Rat abs_upper() const;

    // equality to the common known precision
    friend bool equal_to_precision(const PadicNum& a, const PadicNum& b);

    // Hensel square root for odd p of a value with even valuation whose unit
    // is a residue; returns the root with unit congruent to `seed` mod p when
    // seed is given, otherwise the smaller lift.
    PadicNum sqrt(std::optional<Int> seed = std::nullopt) const;
    bool is_square() const;

    std::string to_string() const;

private:
    Int p_;
    long val_ = 0;
    Int unit_;
    long prec_ = 0;
    bool zero_ = false;
    long zbound_ = 0;

    void canonicalize();
};

// value of an integral power series at |x|_p < 1, exact modulo p^target:
// truncation degree D satisfies (D+1)*val(x) >= target
struct not_in_radius : std::domain_error {
    not_in_radius() : std::domain_error("evaluation point outside the open unit disc") {}
};
struct uncertified_tail : std::domain_error {
    explicit uncertified_tail(const char* what) : std::domain_error(what) {}
};
struct insufficient_coefficients : std::runtime_error {
    explicit insufficient_coefficients(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gflab
