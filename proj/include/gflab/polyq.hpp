#pragma once

#include "gflab/ball.hpp"
#include "gflab/rational.hpp"

namespace gflab {

// dense univariate polynomial over Q
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static PolyQ constant(const Rat& c) { return PolyQ(std::vector<Rat>{c}); }
    static PolyQ x() { return PolyQ({Rat(0), Rat(1)}); }

    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rat& coeff(long i) const;
    const std::vector<Rat>& coeffs() const { return c_; }

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(const Rat& s, const PolyQ& a);
    PolyQ operator-() const;
    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

    PolyQ derivative() const;
    Rat eval(const Rat& x) const;
    RealBall eval_ball(const RealBall& x, mpfr_prec_t prec) const;
    ComplexBall eval_ball(const ComplexBall& x, mpfr_prec_t prec) const;

    // integer-primitive form with positive leading coefficient; returns the
    // scalar s with s * (*this) primitive
    PolyQ primitive_normalized() const;

    std::string to_string(const std::string& var = "X") const;

private:
    std::vector<Rat> c_;
    void trim();
    static const Rat zero_;
};

}  // namespace gflab
