#pragma once

#include <mpfr.h>

#include <string>

#include "gflab/rational.hpp"

namespace gflab {

class ComplexBall;

// Real midpoint-radius interval on mpfr.  Midpoint carries the working
// precision; the radius is a low-precision upper bound maintained with
// upward rounding, inflated by one ulp after every midpoint operation.
class RealBall {
public:
    explicit RealBall(mpfr_prec_t prec = 256);
    RealBall(const RealBall&);
    RealBall(RealBall&&) noexcept;
    RealBall& operator=(const RealBall&);
    RealBall& operator=(RealBall&&) noexcept;
    ~RealBall();

    static RealBall exact(const Rat& x, mpfr_prec_t prec);
    static RealBall exact_int(long x, mpfr_prec_t prec);
    static RealBall pi(mpfr_prec_t prec);
    static RealBall from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }

    double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    friend RealBall operator+(const RealBall& a, const RealBall& b);
    friend RealBall operator-(const RealBall& a, const RealBall& b);
    friend RealBall operator*(const RealBall& a, const RealBall& b);
    friend RealBall operator/(const RealBall& a, const RealBall& b);
    RealBall operator-() const;

    RealBall sqrt() const;   // requires a nonnegative enclosure
    RealBall exp() const;
    RealBall log() const;    // requires a positive enclosure
    RealBall square() const;
    RealBall abs() const;

    // arithmetic-geometric mean of two positive balls (endpoint monotone)
    static RealBall agm(const RealBall& a, const RealBall& b);

    bool contains_zero() const;
    bool contains(const Rat& q) const;          // definitely contains
    bool definitely_positive() const;
    bool definitely_negative() const;
    bool is_finite() const;

    // |mid| + rad rounded up / max(|mid| - rad, 0) rounded down
    RealBall abs_upper_bound() const;  // exact point ball
    RealBall abs_lower_bound() const;
    Rat rad_as_rat() const;
    Rat mid_as_rat() const;

    void add_error(const RealBall& extra_rad);  // inflate by |extra|'s upper bound

    std::string to_string(size_t digits = 20) const;

private:
    mpfr_prec_t prec_;
    mpfr_t mid_;
    mpfr_t rad_;

    void bump_radius_ulp();  // add one ulp of mid to rad
    friend class ComplexBall;
    friend ComplexBall operator+(const ComplexBall&, const ComplexBall&);
    friend ComplexBall operator-(const ComplexBall&, const ComplexBall&);
    friend ComplexBall operator*(const ComplexBall&, const ComplexBall&);
    friend ComplexBall operator/(const ComplexBall&, const ComplexBall&);
};

// Complex ball: high-precision midpoint, one Euclidean radius.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = 256);
    ComplexBall(const RealBall& re, const RealBall& im);
    static ComplexBall exact(const Rat& re, const Rat& im, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    const mpfr_t& re_mid() const { return re_.mid_; }
    const mpfr_t& im_mid() const { return im_.mid_; }
    const mpfr_t& rad() const { return rad_.mid_; }

    RealBall real_part() const;
    RealBall imag_part() const;

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
    ComplexBall operator-() const;
    ComplexBall conj() const;

    RealBall abs_upper() const;  // point ball >= sup |z|
    RealBall abs_lower() const;  // point ball <= inf |z|
    bool contains_zero() const;
    void add_error(const RealBall& extra);  // inflate radius by sup |extra|

    std::string to_string(size_t digits = 20) const;

private:
    mpfr_prec_t prec_;
    RealBall re_, im_;   // used as midpoints only (their rads stay 0)
    RealBall rad_;       // point value, upward maintained

    static RealBall component_slack(const RealBall& x);
};

}  // namespace gflab
