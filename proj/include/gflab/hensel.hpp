#pragma once

#include "gflab/qseries.hpp"

namespace gflab {

struct singular_branch : std::domain_error {
    singular_branch() : std::domain_error("hensel_series: dP/dY vanishes at the starting point") {}
};

// bivariate integer polynomial, coeff(i, j) multiplies X^i Y^j
class BiPoly {
public:
    BiPoly(long xdeg, long ydeg) : xd_(xdeg), yd_(ydeg), c_((xdeg + 1) * (ydeg + 1)) {}
    Int& at(long i, long j) { return c_[i * (yd_ + 1) + j]; }
    const Int& at(long i, long j) const { return c_[i * (yd_ + 1) + j]; }
    long xdeg() const { return xd_; }
    long ydeg() const { return yd_; }

    Rat eval(const Rat& x, const Rat& y) const;
    BiPoly dY() const;
    // P(X, y(X)) as a truncated series
    QSeries eval_series(const QSeries& y) const;

private:
    long xd_, yd_;
    std::vector<Int> c_;
};

// the unique series y with y(0) = y0 and P(X, y(X)) = 0, for a simple branch
QSeries hensel_series(const BiPoly& P, const Rat& y0, long order);

// empirical denominator profile: the smallest pair (D, d) with
// D * d^n * a_n integral over the scanned prefix
struct EisensteinProfile {
    Int D;
    Int d;
    bool all_integral = false;
};
EisensteinProfile eisenstein_profile(const QSeries& y);

}  // namespace gflab
