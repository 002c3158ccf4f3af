#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "gflab/rational.hpp"

namespace gflab {

struct nonzero_inner_constant : std::domain_error {
    nonzero_inner_constant() : std::domain_error("compose: inner series has nonzero constant term") {}
};
struct not_invertible : std::domain_error {
    explicit not_invertible(const char* what) : std::domain_error(what) {}
};
struct zero_leading_coefficient : std::domain_error {
    zero_leading_coefficient() : std::domain_error("reciprocal: no nonzero coefficient to invert") {}
};
struct bad_constant_term : std::domain_error {
    bad_constant_term() : std::domain_error("sqrt_one: constant term is not 1") {}
};
struct series_parse_error : std::runtime_error {
    explicit series_parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Truncated Laurent series over Q.  Coefficients are stored for exponents
// offset()..order() and the series is certified modulo X^(order+1); arithmetic
// never claims more digits than the inputs support.
class QSeries {
public:
    QSeries() : offset_(0), order_(-1) {}
    QSeries(long offset, long order, std::vector<Rat> coeffs);

    static QSeries zero(long order) { return QSeries(0, order, std::vector<Rat>(order + 1)); }
    static QSeries constant(const Rat& c, long order);
    static QSeries x(long order);
    static QSeries monomial(const Rat& c, long exponent, long order);

    long offset() const { return offset_; }
    long order() const { return order_; }
    // coefficient of X^n for any n <= order (zero outside the stored window)
    const Rat& coeff(long n) const;
    bool is_zero() const;
    // exponent of the lowest stored nonzero coefficient, or order()+1 if none
    long valuation() const;

    bool is_integral() const;
    bool is_power_series() const;  // no nonzero coefficient below X^0

    QSeries truncated(long new_order) const;
    // drops leading zero coefficients from storage (value unchanged)
    QSeries normalized() const;
    // raises the stored offset to the valuation; tightens later
    // order certifications without changing the value
    QSeries tight() const;
    QSeries shifted(long k) const;  // multiply by X^k (exact)

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator-() const;
    friend QSeries operator*(const Rat& c, const QSeries& a);
    friend bool agree_to_common_order(const QSeries& a, const QSeries& b);

    friend QSeries compose(const QSeries& f, const QSeries& g);
    friend QSeries comp_inverse(const QSeries& f);
    friend QSeries reciprocal(const QSeries& f);
    friend QSeries sqrt_one(const QSeries& f);
    friend QSeries derivative(const QSeries& f);

    Rat eval_rat(const Rat& x) const;  // plain truncated evaluation, no tail bound

private:
    long offset_;
    long order_;
    std::vector<Rat> c_;  // c_[i] is the coefficient of X^(offset_+i)

    static const Rat rat_zero;
};

QSeries compose(const QSeries& f, const QSeries& g);
QSeries comp_inverse(const QSeries& f);
QSeries reciprocal(const QSeries& f);
QSeries sqrt_one(const QSeries& f);
QSeries derivative(const QSeries& f);

// text cache format: "QSERIES v1 offset=<int> order=<int>" then one
// coefficient per line as num/den in lowest terms; bit-exact round trip
void write_series(std::ostream& os, const QSeries& s);
QSeries read_series(std::istream& is);
void save_series_file(const std::string& path, const QSeries& s);
QSeries load_series_file(const std::string& path);

}  // namespace gflab
