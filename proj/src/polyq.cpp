#include "gflab/polyq.hpp"

#include <sstream>

namespace gflab {

const Rat PolyQ::zero_ = Rat(0);

void PolyQ::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& PolyQ::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return zero_;
    return c_[i];
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
    std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return PolyQ(std::move(v));
}

PolyQ PolyQ::operator-() const {
    PolyQ r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    std::vector<Rat> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return PolyQ(std::move(v));
}

PolyQ operator*(const Rat& s, const PolyQ& a) {
    PolyQ r = a;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
}

PolyQ PolyQ::derivative() const {
    if (c_.size() <= 1) return PolyQ();
    std::vector<Rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rat(static_cast<long>(i)) * c_[i];
    return PolyQ(std::move(v));
}

Rat PolyQ::eval(const Rat& x) const {
    Rat acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RealBall PolyQ::eval_ball(const RealBall& x, mpfr_prec_t prec) const {
    RealBall acc(prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + RealBall::exact(*it, prec);
    return acc;
}

ComplexBall PolyQ::eval_ball(const ComplexBall& x, mpfr_prec_t prec) const {
    ComplexBall acc(prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + ComplexBall::exact(*it, 0, prec);
    return acc;
}

PolyQ PolyQ::primitive_normalized() const {
    if (is_zero()) return *this;
    Int num_gcd = 0, den_lcm = 1;
    for (const Rat& r : c_) {
        if (r == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), Int(r.get_num()).get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), Int(r.get_den()).get_mpz_t());
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (c_.back() < 0) scale = -scale;
    return scale * *this;
}

std::string PolyQ::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const Rat& r = coeff(i);
        if (r == 0) continue;
        if (!first) os << (r > 0 ? " + " : " - ");
        else if (r < 0) os << "-";
        first = false;
        Rat a = abs(r);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace gflab
