#include "gflab/padic.hpp"

#include <sstream>

namespace gflab {

namespace {
Int mod_pow_p(const Int& p, long k) { return pow_int(p, static_cast<unsigned long>(k)); }

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw padic_mismatch("inverse of non-unit");
    return r;
}
}  // namespace

PadicNum::PadicNum(Int prime, long valuation, Int unit, long precision)
    : p_(std::move(prime)), val_(valuation), unit_(std::move(unit)), prec_(precision) {
    if (prec_ < 0) throw std::invalid_argument("PadicNum: negative precision");
    canonicalize();
}

void PadicNum::canonicalize() {
    if (zero_) return;
    Int pk = mod_pow_p(p_, prec_);
    mpz_fdiv_r(unit_.get_mpz_t(), unit_.get_mpz_t(), pk.get_mpz_t());
    if (unit_ == 0) {
        // all stated digits vanish: certified zero modulo p^(val+prec)
        zero_ = true;
        zbound_ = val_ + prec_;
        val_ = 0;
        prec_ = 0;
        return;
    }
    long shift = ord_p(unit_, p_);
    if (shift > 0) {
        unit_ /= mod_pow_p(p_, shift);
        val_ += shift;
        prec_ -= shift;
    }
}

PadicNum PadicNum::zero(const Int& prime, long zero_bound) {
    PadicNum z(prime, 0, Int(1), 1);
    z.zero_ = true;
    z.zbound_ = zero_bound;
    z.val_ = 0;
    z.prec_ = 0;
    z.unit_ = 0;
    return z;
}

PadicNum PadicNum::from_int(const Int& x, const Int& prime, long precision) {
    if (x == 0) return zero(prime, precision);
    long v = ord_p(x, prime);
    return PadicNum(prime, v, x / mod_pow_p(prime, v), precision);
}

PadicNum PadicNum::from_rat(const Rat& x, const Int& prime, long precision) {
    if (x == 0) return zero(prime, precision);
    Int num = x.get_num(), den = x.get_den();
    long v = ord_p(num, prime) - ord_p(den, prime);
    Int nu = num / mod_pow_p(prime, std::max(0L, ord_p(num, prime)));
    Int du = den / mod_pow_p(prime, std::max(0L, ord_p(den, prime)));
    Int pk = mod_pow_p(prime, precision);
    Int unit = (nu % pk) * inv_mod(du, pk);
    return PadicNum(prime, v, unit, precision);
}

long PadicNum::valuation() const {
    if (zero_) throw padic_mismatch("valuation of a certified zero");
    return val_;
}

long PadicNum::zero_bound() const {
    if (!zero_) throw padic_mismatch("zero_bound of a nonzero value");
    return zbound_;
}

long PadicNum::abs_precision() const { return zero_ ? zbound_ : val_ + prec_; }

PadicNum PadicNum::with_precision(long new_prec) const {
    if (zero_) return *this;
    if (new_prec >= prec_) return *this;
    return PadicNum(p_, val_, unit_, new_prec);
}

PadicNum operator+(const PadicNum& a, const PadicNum& b) {
    if (a.p_ != b.p_) throw padic_mismatch("mixed primes");
    if (a.zero_ && b.zero_) return PadicNum::zero(a.p_, std::min(a.zbound_, b.zbound_));
    if (a.zero_) {
        long abs_p = std::min(a.zbound_, b.abs_precision());
        if (abs_p <= b.val_) return PadicNum::zero(a.p_, abs_p);
        return PadicNum(b.p_, b.val_, b.unit_, abs_p - b.val_);
    }
    if (b.zero_) return b + a;
    long abs_p = std::min(a.abs_precision(), b.abs_precision());
    long v = std::min(a.val_, b.val_);
    if (abs_p <= v) return PadicNum::zero(a.p_, abs_p);
    Int pk = pow_int(a.p_, static_cast<unsigned long>(abs_p - v));
    Int s = a.unit_ * pow_int(a.p_, static_cast<unsigned long>(a.val_ - v)) +
            b.unit_ * pow_int(a.p_, static_cast<unsigned long>(b.val_ - v));
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), pk.get_mpz_t());
    if (s == 0) return PadicNum::zero(a.p_, abs_p);
    return PadicNum(a.p_, v, s, abs_p - v);
}

PadicNum PadicNum::operator-() const {
    if (zero_) return *this;
    Int pk = mod_pow_p(p_, prec_);
    return PadicNum(p_, val_, pk - unit_, prec_);
}

PadicNum operator-(const PadicNum& a, const PadicNum& b) { return a + (-b); }

PadicNum operator*(const PadicNum& a, const PadicNum& b) {
    if (a.p_ != b.p_) throw padic_mismatch("mixed primes");
    if (a.zero_ || b.zero_) {
        // bound: |xy| <= p^-(zbound_a + val_b) etc.
        long bound;
        if (a.zero_ && b.zero_) bound = a.zbound_ + b.zbound_;
        else if (a.zero_) bound = a.zbound_ + b.val_;
        else bound = b.zbound_ + a.val_;
        return PadicNum::zero(a.p_, bound);
    }
    long prec = std::min(a.prec_, b.prec_);
    return PadicNum(a.p_, a.val_ + b.val_, a.unit_ * b.unit_, prec);
}

PadicNum operator/(const PadicNum& a, const PadicNum& b) {
    if (a.p_ != b.p_) throw padic_mismatch("mixed primes");
    if (b.zero_) throw padic_mismatch("division by certified zero");
    long prec = b.prec_;
    Int pk = pow_int(b.p_, static_cast<unsigned long>(prec));
    PadicNum binv(b.p_, -b.val_, inv_mod(b.unit_, pk), prec);
    return a * binv;
}

Rat PadicNum::abs_upper() const {
    long e = zero_ ? zbound_ : val_;
    return pow_rat(Rat(1, p_), e);
}

bool equal_to_precision(const PadicNum& a, const PadicNum& b) {
    PadicNum d = a - b;
    if (d.is_zero()) return true;
    long abs_p = std::min(a.abs_precision(), b.abs_precision());
    return d.valuation() >= abs_p;
}

bool PadicNum::is_square() const {
    if (zero_) return true;
    if (p_ == 2) throw padic_mismatch("is_square: p=2 not supported");
    if (val_ % 2 != 0) return false;
    Int pk = mod_pow_p(p_, prec_);
    return mpz_legendre(unit_.get_mpz_t(), p_.get_mpz_t()) == 1;
}

PadicNum PadicNum::sqrt(std::optional<Int> seed) const {
    if (zero_) return PadicNum::zero(p_, zbound_ / 2);
    if (p_ == 2) throw padic_mismatch("sqrt: p=2 not supported");
    if (val_ % 2 != 0) throw padic_mismatch("sqrt: odd valuation");
    if (mpz_legendre(unit_.get_mpz_t(), p_.get_mpz_t()) != 1)
        throw padic_mismatch("sqrt: unit is not a quadratic residue");

    // root mod p by Tonelli-Shanks, then Hensel lifting doubles digits
    Int r;
    {
        Int u = unit_ % p_;
        Int exp = (p_ + 1) / 4;
        if (p_ % 4 == 3) {
            mpz_powm(r.get_mpz_t(), u.get_mpz_t(), exp.get_mpz_t(), p_.get_mpz_t());
        } else {
            // generic Tonelli-Shanks
            Int q = p_ - 1;
            long s = 0;
            while (q % 2 == 0) { q /= 2; ++s; }
            Int z = 2;
            while (mpz_legendre(z.get_mpz_t(), p_.get_mpz_t()) != -1) ++z;
            Int m = s, c, t, rr;
            mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p_.get_mpz_t());
            mpz_powm(t.get_mpz_t(), u.get_mpz_t(), q.get_mpz_t(), p_.get_mpz_t());
            Int e = (q + 1) / 2;
            mpz_powm(rr.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
            while (t != 1) {
                Int tt = t;
                long i = 0;
                while (tt != 1) { tt = tt * tt % p_; ++i; }
                Int b = c;
                for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p_;
                rr = rr * b % p_;
                c = b * b % p_;
                t = t * c % p_;
                m = i;
            }
            r = rr;
        }
    }
    if (seed) {
        Int want = *seed % p_;
        if (want < 0) want += p_;
        if (r != want) r = p_ - r;
        if (r % p_ != want) throw padic_mismatch("sqrt: seed is not a root mod p");
    }
    // lift to precision prec_
    long have = 1;
    Int mod = p_;
    while (have < prec_) {
        have = std::min(2 * have, prec_);
        mod = mod_pow_p(p_, have);
        Int two_r_inv = inv_mod(2 * r % mod, mod);
        r = (r - (r * r - unit_) % mod * two_r_inv) % mod;
        if (r < 0) r += mod;
    }
    return PadicNum(p_, val_ / 2, r, prec_);
}

std::string PadicNum::to_string() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_.get_str() << "^" << zbound_ << ")";
        return os.str();
    }
    os << p_.get_str() << "^" << val_ << "*(" << unit_.get_str() << " + O(" << p_.get_str() << "^"
       << prec_ << "))";
    return os.str();
}

}  // namespace gflab
