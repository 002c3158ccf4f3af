#include "gflab/rational.hpp"

#include <cstdlib>

namespace gflab {

Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rat pow_rat(const Rat& b, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), b.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), b.get_den_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    if (b == 0) throw std::domain_error("pow_rat: zero to negative power");
    return 1 / pow_rat(b, -e);
}

long ord_p(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("ord_p: zero");
    Int m = abs(n);
    long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

long ord_p(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("ord_p: zero");
    long v = ord_p(Int(x.get_num()), p);
    if (v > 0) return v;
    return -ord_p(Int(x.get_den()), p);
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

std::string rat_to_string_explicit(const Rat& x) {
    return Int(x.get_num()).get_str() + "/" + Int(x.get_den()).get_str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::vector<Int> divisors(const Int& n) {
    Int m = abs(n);
    if (m == 0) throw std::domain_error("divisors: zero");
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            small.push_back(d);
            if (d * d != m) large.push_back(m / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

Int divisor_count(const Int& n) {
    Int m = abs(n);
    if (m == 0) throw std::domain_error("divisor_count: zero");
    Int count = 1;
    Int rem = m;
    for (Int p = 2; p * p <= rem; ++p) {
        if (rem % p == 0) {
            int e = 0;
            while (rem % p == 0) { rem /= p; ++e; }
            count *= e + 1;
        }
    }
    if (rem > 1) count *= 2;
    return count;
}

Int squarefree_kernel(const Rat& x) {
    if (x == 0) throw std::domain_error("squarefree_kernel: zero");
    Int m = abs(Int(x.get_num()) * Int(x.get_den()));
    Int kernel = 1;
    Int rem = m;
    for (Int p = 2; p * p <= rem; ++p) {
        if (rem % p == 0) {
            int e = 0;
            while (rem % p == 0) { rem /= p; ++e; }
            if (e % 2) kernel *= p;
        }
    }
    if (rem > 1) kernel *= rem;
    if (x < 0) kernel = -kernel;
    return kernel;
}

}  // namespace gflab
