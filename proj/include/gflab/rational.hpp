#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gflab {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_integer(const Rat& x) { return mpz_cmp_ui(x.get_den_mpz_t(), 1) == 0; }

Int pow_int(const Int& b, unsigned long e);
Rat pow_rat(const Rat& b, long e);

// p-adic valuation; throws on zero input.
long ord_p(const Int& n, const Int& p);
long ord_p(const Rat& x, const Int& p);

// exact string forms: "n" or "n/d", lowest terms
std::string rat_to_string(const Rat& x);
// cache form always writes the denominator ("n/1")
std::string rat_to_string_explicit(const Rat& x);
std::optional<Rat> rat_from_string(const std::string& s);

Int factorial(unsigned long n);
Int binomial(unsigned long n, unsigned long k);

// positive divisors in increasing order (trial division; fine for the sizes used here)
std::vector<Int> divisors(const Int& n);
Int divisor_count(const Int& n);

// squarefree kernel of a nonzero rational: the unique squarefree integer D
// with x = D * (rational square)
Int squarefree_kernel(const Rat& x);

}  // namespace gflab
