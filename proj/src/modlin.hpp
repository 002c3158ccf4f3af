#pragma once

// internal: kernel computation of integer matrices, modular-first with
// rational reconstruction; exact verification is the caller's job

#include <cstdint>
#include <optional>
#include <vector>

#include "gflab/rational.hpp"

namespace gflab::modlin {

// dense matrix over Z/p, p < 2^62
struct ModMatrix {
    uint64_t p;
    size_t rows, cols;
    std::vector<uint64_t> a;  // row major
    uint64_t& at(size_t i, size_t j) { return a[i * cols + j]; }
    uint64_t at(size_t i, size_t j) const { return a[i * cols + j]; }
};

uint64_t mod_inv(uint64_t x, uint64_t p);

// reduced row echelon; returns pivot columns
std::vector<size_t> rref(ModMatrix& m);

// kernel basis mod p in reduced form: one vector per free column, with 1 at
// that column and zeros at the other free columns
std::vector<std::vector<uint64_t>> kernel_mod_p(const ModMatrix& m);

// reduce an exact integer matrix mod p
ModMatrix reduce_matrix(const std::vector<std::vector<Int>>& m, uint64_t p);

// Kernel of an exact integer matrix as exact rational vectors, found by
// CRT over word primes plus rational reconstruction.  Result vectors are
// normalized like the mod-p reduced kernel (unit at their free column).
// Returns nullopt if reconstruction keeps failing (caller should treat as
// needing more primes or as a genuinely hard instance).
std::optional<std::vector<std::vector<Rat>>> kernel_exact(const std::vector<std::vector<Int>>& m,
                                                          int max_primes = 24);

// true rank is certified >= the mod-p rank for any p; full column rank mod a
// single prime certifies an empty rational kernel
size_t rank_mod_p(const std::vector<std::vector<Int>>& m, uint64_t p);

// rational reconstruction of x mod m with |num|,|den| <= bound (Wang's method)
std::optional<Rat> crt_rational(const Int& x, const Int& modulus, const Int& bound);

extern const uint64_t kPrimes[8];

}  // namespace gflab::modlin
