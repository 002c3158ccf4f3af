#include "modlin.hpp"

namespace gflab::modlin {

const uint64_t kPrimes[8] = {
    2305843009213693951ull,  // 2^61 - 1
    2305843009213693921ull,
    2305843009213693907ull,
    2305843009213693723ull,
    2305843009213693693ull,
    2305843009213693669ull,
    2305843009213693613ull,
    2305843009213693561ull,
};

namespace {
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((__uint128_t)a * b % p);
}
inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
}  // namespace

uint64_t mod_inv(uint64_t x, uint64_t p) {
    // extended Euclid
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(x % p);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t, newt);
        newt -= q * t;
        std::swap(r, newr);
        newr -= q * r;
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

std::vector<size_t> rref(ModMatrix& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        uint64_t inv = mod_inv(m.at(row, col), m.p);
        for (size_t j = col; j < m.cols; ++j) m.at(row, j) = mulmod(m.at(row, j), inv, m.p);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            uint64_t f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = submod(m.at(i, j), mulmod(f, m.at(row, j), m.p), m.p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<uint64_t>> kernel_mod_p(const ModMatrix& m_in) {
    ModMatrix m = m_in;
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<uint64_t>> basis;
    for (size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<uint64_t> v(m.cols, 0);
        v[free_col] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            // pivot row r has leading 1 at pivots[r]
            uint64_t val = m.at(r, free_col);
            if (val) v[pivots[r]] = m.p - val;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

ModMatrix reduce_matrix(const std::vector<std::vector<Int>>& m, uint64_t p) {
    ModMatrix out;
    out.p = p;
    out.rows = m.size();
    out.cols = out.rows ? m[0].size() : 0;
    out.a.assign(out.rows * out.cols, 0);
    Int pp(static_cast<unsigned long>(p));
    for (size_t i = 0; i < out.rows; ++i)
        for (size_t j = 0; j < out.cols; ++j) {
            Int r = m[i][j] % pp;
            if (r < 0) r += pp;
            out.at(i, j) = r.get_ui();
        }
    return out;
}

size_t rank_mod_p(const std::vector<std::vector<Int>>& m, uint64_t p) {
    ModMatrix mm = reduce_matrix(m, p);
    return rref(mm).size();
}

std::optional<Rat> crt_rational(const Int& x, const Int& modulus, const Int& bound) {
    // Wang: lattice reduction on (modulus, 0), (x, 1) via Euclid
    Int r0 = modulus, r1 = x % modulus;
    if (r1 < 0) r1 += modulus;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) {
        // common factor means the pair does not represent a reduced fraction
        Int gm;
        mpz_gcd(gm.get_mpz_t(), g.get_mpz_t(), modulus.get_mpz_t());
        if (gm != 1) return std::nullopt;
        r1 /= g;
        t1 /= g;
    }
    Rat out(r1, t1);
    out.canonicalize();
    return out;
}

std::optional<std::vector<std::vector<Rat>>> kernel_exact(const std::vector<std::vector<Int>>& m,
                                                          int max_primes) {
    if (m.empty() || m[0].empty()) return std::vector<std::vector<Rat>>{};
    const size_t cols = m[0].size();

    // reference kernel shape from the first prime
    ModMatrix m0 = reduce_matrix(m, kPrimes[0]);
    std::vector<std::vector<uint64_t>> k0 = kernel_mod_p(m0);
    // try a second prime: if dimensions disagree, trust the smaller one and
    // restart the CRT from scratch on primes that agree with it
    size_t dim = k0.size();
    {
        ModMatrix m1 = reduce_matrix(m, kPrimes[1]);
        size_t d1 = kernel_mod_p(m1).size();
        dim = std::min(dim, d1);
    }
    if (dim == 0) return std::vector<std::vector<Rat>>{};

    std::vector<Int> crt_val(dim * cols, 0);
    Int crt_mod = 1;
    std::vector<std::vector<Rat>> result;
    for (int ip = 0; ip < max_primes && ip < 8; ++ip) {
        uint64_t p = kPrimes[ip];
        ModMatrix mp = reduce_matrix(m, p);
        std::vector<std::vector<uint64_t>> kp = kernel_mod_p(mp);
        if (kp.size() != dim) continue;  // unlucky prime
        // CRT fold
        Int pp(static_cast<unsigned long>(p));
        if (crt_mod == 1) {
            for (size_t v = 0; v < dim; ++v)
                for (size_t j = 0; j < cols; ++j) crt_val[v * cols + j] = Int(kp[v][j]);
            crt_mod = pp;
        } else {
            Int inv;
            Int cm = crt_mod % pp;
            mpz_invert(inv.get_mpz_t(), cm.get_mpz_t(), pp.get_mpz_t());
            for (size_t idx = 0; idx < dim * cols; ++idx) {
                Int cur = crt_val[idx] % pp;
                if (cur < 0) cur += pp;
                Int delta = (Int(kp[idx / cols][idx % cols]) - cur) % pp;
                if (delta < 0) delta += pp;
                crt_val[idx] += crt_mod * ((delta * inv) % pp);
            }
            crt_mod *= pp;
        }
        // attempt reconstruction
        Int bound;
        Int third = crt_mod / 3;
        mpz_sqrt(bound.get_mpz_t(), third.get_mpz_t());
        result.clear();
        bool ok = true;
        for (size_t v = 0; v < dim && ok; ++v) {
            std::vector<Rat> vec(cols);
            for (size_t j = 0; j < cols && ok; ++j) {
                auto r = crt_rational(crt_val[v * cols + j], crt_mod, bound);
                if (!r) ok = false;
                else vec[j] = *r;
            }
            if (ok) result.push_back(std::move(vec));
        }
        if (ok && !result.empty()) {
            // sanity: exact matrix * vector == 0
            bool verified = true;
            for (const auto& vec : result) {
                for (const auto& row : m) {
                    Rat acc;
                    for (size_t j = 0; j < cols; ++j)
                        if (vec[j] != 0) acc += Rat(row[j]) * vec[j];
                    if (acc != 0) { verified = false; break; }
                }
                if (!verified) break;
            }
            if (verified) return result;
        }
    }
    return std::nullopt;
}

}  // namespace gflab::modlin
