#pragma once

#include <string>

#include "gflab/qseries.hpp"

namespace gflab {

struct unsupported_exponent : std::domain_error {
    unsupported_exponent() : std::domain_error("sigma_series: exponent must be 1, 3 or 5") {}
};
struct integrality_violation : std::logic_error {
    explicit integrality_violation(const std::string& name)
        : std::logic_error("non-integral coefficient in " + name) {}
};

// s_k(q) = sum_{n>=1} sigma_k(n) q^n
QSeries sigma_series(int k, long order);

enum class Eisenstein { E2, E4, E6 };
QSeries eisenstein(Eisenstein which, long order);

// Tate curve coefficients (a4, a6); both integral
std::pair<QSeries, QSeries> tate_coefficients(long order);

QSeries delta_series(long order);    // (E4^3 - E6^2)/1728
QSeries j_series(long order);        // Laurent, pole of order 1
QSeries inv_j_series(long order);    // 1/j, power series
QSeries h_series(long order);        // E6/E4 = 1 + 4h
QSeries alpha_series(long order);    // sqrt(E6/E4) with value 1 at 0
QSeries theta_series(long order);    // compositional inverse of 1/j
QSeries F_series(long order);        // alpha o theta

// names accepted: s1 s3 s5 E2 E4 E6 a4_tate a6_tate delta j inv_j h alpha theta F
bool is_known_series(const std::string& name);
QSeries named_series(const std::string& name, long order);

// max_n |a_n|^(1/n) over 1 <= n <= order (double precision estimate)
double growth_estimate(const QSeries& s);

// process-wide memoization; regenerating at a higher order extends prefixes.
// GFLAB_CACHE_DIR, when set, adds a disk layer in the series cache format.
void clear_series_cache();

}  // namespace gflab
