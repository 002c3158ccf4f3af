#pragma once

#include <optional>

#include "gflab/polyq.hpp"
#include "gflab/qseries.hpp"

namespace gflab {

// gamma_mu f^(mu) + ... + gamma_1 f' + gamma_0 f = 0, gamma_i in Q[X]
struct LinearODE {
    long order = 0;                // mu
    std::vector<PolyQ> gamma;      // size order+1, gamma[i] multiplies f^(i)
    long x_degree() const;
    std::string to_string() const;
};

// residual series sum_i gamma_i * f^(i); zero to its certified order iff the
// operator annihilates f as far as f is known
QSeries apply_ode(const LinearODE& ode, const QSeries& f);

// smallest (order, then X-degree) nonzero operator with the given bounds that
// annihilates every known coefficient of f; the linear system keeps
// `held_out` rows in reserve and verifies them after solving.
std::optional<LinearODE> find_ode(const QSeries& f, long max_order, long max_degree,
                                  long held_out = 50);

}  // namespace gflab
