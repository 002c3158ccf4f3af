#pragma once

#include <functional>
#include <optional>

#include "gflab/ball.hpp"

namespace gflab {

struct reconstruction_failed : std::runtime_error {
    explicit reconstruction_failed(const std::string& what) : std::runtime_error(what) {}
};

// Rational reconstruction from a ball: continued-fraction convergents of the
// midpoint, accepted only when the convergent lies inside the ball and the
// denominator stays within the bound.
std::optional<Rat> reconstruct_rational(const RealBall& x, const Int& den_bound);

// Same, then revalidated: `recompute` must produce a ball at roughly twice
// the working precision and is required to still contain the candidate.
std::optional<Rat> reconstruct_rational_checked(const RealBall& x, const Int& den_bound,
                                                const std::function<RealBall()>& recompute);

}  // namespace gflab
