#pragma once

// Dense two-phase primal simplex over exact rationals with Bland's
// smallest-index rule, which guarantees termination.
//
//   maximize  c·x   subject to  A x ≤ b,  x ≥ 0.

#include <cstddef>
#include <vector>

#include "modalkit/exactmath.hpp"

namespace modalkit {

struct StandardLp {
  std::vector<std::vector<Rational>> a;  // m rows of n coefficients
  std::vector<Rational> b;               // m
  std::vector<Rational> c;               // n
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct StandardLpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;       // primal vertex (feasible whenever status != Infeasible)
  std::vector<Rational> duals;   // y ≥ 0 with Aᵀy ≥ c and b·y = value (Optimal only)
  std::vector<Rational> ray;     // x-direction with A·ray ≤ 0, ray ≥ 0, c·ray > 0 (Unbounded only)
  std::size_t pivots = 0;
};

/// Throws DimensionMismatch on inconsistent sizes.
StandardLpSolution simplex_maximize(const StandardLp& lp);

}  // namespace modalkit
