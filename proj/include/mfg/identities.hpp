#pragma once

#include <cstdint>
#include <iosfwd>

#include "mfg/measure.hpp"

namespace mfg {

// Residuals of the measure-level identities over randomized small
// measures: the exact second-order expansion of the potential and the
// two summation routes for J.
struct IdentityReport {
  int trials = 0;
  double max_derivative_residual = 0.0;  // |lhs - rhs| / (1 + |rhs|)
  double max_j_route_residual = 0.0;     // |J - J_direct| / max(|J|, tiny)
  double max_linearity_residual = 0.0;   // L and H against convex weight mixes

  bool ok() const {
    return max_derivative_residual <= 1e-10 && max_j_route_residual <= 1e-12 &&
           max_linearity_residual <= 1e-12;
  }
};

// Runs `trials` randomized checks (3-5 atoms each) and reports the worst
// residuals; logs one summary line per block to `log` when given.
IdentityReport run_identity_suite(int trials, std::uint64_t seed, std::ostream* log = nullptr);

}  // namespace mfg
