#pragma once

// Iterated integrals against the ground-state weight and its ghost-mixed
// complex deformation:
//
//   I(y) = int_0^y w(z) S(z) dz,   J(X) = int_0^X I(y) / w(y) dy,
//
// with w = psi0^2 for sigma = 0 and w = rho = (psi0 + i sigma chi0)^2
// otherwise. The pair is integrated as one initial-value problem
// I' = w S, J' = I / w, I(0) = J(0) = 0. For sigma != 0 the ghost state is
// co-integrated in the same system, so no tabulation of chi0 is needed.
// A negative sigma yields the complex conjugate of the +|sigma| result.

#include <cstddef>

#include "pertlab/rational_poly.hpp"
#include "pertlab/real.hpp"

namespace pertlab {

struct QuadConfig {
  real rtol = 1e-10;
  real atol = 1e-14;
  std::size_t max_steps = 2'000'000;
  real cutoff_max = kCutoffMax;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct NestedIntegralResult {
  real cutoff = 0;
  complex inner;  // I(X)
  complex outer;  // J(X)
  // Sum of the local error estimates of J over accepted steps.
  real error_estimate = 0;
  std::size_t steps = 0;
  bool tolerance_met = true;
};

NestedIntegralResult nested_J(const NumericPoly& S, real cutoff, real sigma,
                              const QuadConfig& cfg = {});

// int_0^X psi0 Psi0 S dy (psi0^2 S when sigma = 0).
complex weighted_integral(const NumericPoly& S, real cutoff, real sigma,
                          const QuadConfig& cfg = {});

}  // namespace pertlab
