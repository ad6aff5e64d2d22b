#pragma once

// Unperturbed half-line oscillator H0 = -d^2/dx^2 + x^2 on [0, inf) with an
// even-parity (zero-slope) condition at the origin.
//
// The ground state psi0 = exp(-x^2/2) has energy E0 = 1. The ghost state chi0
// solves the same equation with chi0(0) = 0, chi0'(0) = 1; it grows like
// exp(x^2/2)/(2x) and is not square integrable. With this normalisation the
// Wronskian psi0 chi0' - psi0' chi0 is exactly 1. Any other normalisation of
// chi0 is a rescaling that the mixing parameter sigma absorbs, so nothing
// downstream depends on it once sigma -> 0.

#include <cmath>
#include <span>
#include <vector>

#include "pertlab/real.hpp"

namespace pertlab::basis {

inline constexpr real kGroundEnergy = 1;

template <class Real = real>
Real psi0(Real x) {
  return std::exp(-x * x / 2);
}

template <class Real = real>
Real psi0_prime(Real x) {
  return -x * psi0(x);
}

struct GhostValue {
  real chi = 0;
  real chi_prime = 0;
};

// chi0 and chi0' by forward integration of chi'' = (x^2 - 1) chi.
// Throws NumericalError when x exceeds kCutoffMax.
GhostValue ghost_state(real x);
real ghost_chi0(real x);

// One integration pass over an ascending grid.
std::vector<GhostValue> ghost_profile(std::span<const real> xs);

struct MixedState {
  complex mixed;    // Psi0 = psi0 + i sigma chi0
  complex density;  // rho = Psi0^2, the plain complex square
};

MixedState mixed_state(real x, real sigma);
MixedState mixed_state(real x, real sigma, const GhostValue& ghost);

}  // namespace pertlab::basis
