#pragma once

// Parametric (trial-energy) route to the n-th order energy.
//
// Treating the order-n equation
//   (H0 - E0) psi_n(alpha, x) = (alpha - V_n) psi0
// as an ODE with a free parameter alpha, the solution with psi_n(alpha, 0) = 0
// and zero slope at the origin is
//   psi_n(alpha, x) = -psi0(x) J(alpha - V_n, x).
// It is affine in alpha, F(x) = psi_n(1, x) - psi_n(0, x) = -psi0(x) J(1, x)
// does not depend on n, and the energy follows from the cutoff value
//   E_n = -psi_n(0, X) / F(X) = J(V_n, X) / J(1, X).
// Both J values grow like exp(X^2) while the ratio converges; its exact error
// is (f_n(X) - f_n(0)) / J(1, X).

#include <span>
#include <vector>

#include "pertlab/exact_series.hpp"
#include "pertlab/quad_engine.hpp"

namespace pertlab {

enum class SolutionMethod { closed_form, shooting };

struct ParametricSolution {
  int order = 0;
  real alpha = 0;
  real cutoff = 0;
  real value = 0;
  SolutionMethod method = SolutionMethod::closed_form;
};

ParametricSolution psi_n_closed_form(int n, real alpha, real x, const PerturbationSeries& series,
                                     const QuadConfig& cfg = {});

// Direct integration of -u'' + (x^2 - 1) u = (alpha - V_n) psi0, u(0) = u'(0) = 0.
ParametricSolution psi_n_shoot(int n, real alpha, real x, const PerturbationSeries& series,
                               const QuadConfig& cfg = {});

real universal_F(real x, const QuadConfig& cfg = {});

struct ScSweepRow {
  int order = 0;
  real cutoff = 0;
  real numerator = 0;    // J(V_n, X)
  real denominator = 0;  // J(1, X)
  real ratio = 0;
  real oracle = 0;
  real abs_error = 0;
  // J(1, X) 2X exp(-X^2), which tends to sqrt(pi)/2.
  real scaled_asymptotic = 0;
};

inline constexpr real kScCutoffMin = 3;

// Requires 3 <= X <= cutoff_max.
ScSweepRow sc_energy(int n, real cutoff, const PerturbationSeries& series,
                     const QuadConfig& cfg = {});

// Energy from the two trial solutions, -psi_n(0, X) / (psi_n(1, X) - psi_n(0, X)).
real sc_energy_from_trials(int n, real cutoff, const PerturbationSeries& series,
                           SolutionMethod method, const QuadConfig& cfg = {});

std::vector<ScSweepRow> divergence_diagnostics(int n, std::span<const real> grid,
                                               const PerturbationSeries& series,
                                               const QuadConfig& cfg = {});

}  // namespace pertlab
