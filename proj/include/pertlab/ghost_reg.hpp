#pragma once

// Ghost-state regularisation of the divergent energy ratio.
//
// Replacing psi0^2 by rho = (psi0 + i sigma chi0)^2 in both J functionals,
//   J_sigma[S; X] = int_0^X dy rho(y)^-1 int_0^y dz rho(z) S(z),
// gives E_n as the sigma -> 0 limit of J_sigma[V_n] / J_sigma[1]. Every
// quantity carries a finite cutoff X: the limit is taken in sigma at fixed X.
//
// Because (i/sigma) d/dx (psi0/Psi0) = 1/Psi0^2 (Wronskian = 1), integration
// by parts gives the exact finite-cutoff identity
//   J_sigma[S; X] = (i/sigma) [ (psi0/Psi0)(X) I_rho(X) - int_0^X psi0 Psi0 S ],
// whose second term is the singular piece carrying <psi0|S|psi0>.

#include <span>
#include <vector>

#include "pertlab/exact_series.hpp"
#include "pertlab/quad_engine.hpp"

namespace pertlab {

struct SigmaSweepRow {
  int order = 0;
  real sigma = 0;
  real cutoff = 0;
  complex numerator;    // J_sigma[V_n; X]
  complex denominator;  // J_sigma[1; X]
  complex ratio;
  real oracle = 0;
  real abs_error = 0;  // |ratio - E_n|
  real imag_abs = 0;   // |Im ratio|
};

SigmaSweepRow ghost_energy(int n, real sigma, real cutoff, const PerturbationSeries& series,
                           const QuadConfig& cfg = {});

enum class FitModel { linear, quadratic };

struct ExtrapolationResult {
  real limit = 0;
  FitModel model = FitModel::quadratic;
  real residual = 0;  // root-mean-square fit residual
  std::vector<real> sigmas;
  std::vector<real> values;  // Re ratio per sigma
};

// Least-squares fit of Re(ratio) in powers of sigma; quadratic when at least
// four rows are given, linear for exactly three. Rows must share (n, X) and
// have strictly decreasing sigma.
ExtrapolationResult sigma_extrapolate(std::span<const SigmaSweepRow> rows);

// Relative residual of the integration-by-parts identity.
real ibp_identity_check(const NumericPoly& S, real sigma, real cutoff, const QuadConfig& cfg = {});

struct DominantSplit {
  complex singular;   // -(i/sigma) int_0^X psi0 Psi0 S
  complex remainder;  // J_sigma[S; X] - singular
};

DominantSplit dominant_term_split(const NumericPoly& S, real sigma, real cutoff,
                                  const QuadConfig& cfg = {});

std::string to_string(FitModel model);

}  // namespace pertlab
