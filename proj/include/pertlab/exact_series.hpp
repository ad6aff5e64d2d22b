#pragma once

// Exact Rayleigh-Schroedinger hierarchy for the half-line oscillator
// H = -d^2/dx^2 + x^2 + lambda V1 with V1 an even polynomial.
//
// Writing psi_n = f_n psi0 turns every order into the polynomial problem
//   -f_n'' + 2x f_n' = E_n - V_n,
//   V_n = V1 f_{n-1} - sum_{i=1}^{n-1} E_i f_{n-i},
// where the energy is fixed by solvability, E_n = <V_n>, and the free
// constant by orthogonality, <f_n> = 0. All arithmetic is exact.

#include <string>
#include <vector>

#include "pertlab/rational_poly.hpp"

namespace pertlab {

// <p> = int_0^inf p psi0^2 dx / int_0^inf psi0^2 dx, using <x^(2k)> = (2k-1)!!/2^k.
mpq_class gaussian_moment(const RationalPoly& p);

struct OrderSolution {
  mpq_class energy;
  RationalPoly f;
};

// Solves -f'' + 2x f' = E - v_eff for (E, f) with <f> = 0.
OrderSolution solve_order(const RationalPoly& v_eff);

struct OrderRecord {
  mpq_class energy;
  RationalPoly f;
  RationalPoly v_eff;
};

class PerturbationSeries {
 public:
  PerturbationSeries(RationalPoly v1, std::string tag);

  const std::string& tag() const { return tag_; }
  const RationalPoly& perturbation() const { return v1_; }
  int order() const { return static_cast<int>(orders_.size()); }

  // n = 0 gives E0 = 1 and f0 = 1.
  mpq_class energy(int n) const;
  RationalPoly f(int n) const;
  // Effective perturbation of order n >= 1.
  const RationalPoly& v_eff(int n) const;

  void append(OrderRecord record) { orders_.push_back(std::move(record)); }

 private:
  const OrderRecord& record(int n) const;

  RationalPoly v1_;
  std::string tag_;
  std::vector<OrderRecord> orders_;
};

// V_n from the orders already stored in `series`. Requires series.order() >= n - 1.
RationalPoly effective_perturbation(int n, const PerturbationSeries& series);

PerturbationSeries build_series(const RationalPoly& v1, int max_order, std::string tag = {});

// "E1 = 3/4" lines, one per order; with `with_polynomials` also the f_n and V_n lines.
std::string format_series(const PerturbationSeries& series, bool with_polynomials = false);

}  // namespace pertlab
