#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "pertlab/real.hpp"

namespace pertlab {

class NumericPoly;

// Even polynomial with exact rational coefficients: sum_k c_k x^(2k).
// Odd powers are structurally absent; trailing zero coefficients are trimmed.
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(const mpq_class& constant);  // NOLINT: constants convert implicitly

  // Coefficients keyed by the actual power of x. Throws ParityError on a
  // nonzero odd power.
  static RationalPoly from_powers(const std::map<int, mpq_class>& by_power);
  static RationalPoly monomial(const mpq_class& coefficient, int power);

  bool is_zero() const { return coeffs_.empty(); }
  // Highest power of x present, or -1 for the zero polynomial.
  int degree() const { return coeffs_.empty() ? -1 : 2 * static_cast<int>(coeffs_.size()) - 2; }
  // Coefficient of x^power (zero for odd or absent powers).
  mpq_class coefficient(int power) const;
  // Coefficients of x^0, x^2, x^4, ...
  const std::vector<mpq_class>& even_coefficients() const { return coeffs_; }

  // -p'' + 2 x p', which maps even polynomials to even polynomials.
  RationalPoly hermite_operator() const;

  NumericPoly to_numeric() const;
  real evaluate(real x) const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const mpq_class& s, const RationalPoly& p);
  RationalPoly operator-() const;
  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator-=(const RationalPoly& other);

  friend bool operator==(const RationalPoly& a, const RationalPoly& b);

 private:
  explicit RationalPoly(std::vector<mpq_class> coeffs);
  void trim();

  std::vector<mpq_class> coeffs_;
};

// Prints in the perturbation grammar, highest power first: "x^4 - 3/8 x^2 + 9/32".
std::string to_string(const RationalPoly& p);
std::string to_string(const mpq_class& q);

// Double-precision copy of an even polynomial for quadrature integrands.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(std::vector<real> even_coefficients)
      : coeffs_(std::move(even_coefficients)) {}

  static NumericPoly constant(real c) { return NumericPoly({c}); }

  real operator()(real x) const {
    const real x2 = x * x;
    real acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x2 + *it;
    return acc;
  }

  bool is_zero() const {
    for (real c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  const std::vector<real>& even_coefficients() const { return coeffs_; }

  // a * p + b, used for the parametric integrand alpha - V.
  NumericPoly affine(real scale, real shift) const {
    std::vector<real> c = coeffs_;
    if (c.empty()) c.push_back(0);
    for (real& v : c) v *= scale;
    c[0] += shift;
    return NumericPoly(std::move(c));
  }

 private:
  std::vector<real> coeffs_;
};

}  // namespace pertlab
