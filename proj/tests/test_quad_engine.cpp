#include "pertlab/quad_engine.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pertlab/error.hpp"

using namespace pertlab;

namespace {
const NumericPoly kOne = NumericPoly::constant(1);
const NumericPoly kX2({0, 1});
const NumericPoly kX4({0, 0, 1});

real rel(real a, real b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("zero integrand") {
  const auto r = nested_J(NumericPoly(), 5, 0);
  CHECK(r.inner == complex{});
  CHECK(r.outer == complex{});
  CHECK(nested_J(NumericPoly({0, 0}), 5, 0.1).outer == complex{});
  CHECK(nested_J(kOne, 0, 0).outer == complex{});
}

TEST_CASE("small-cutoff expansions") {
  const real x = 0.05;
  const real j1 = x * x / 2 + std::pow(x, 4) / 6 + 2 * std::pow(x, 6) / 45 + std::pow(x, 8) / 105;
  const real j2 = std::pow(x, 4) / 12 + std::pow(x, 6) / 45 + std::pow(x, 8) / 210;
  CHECK(rel(nested_J(kOne, x, 0).outer.real(), j1) < 1e-9);
  CHECK(rel(nested_J(kX2, x, 0).outer.real(), j2) < 1e-9);
}

TEST_CASE("agreement with brute-force trapezoid") {
  // One Richardson step removes the O(h^2) term of the trapezoid oracle.
  const auto reference = [](auto S, real cutoff) {
    const real coarse = oracle::nested_trapezoid(S, cutoff, 2e-4);
    const real fine = oracle::nested_trapezoid(S, cutoff, 1e-4);
    return (4 * fine - coarse) / 3;
  };
  const QuadConfig cfg{.rtol = 1e-11};
  for (real cutoff : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(rel(nested_J(kOne, cutoff, 0, cfg).outer.real(),
              reference([](double) { return 1.0; }, cutoff)) < 1e-9);
    CHECK(rel(nested_J(kX2, cutoff, 0, cfg).outer.real(),
              reference([](double y) { return y * y; }, cutoff)) < 1e-9);
    CHECK(rel(nested_J(kX4, cutoff, 0, cfg).outer.real(),
              reference([](double y) { return y * y * y * y; }, cutoff)) < 1e-9);
  }
}

TEST_CASE("high-precision reference values at large cutoff") {
  CHECK(rel(nested_J(kOne, 4, 0).outer.real(), oracle::kJ1At4) < 1e-9);
  CHECK(rel(nested_J(kOne, 5, 0).outer.real(), oracle::kJ1At5) < 1e-9);
  CHECK(rel(nested_J(kOne, 6, 0).outer.real(), oracle::kJ1At6) < 1e-9);
}

TEST_CASE("Laplace asymptotics of J(1, X)") {
  const real x = 6;
  const real scaled = nested_J(kOne, x, 0).outer.real() * 2 * x * std::exp(-x * x);
  CHECK(std::abs(scaled / oracle::kHalfSqrtPi - 1) < 0.02);
}

TEST_CASE("sigma = 0 results are real") {
  const auto r = nested_J(kX4, 6, 0);
  CHECK(r.outer.imag() == 0);
  CHECK(r.inner.imag() == 0);
  CHECK(r.tolerance_met);
  CHECK(r.steps > 0);
  CHECK(r.error_estimate > 0);
  CHECK(r.error_estimate < 1e-8 * r.outer.real());
}

TEST_CASE("J(1, X) grows monotonically and at least like exp(X^2)/10") {
  real previous = 0;
  for (real x = 0.5; x <= 8.0; x += 0.5) {
    const real j = nested_J(kOne, x, 0).outer.real();
    CHECK(j > previous);
    previous = j;
  }
  for (real x1 : {4.0, 4.5, 5.0}) {
    for (real x2 : {5.5, 6.0, 7.0}) {
      const real ratio = nested_J(kOne, x2, 0).outer.real() / nested_J(kOne, x1, 0).outer.real();
      CHECK(ratio > std::exp(x2 * x2 - x1 * x1) / 10);
    }
  }
}

TEST_CASE("halving the tolerance moves results by less than the coarse tolerance") {
  for (real tol : {1e-6, 1e-8, 1e-10}) {
    for (real sigma : {0.0, 1e-3}) {
      const auto coarse = nested_J(kX4, 5.5, sigma, {.rtol = tol});
      const auto fine = nested_J(kX4, 5.5, sigma, {.rtol = tol / 2});
      CHECK(std::abs(coarse.outer - fine.outer) <= tol * std::abs(fine.outer));
    }
  }
}

TEST_CASE("weighted integral") {
  CHECK(rel(weighted_integral(kOne, 10, 0).real(), oracle::kHalfSqrtPi) < 1e-10);
  CHECK(rel(weighted_integral(kX4, 10, 0).real(), 0.75 * oracle::kHalfSqrtPi) < 1e-10);
  CHECK(weighted_integral(kOne, 10, 0).imag() == 0);
  const complex at_zero = weighted_integral(kX4, 5, 0);
  real previous = INFINITY;
  for (real sigma : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const real gap = std::abs(weighted_integral(kX4, 5, sigma) - at_zero);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-6);
}

TEST_CASE("negative sigma conjugates the ghost-mixed integrals") {
  for (real sigma : {0.1, 1e-3}) {
    const auto plus = nested_J(kX2, 5, sigma);
    const auto minus = nested_J(kX2, 5, -sigma);
    CHECK(std::abs(minus.outer - std::conj(plus.outer)) <= 1e-14 * std::abs(plus.outer));
  }
}

TEST_CASE("guards") {
  CHECK(std::isfinite(nested_J(kOne, kCutoffMax, 0).outer.real()));
  CHECK(std::isfinite(std::abs(nested_J(kOne, kCutoffMax, 0.1).outer)));
  CHECK_THROWS_AS(nested_J(kOne, 25.01, 0), NumericalError);
  CHECK_THROWS_AS(nested_J(kOne, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(nested_J(kOne, 1, 0, {.rtol = 0}), std::invalid_argument);
  CHECK_THROWS_AS(nested_J(kOne, 1, 0, {.cutoff_max = 30}), std::invalid_argument);
  CHECK_THROWS_AS(weighted_integral(kOne, 26, 0), NumericalError);
  CHECK_FALSE(nested_J(kOne, 6, 0, {.max_steps = 20}).tolerance_met);
}

TEST_CASE("J(1, X) follows its asymptotic series up to the overflow guard") {
  // J(1, X) ~ (sqrt(pi)/2) e^{X^2} / (2X) sum_k (2k-1)!! / (2X^2)^k
  for (real x : {15.0, 18.0, 20.0, 22.0, 25.0}) {
    real sum = 0, term = 1;
    for (int k = 0; k < 8; ++k) {
      sum += term;
      term *= (2 * k + 1) / (2 * x * x);
    }
    const real asymptotic = oracle::kHalfSqrtPi * std::exp(x * x) / (2 * x) * sum;
    const auto r = nested_J(kOne, x, 0);
    CHECK(r.tolerance_met);
    CHECK(rel(r.outer.real(), asymptotic) < 1e-9);
  }
}
