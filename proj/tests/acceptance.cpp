// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
// The exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pertlab/basis.hpp"
#include "pertlab/cli.hpp"
#include "pertlab/exact_series.hpp"
#include "pertlab/ghost_reg.hpp"
#include "pertlab/quad_engine.hpp"
#include "pertlab/sc_method.hpp"
#include "pertlab/sweep.hpp"

using namespace pertlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds, <= 0 for none
  std::function<Outcome()> check;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

real rel(real a, real b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

const PerturbationSeries& harmonic() {
  static const auto s = build_series(RationalPoly::monomial(1, 2), 6);
  return s;
}
const PerturbationSeries& quartic() {
  static const auto s = build_series(RationalPoly::monomial(1, 4), 3);
  return s;
}

const std::vector<real> kSigmas{1e-8, 1e-9, 1e-10, 1e-11, 1e-12};

Outcome exact_oracle() {
  const auto series = build_series(RationalPoly::monomial(1, 2), 6);
  const auto binomial = oracle::sqrt_series(6);
  Outcome o;
  for (int n = 1; n <= 6; ++n) o.pass = o.pass && series.energy(n) == binomial[n];
  o.detail = "E1..E6 = " + to_string(series.energy(1)) + ", " + to_string(series.energy(2)) +
             ", " + to_string(series.energy(3)) + ", " + to_string(series.energy(4)) + ", " +
             to_string(series.energy(5)) + ", " + to_string(series.energy(6));
  return o;
}

Outcome first_order_oracle() {
  const auto series = build_series(RationalPoly::monomial(1, 4), 1);
  return {series.energy(1) == mpq_class(3, 4), "E1 = " + to_string(series.energy(1))};
}

Outcome first_order_sc() {
  const real err = std::abs(sc_energy(1, 6, quartic()).ratio - 0.75);
  return {err <= 1e-6, "|ratio - 3/4| = " + sci(err) + " (tol 1e-6)"};
}

Outcome first_order_ghost() {
  const auto rows = sweep::ghost_rows(1, kSigmas, 6, quartic(), {}, sweep::Execution::parallel);
  const real err = std::abs(sigma_extrapolate(rows).limit - 0.75);
  return {err <= 1e-6, "|extrapolated - 3/4| = " + sci(err) + " (tol 1e-6)"};
}

// Each method is timed separately against its own 5 s budget.
Outcome first_order() {
  Outcome o;
  for (auto* method : {first_order_oracle, first_order_sc, first_order_ghost}) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome part = method();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.pass = o.pass && part.pass && seconds < 5.0;
    o.detail += (o.detail.empty() ? "" : "; ") + part.detail + " in " + sci(seconds) + " s";
  }
  return o;
}

Outcome divergent_ratio() {
  const auto v1 = quartic().v_eff(1).to_numeric();
  const auto one = NumericPoly::constant(1);
  const std::vector<real> xs{4, 5, 6};
  std::vector<real> num, den, err;
  for (real x : xs) {
    num.push_back(nested_J(v1, x, 0).outer.real());
    den.push_back(nested_J(one, x, 0).outer.real());
    err.push_back(std::abs(num.back() / den.back() - 0.75));
  }
  Outcome o;
  std::ostringstream d;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const real gn = num[i] / num[i - 1], gd = den[i] / den[i - 1];
    o.pass = o.pass && gn >= 1e3 && gd >= 1e3;
    d << "growth X=" << xs[i - 1] << "->" << xs[i] << ": " << sci(gn) << "/" << sci(gd) << "; ";
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    o.pass = o.pass && err[i] <= 1e-5;
    if (i > 0) o.pass = o.pass && err[i] < err[i - 1];
    d << "|err(" << xs[i] << ")| = " << sci(err[i]) << (i + 1 < xs.size() ? ", " : "");
  }
  d << " (tol 1e-5, decreasing)";
  o.detail = d.str();
  return o;
}

Outcome asymptotics() {
  const real x = 6;
  const real j1 = nested_J(NumericPoly::constant(1), x, 0).outer.real();
  const real scaled = j1 * 2 * x * std::exp(-x * x);
  const real dev = std::abs(scaled / oracle::kHalfSqrtPi - 1);
  return {dev <= 0.02, "J(1,6) 2X e^{-X^2} = " + sci(scaled) + ", deviation " + sci(dev) +
                           " (tol 2%)"};
}

Outcome parametric_identities() {
  Outcome o;
  real affine = 0;
  for (int n = 1; n <= 3; ++n) {
    for (real x : {3.0, 4.5, 6.0}) {
      const real p0 = psi_n_closed_form(n, 0, x, quartic()).value;
      const real p1 = psi_n_closed_form(n, 1, x, quartic()).value;
      for (real alpha : {-2.5, 0.5, 3.0}) {
        const real direct = psi_n_closed_form(n, alpha, x, quartic()).value;
        affine = std::max(affine, rel(direct, p0 + alpha * (p1 - p0)));
      }
    }
  }
  real ratio_gap = 0;
  for (int n = 1; n <= 3; ++n) {
    for (real x : {4.0, 5.0, 6.0}) {
      const real from_trials =
          sc_energy_from_trials(n, x, quartic(), SolutionMethod::closed_form);
      ratio_gap = std::max(ratio_gap, rel(from_trials, sc_energy(n, x, quartic()).ratio));
    }
  }
  const auto F = [](int n) {
    return psi_n_closed_form(n, 1, 5, quartic()).value -
           psi_n_closed_form(n, 0, 5, quartic()).value;
  };
  const real f_gap = rel(F(1), F(2));
  o.pass = affine <= 1e-9 && ratio_gap <= 1e-10 && f_gap <= 1e-10;
  o.detail = "affinity " + sci(affine) + " (tol 1e-9), trial vs J ratio " + sci(ratio_gap) +
             " (tol 1e-10), F(5) n=1 vs n=2 " + sci(f_gap) + " (tol 1e-10)";
  return o;
}

Outcome shooting() {
  real worst = 0;
  for (real alpha : {0.0, 1.0}) {
    for (int i = 1; i <= 60; ++i) {
      const real x = 0.1 * i;
      const real closed = psi_n_closed_form(1, alpha, x, quartic()).value;
      const real shot = psi_n_shoot(1, alpha, x, quartic()).value;
      worst = std::max(worst, rel(closed, shot));
    }
  }
  const bool origin = psi_n_shoot(1, 0, 0, quartic()).value == 0 &&
                      psi_n_closed_form(1, 1, 0, quartic()).value == 0;
  return {origin && worst <= 1e-8,
          "max relative gap on x in (0, 6] = " + sci(worst) + " (tol 1e-8)"};
}

Outcome regularization_identities() {
  const std::vector<NumericPoly> sources{NumericPoly::constant(1), NumericPoly({0, 1}),
                                         quartic().v_eff(1).to_numeric()};
  real ibp = 0;
  for (const auto& s : sources)
    for (real sigma : {0.1, 0.01}) ibp = std::max(ibp, ibp_identity_check(s, sigma, 5));

  // (psi0/Psi0)' by a five-point stencil, independent of the Wronskian.
  real pointwise = 0;
  const real h = 2e-4;
  for (real sigma : {0.1, 0.01}) {
    for (int i = 1; i <= 100; ++i) {
      const real x = 0.1 * i;
      const auto u = [sigma](real t) {
        return basis::psi0(t) / complex{basis::psi0(t), sigma * basis::ghost_chi0(t)};
      };
      const complex du = (u(x - 2 * h) - 8.0 * u(x - h) + 8.0 * u(x + h) - u(x + 2 * h)) / (12 * h);
      const complex mixed{basis::psi0(x), sigma * basis::ghost_chi0(x)};
      const complex lhs = 1.0 / (mixed * mixed);
      pointwise = std::max(pointwise, std::abs(lhs - complex{0, 1 / sigma} * du) / std::abs(lhs));
    }
  }

  std::vector<real> xs;
  for (int i = 0; i <= 1000; ++i) xs.push_back(0.01 * i);
  const auto profile = basis::ghost_profile(xs);
  real wronskian = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const real w = basis::psi0(xs[i]) * profile[i].chi_prime -
                   basis::psi0_prime(xs[i]) * profile[i].chi;
    wronskian = std::max(wronskian, std::abs(w - 1));
  }
  return {ibp <= 1e-8 && pointwise <= 1e-8 && wronskian <= 1e-10,
          "IBP residual " + sci(ibp) + " (tol 1e-8), pointwise " + sci(pointwise) +
              " (tol 1e-8), Wronskian " + sci(wronskian) + " (tol 1e-10)"};
}

Outcome regularized_limit() {
  Outcome o;
  real worst_limit = 0, worst_imag = 0;
  for (const auto* series : {&harmonic(), &quartic()}) {
    for (int n = 1; n <= 3; ++n) {
      const auto rows = sweep::ghost_rows(n, kSigmas, 6, *series, {}, sweep::Execution::parallel);
      const real limit = sigma_extrapolate(rows).limit;
      worst_limit = std::max(worst_limit, std::abs(limit - series->energy(n).get_d()));
      worst_imag = std::max(worst_imag, rows.back().imag_abs);
    }
  }
  o.pass = worst_limit <= 1e-6 && worst_imag <= 1e-5;
  o.detail = "max |limit - E_n| = " + sci(worst_limit) + " (tol 1e-6), max |Im| at sigma=1e-12 " +
             sci(worst_imag) + " (tol 1e-5)";
  return o;
}

std::string invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"pertlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> runs{
      {"all", "--perturbation", "1/2 x^2 + x^4", "--order", "3", "--xcut-grid", "4:6:0.5"},
      {"all", "--perturbation", "x^4", "--order", "3", "--format", "json"},
      {"ghost", "--perturbation", "x^2", "--order", "2", "--sigma-grid", "1e-1,1e-2,1e-3",
       "--xcut", "6", "--extrapolate"}};
  Outcome o;
  std::size_t bytes = 0;
  for (const auto& args : runs) {
    const std::string a = invoke(args), b = invoke(args);
    o.pass = o.pass && a == b && a.rfind("0\n", 0) == 0;
    bytes += a.size();
  }
  o.detail = std::to_string(runs.size()) + " invocations, " + std::to_string(bytes) +
             " bytes compared";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact oracle, V1 = x^2 vs sqrt(1 + lambda)", 1.0, exact_oracle},
      {2, "first order, V1 = x^4: oracle, sc_energy and ghost extrapolation at X = 6", 0,
       first_order},
      {3, "divergent numerator and denominator, convergent ratio", 0, divergent_ratio},
      {4, "Laplace asymptotics of J(1, X)", 0, asymptotics},
      {5, "parametric-method identities", 0, parametric_identities},
      {6, "shooting cross-check", 0, shooting},
      {7, "regularization identities", 0, regularization_identities},
      {8, "regularized limit, n <= 3, V1 in {x^2, x^4}, X = 6", 60.0, regularized_limit},
      {9, "CLI determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = sci(seconds) + " s";
    if (c.time_limit > 0) {
      const bool in_time = seconds < c.time_limit;
      o.pass = o.pass && in_time;
      timing += " (limit " + std::to_string(static_cast<int>(c.time_limit)) + " s)";
    }
    if (!o.pass) ++failures;
    std::printf("%s [%d] %s: %s; %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), timing.c_str());
  }
  std::printf("%d failed\n", failures);
  return failures;
}
