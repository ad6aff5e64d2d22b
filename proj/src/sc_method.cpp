#include "pertlab/sc_method.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pertlab/basis.hpp"
#include "pertlab/error.hpp"
#include "pertlab/ode.hpp"
#include "pertlab/sweep.hpp"

namespace pertlab {
namespace {

void check_order(int n, const PerturbationSeries& series) {
  if (n < 1 || n > series.order())
    throw std::invalid_argument("order " + std::to_string(n) + " not available in series");
}

real checked_outer(const NestedIntegralResult& r) {
  if (!r.tolerance_met) throw NumericalError("nested integral did not reach the requested tolerance");
  return r.outer.real();
}

}  // namespace

ParametricSolution psi_n_closed_form(int n, real alpha, real x, const PerturbationSeries& series,
                                     const QuadConfig& cfg) {
  check_order(n, series);
  const NumericPoly source = series.v_eff(n).to_numeric().affine(-1, alpha);
  const real j = checked_outer(nested_J(source, x, 0, cfg));
  return {.order = n,
          .alpha = alpha,
          .cutoff = x,
          .value = -basis::psi0(x) * j,
          .method = SolutionMethod::closed_form};
}

ParametricSolution psi_n_shoot(int n, real alpha, real x, const PerturbationSeries& series,
                               const QuadConfig& cfg) {
  check_order(n, series);
  cfg.validate();
  if (!(x >= 0)) throw std::invalid_argument("psi_n_shoot: x must be non-negative");
  if (x > cfg.cutoff_max) throw NumericalError("cutoff too large for scalar precision");
  const NumericPoly v = series.v_eff(n).to_numeric();
  auto rhs = [&v, alpha](real t, const std::array<real, 2>& y, std::array<real, 2>& dy) {
    dy[0] = y[1];
    dy[1] = (t * t - 1) * y[0] - (alpha - v(t)) * basis::psi0(t);
  };
  ode::Options opts{.rtol = cfg.rtol, .atol = cfg.atol, .max_steps = cfg.max_steps,
                    .initial_step = 1e-3};
  auto solver = ode::make_dopri5<2>(rhs, 0.0, {0.0, 0.0}, opts, {0u, 0u});
  if (!solver.advance_to(x)) throw NumericalError("shooting integration did not converge");
  return {.order = n,
          .alpha = alpha,
          .cutoff = x,
          .value = solver.state()[0],
          .method = SolutionMethod::shooting};
}

real universal_F(real x, const QuadConfig& cfg) {
  return -basis::psi0(x) * checked_outer(nested_J(NumericPoly::constant(1), x, 0, cfg));
}

ScSweepRow sc_energy(int n, real cutoff, const PerturbationSeries& series, const QuadConfig& cfg) {
  check_order(n, series);
  if (!(cutoff >= kScCutoffMin))
    throw std::invalid_argument("sc_energy: cutoff must be at least 3");
  const real numerator = checked_outer(nested_J(series.v_eff(n).to_numeric(), cutoff, 0, cfg));
  const real denominator = checked_outer(nested_J(NumericPoly::constant(1), cutoff, 0, cfg));
  const real ratio = numerator / denominator;
  const real oracle = series.energy(n).get_d();
  return {.order = n,
          .cutoff = cutoff,
          .numerator = numerator,
          .denominator = denominator,
          .ratio = ratio,
          .oracle = oracle,
          .abs_error = std::abs(ratio - oracle),
          .scaled_asymptotic = denominator * 2 * cutoff * std::exp(-cutoff * cutoff)};
}

real sc_energy_from_trials(int n, real cutoff, const PerturbationSeries& series,
                           SolutionMethod method, const QuadConfig& cfg) {
  const auto trial = [&](real alpha) {
    return method == SolutionMethod::closed_form
               ? psi_n_closed_form(n, alpha, cutoff, series, cfg).value
               : psi_n_shoot(n, alpha, cutoff, series, cfg).value;
  };
  const real at_zero = trial(0);
  const real at_one = trial(1);
  return -at_zero / (at_one - at_zero);
}

std::vector<ScSweepRow> divergence_diagnostics(int n, std::span<const real> grid,
                                               const PerturbationSeries& series,
                                               const QuadConfig& cfg) {
  for (real x : grid) {
    if (!(x >= kScCutoffMin && x <= cfg.cutoff_max))
      throw std::invalid_argument("divergence grid must lie within [3, cutoff_max]");
  }
  return sweep::sc_rows(n, grid, series, cfg, sweep::Execution::parallel);
}

}  // namespace pertlab
