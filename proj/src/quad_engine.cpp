#include "pertlab/quad_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pertlab/basis.hpp"
#include "pertlab/error.hpp"
#include "pertlab/ode.hpp"

namespace pertlab {
namespace {

ode::Options ode_options(const QuadConfig& cfg) {
  return {.rtol = cfg.rtol, .atol = cfg.atol, .max_steps = cfg.max_steps, .initial_step = 1e-3};
}

void check_cutoff(real cutoff, const QuadConfig& cfg) {
  if (!(cutoff >= 0)) throw std::invalid_argument("cutoff must be finite and non-negative");
  if (cutoff > cfg.cutoff_max)
    throw NumericalError("cutoff too large for scalar precision: X = " + std::to_string(cutoff));
}

NestedIntegralResult nested_real(const NumericPoly& S, real cutoff, const QuadConfig& cfg) {
  // y = (I, J)
  auto rhs = [&S](real x, const std::array<real, 2>& y, std::array<real, 2>& dy) {
    const real x2 = x * x;
    dy[0] = std::exp(-x2) * S(x);
    dy[1] = std::exp(x2) * y[0];
  };
  auto solver = ode::make_dopri5<2>(rhs, 0.0, {0.0, 0.0}, ode_options(cfg));
  const bool ok = solver.advance_to(cutoff);
  const auto& y = solver.state();
  return {.cutoff = cutoff,
          .inner = {y[0], 0.0},
          .outer = {y[1], 0.0},
          .error_estimate = solver.stats().error_sum[1],
          .steps = solver.stats().accepted,
          .tolerance_met = ok};
}

NestedIntegralResult nested_complex(const NumericPoly& S, real cutoff, real sigma,
                                    const QuadConfig& cfg) {
  // y = (chi, chi', Re I, Im I, Re J, Im J)
  auto rhs = [&S, sigma](real x, const std::array<real, 6>& y, std::array<real, 6>& dy) {
    dy[0] = y[1];
    dy[1] = (x * x - 1) * y[0];
    const complex mixed{basis::psi0(x), sigma * y[0]};
    const complex inv = 1.0 / mixed;
    const complex rho = mixed * mixed;
    const complex dI = rho * S(x);
    const complex dJ = inv * inv * complex{y[2], y[3]};
    dy[2] = dI.real();
    dy[3] = dI.imag();
    dy[4] = dJ.real();
    dy[5] = dJ.imag();
  };
  auto solver = ode::make_dopri5<6>(rhs, 0.0, {0.0, 1.0, 0.0, 0.0, 0.0, 0.0}, ode_options(cfg),
                                    {0u, 0u, 1u, 1u, 2u, 2u});
  const bool ok = solver.advance_to(cutoff);
  const auto& y = solver.state();
  const auto& err = solver.stats().error_sum;
  return {.cutoff = cutoff,
          .inner = {y[2], y[3]},
          .outer = {y[4], y[5]},
          .error_estimate = std::hypot(err[4], err[5]),
          .steps = solver.stats().accepted,
          .tolerance_met = ok};
}

}  // namespace

void QuadConfig::validate() const {
  if (!(rtol > 0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (!(atol >= 0)) throw std::invalid_argument("absolute floor must be non-negative");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (!(cutoff_max > 0 && cutoff_max <= kCutoffMax))
    throw std::invalid_argument("overflow guard must lie in (0, 25]");
}

NestedIntegralResult nested_J(const NumericPoly& S, real cutoff, real sigma,
                              const QuadConfig& cfg) {
  cfg.validate();
  check_cutoff(cutoff, cfg);
  if (!std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite");
  if (S.is_zero() || cutoff == 0) {
    NestedIntegralResult zero;
    zero.cutoff = cutoff;
    return zero;
  }
  return sigma == 0 ? nested_real(S, cutoff, cfg) : nested_complex(S, cutoff, sigma, cfg);
}

complex weighted_integral(const NumericPoly& S, real cutoff, real sigma, const QuadConfig& cfg) {
  cfg.validate();
  check_cutoff(cutoff, cfg);
  if (!std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite");
  if (S.is_zero() || cutoff == 0) return {};

  // y = (chi, chi', Re W, Im W); the ghost channel is inert when sigma = 0.
  auto rhs = [&S, sigma](real x, const std::array<real, 4>& y, std::array<real, 4>& dy) {
    dy[0] = y[1];
    dy[1] = (x * x - 1) * y[0];
    const real p = basis::psi0(x);
    const real s = S(x);
    dy[2] = p * p * s;
    dy[3] = p * sigma * y[0] * s;
  };
  auto solver = ode::make_dopri5<4>(rhs, 0.0, {0.0, 1.0, 0.0, 0.0}, ode_options(cfg),
                                    {0u, 0u, 1u, 1u});
  if (!solver.advance_to(cutoff))
    throw NumericalError("weighted integral did not reach the requested tolerance");
  return {solver.state()[2], solver.state()[3]};
}

}  // namespace pertlab
