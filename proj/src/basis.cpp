#include "pertlab/basis.hpp"

#include <stdexcept>
#include <string>

#include "pertlab/error.hpp"
#include "pertlab/ode.hpp"

namespace pertlab::basis {
namespace {

constexpr ode::Options kGhostOptions{.rtol = 1e-13, .atol = 1e-300, .max_steps = 1'000'000,
                                     .initial_step = 1e-3};

void check_argument(real x) {
  if (!(x >= 0)) throw std::invalid_argument("basis: x must be finite and non-negative");
  if (x > kCutoffMax)
    throw NumericalError("cutoff too large for scalar precision: x = " + std::to_string(x));
}

auto ghost_integrator() {
  auto rhs = [](real x, const std::array<real, 2>& y, std::array<real, 2>& dy) {
    dy[0] = y[1];
    dy[1] = (x * x - 1) * y[0];
  };
  // chi and chi' share one scale so the slope error is judged against the
  // size of the solution it belongs to.
  return ode::make_dopri5<2>(rhs, 0.0, {0.0, 1.0}, kGhostOptions, {0u, 0u});
}

}  // namespace

GhostValue ghost_state(real x) {
  check_argument(x);
  auto solver = ghost_integrator();
  if (!solver.advance_to(x)) throw NumericalError("ghost state integration did not converge");
  return {solver.state()[0], solver.state()[1]};
}

real ghost_chi0(real x) { return ghost_state(x).chi; }

std::vector<GhostValue> ghost_profile(std::span<const real> xs) {
  std::vector<GhostValue> out;
  out.reserve(xs.size());
  auto solver = ghost_integrator();
  real previous = 0;
  for (real x : xs) {
    check_argument(x);
    if (x < previous) throw std::invalid_argument("ghost_profile: grid must be ascending");
    if (!solver.advance_to(x)) throw NumericalError("ghost state integration did not converge");
    out.push_back({solver.state()[0], solver.state()[1]});
    previous = x;
  }
  return out;
}

MixedState mixed_state(real x, real sigma, const GhostValue& ghost) {
  if (!(sigma > 0)) throw std::invalid_argument("mixed_state: sigma must be positive");
  const complex mixed{psi0(x), sigma * ghost.chi};
  return {mixed, mixed * mixed};
}

MixedState mixed_state(real x, real sigma) { return mixed_state(x, sigma, ghost_state(x)); }

}  // namespace pertlab::basis
