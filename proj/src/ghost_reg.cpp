#include "pertlab/ghost_reg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pertlab/basis.hpp"
#include "pertlab/error.hpp"

namespace pertlab {
namespace {

void check_sigma(real sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma))
    throw std::invalid_argument("sigma must be positive and finite");
}

complex checked(const NestedIntegralResult& r) {
  if (!r.tolerance_met) throw NumericalError("nested integral did not reach the requested tolerance");
  return r.outer;
}

}  // namespace

std::string to_string(FitModel model) {
  return model == FitModel::linear ? "linear" : "quadratic";
}

SigmaSweepRow ghost_energy(int n, real sigma, real cutoff, const PerturbationSeries& series,
                           const QuadConfig& cfg) {
  check_sigma(sigma);
  if (n < 1 || n > series.order())
    throw std::invalid_argument("order " + std::to_string(n) + " not available in series");
  const complex numerator = checked(nested_J(series.v_eff(n).to_numeric(), cutoff, sigma, cfg));
  const complex denominator = checked(nested_J(NumericPoly::constant(1), cutoff, sigma, cfg));
  const complex ratio = numerator / denominator;
  const real oracle = series.energy(n).get_d();
  return {.order = n,
          .sigma = sigma,
          .cutoff = cutoff,
          .numerator = numerator,
          .denominator = denominator,
          .ratio = ratio,
          .oracle = oracle,
          .abs_error = std::abs(ratio - oracle),
          .imag_abs = std::abs(ratio.imag())};
}

ExtrapolationResult sigma_extrapolate(std::span<const SigmaSweepRow> rows) {
  if (rows.size() < 3) throw std::invalid_argument("sigma_extrapolate: need at least 3 rows");
  ExtrapolationResult result;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.order != rows[0].order || row.cutoff != rows[0].cutoff)
      throw std::invalid_argument("sigma_extrapolate: rows must share order and cutoff");
    if (i > 0 && !(row.sigma < rows[i - 1].sigma))
      throw std::invalid_argument("sigma_extrapolate: sigma must be strictly decreasing");
    result.sigmas.push_back(row.sigma);
    result.values.push_back(row.ratio.real());
  }
  result.model = rows.size() >= 4 ? FitModel::quadratic : FitModel::linear;

  const auto& v = result.values;
  if (std::all_of(v.begin(), v.end(), [&](real x) { return x == v.front(); })) {
    result.limit = v.front();
    return result;
  }

  // Powers of sigma / sigma_max keep the design matrix well scaled.
  const int columns = result.model == FitModel::quadratic ? 3 : 2;
  const auto m = static_cast<Eigen::Index>(rows.size());
  const real scale = result.sigmas.front();
  Eigen::MatrixXd design(m, columns);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const real t = result.sigmas[static_cast<std::size_t>(i)] / scale;
    for (int j = 0; j < columns; ++j) design(i, j) = std::pow(t, j);
    rhs(i) = v[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(rhs);
  result.limit = coeffs(0);
  result.residual = std::sqrt((design * coeffs - rhs).squaredNorm() / static_cast<real>(m));
  return result;
}

real ibp_identity_check(const NumericPoly& S, real sigma, real cutoff, const QuadConfig& cfg) {
  check_sigma(sigma);
  const NestedIntegralResult nested = nested_J(S, cutoff, sigma, cfg);
  const complex lhs = checked(nested);
  const complex overlap = weighted_integral(S, cutoff, sigma, cfg);
  const basis::MixedState state = basis::mixed_state(cutoff, sigma);
  const complex i_over_sigma{0, 1 / sigma};
  const complex rhs =
      i_over_sigma * (basis::psi0(cutoff) / state.mixed * nested.inner - overlap);
  const real scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0 ? 0 : std::abs(lhs - rhs) / scale;
}

DominantSplit dominant_term_split(const NumericPoly& S, real sigma, real cutoff,
                                  const QuadConfig& cfg) {
  check_sigma(sigma);
  const complex total = checked(nested_J(S, cutoff, sigma, cfg));
  const complex singular = complex{0, -1 / sigma} * weighted_integral(S, cutoff, sigma, cfg);
  return {singular, total - singular};
}

}  // namespace pertlab
