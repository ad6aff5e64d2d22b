#include "pertlab/exact_series.hpp"

#include <sstream>
#include <stdexcept>

#include "pertlab/basis.hpp"

namespace pertlab {

mpq_class gaussian_moment(const RationalPoly& p) {
  mpq_class sum = 0;
  mpq_class moment = 1;  // <x^(2k)>
  const auto& c = p.even_coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 0) moment *= mpq_class(2 * static_cast<long>(k) - 1, 2);
    sum += c[k] * moment;
  }
  sum.canonicalize();
  return sum;
}

OrderSolution solve_order(const RationalPoly& v_eff) {
  const mpq_class energy = gaussian_moment(v_eff);
  // Right-hand side E - V, solved from the top power down. The operator sends
  // x^(2k) to 4k x^(2k) plus a lower power, so the system is triangular.
  RationalPoly rhs = RationalPoly(energy) - v_eff;
  std::map<int, mpq_class> f_coeffs;
  for (int power = rhs.degree(); power >= 2; power -= 2) {
    const mpq_class top = rhs.coefficient(power);
    if (top == 0) continue;
    const mpq_class c = top / (2 * power);
    f_coeffs[power] = c;
    rhs -= RationalPoly::monomial(c, power).hermite_operator();
  }
  // The constant equation is the solvability condition E = <V>.
  if (!rhs.is_zero()) throw std::logic_error("solve_order: solvability condition violated");
  RationalPoly f = RationalPoly::from_powers(f_coeffs);
  f -= RationalPoly(gaussian_moment(f));
  return {energy, std::move(f)};
}

PerturbationSeries::PerturbationSeries(RationalPoly v1, std::string tag)
    : v1_(std::move(v1)), tag_(std::move(tag)) {}

const OrderRecord& PerturbationSeries::record(int n) const {
  if (n < 1 || n > order())
    throw std::out_of_range("perturbation series has no order " + std::to_string(n));
  return orders_[static_cast<std::size_t>(n - 1)];
}

mpq_class PerturbationSeries::energy(int n) const {
  return n == 0 ? mpq_class(basis::kGroundEnergy) : record(n).energy;
}

RationalPoly PerturbationSeries::f(int n) const {
  return n == 0 ? RationalPoly(mpq_class(1)) : record(n).f;
}

const RationalPoly& PerturbationSeries::v_eff(int n) const { return record(n).v_eff; }

RationalPoly effective_perturbation(int n, const PerturbationSeries& series) {
  if (n < 1) throw std::invalid_argument("effective_perturbation: order must be >= 1");
  if (series.order() < n - 1)
    throw std::invalid_argument("effective_perturbation: lower orders missing for n = " +
                                std::to_string(n));
  RationalPoly v = series.perturbation() * series.f(n - 1);
  for (int i = 1; i < n; ++i) v -= series.energy(i) * series.f(n - i);
  return v;
}

PerturbationSeries build_series(const RationalPoly& v1, int max_order, std::string tag) {
  if (max_order < 1) throw std::invalid_argument("build_series: order must be >= 1");
  PerturbationSeries series(v1, tag.empty() ? to_string(v1) : std::move(tag));
  for (int n = 1; n <= max_order; ++n) {
    RationalPoly v = effective_perturbation(n, series);
    auto [energy, f] = solve_order(v);
    series.append({std::move(energy), std::move(f), std::move(v)});
  }
  return series;
}

std::string format_series(const PerturbationSeries& series, bool with_polynomials) {
  std::ostringstream os;
  for (int n = 1; n <= series.order(); ++n) {
    os << 'E' << n << " = " << to_string(series.energy(n)) << '\n';
    if (with_polynomials) {
      os << 'V' << n << " = " << to_string(series.v_eff(n)) << '\n';
      os << 'f' << n << " = " << to_string(series.f(n)) << '\n';
    }
  }
  return os.str();
}

}  // namespace pertlab
