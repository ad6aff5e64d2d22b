#include "pertlab/rational_poly.hpp"

#include <algorithm>
#include <sstream>

#include "pertlab/error.hpp"

namespace pertlab {

RationalPoly::RationalPoly(const mpq_class& constant) : coeffs_{constant} { trim(); }

RationalPoly::RationalPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPoly RationalPoly::from_powers(const std::map<int, mpq_class>& by_power) {
  std::vector<mpq_class> coeffs;
  for (const auto& [power, c] : by_power) {
    if (power < 0) throw ConfigError("negative power x^" + std::to_string(power));
    if (c == 0) continue;
    if (power % 2 != 0) throw ParityError("parity violation: odd power x^" + std::to_string(power));
    const auto k = static_cast<std::size_t>(power / 2);
    if (coeffs.size() <= k) coeffs.resize(k + 1);
    coeffs[k] += c;
  }
  return RationalPoly(std::move(coeffs));
}

RationalPoly RationalPoly::monomial(const mpq_class& coefficient, int power) {
  return from_powers({{power, coefficient}});
}

mpq_class RationalPoly::coefficient(int power) const {
  if (power < 0 || power % 2 != 0) return 0;
  const auto k = static_cast<std::size_t>(power / 2);
  return k < coeffs_.size() ? coeffs_[k] : mpq_class(0);
}

void RationalPoly::trim() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPoly RationalPoly::hermite_operator() const {
  // x^(2k) -> 4k x^(2k) - 2k(2k-1) x^(2k-2)
  std::vector<mpq_class> out(coeffs_.size());
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    const long p = 2 * static_cast<long>(k);
    out[k] += 2 * p * coeffs_[k];
    out[k - 1] -= p * (p - 1) * coeffs_[k];
  }
  return RationalPoly(std::move(out));
}

NumericPoly RationalPoly::to_numeric() const {
  std::vector<real> c;
  c.reserve(coeffs_.size());
  for (const auto& q : coeffs_) c.push_back(q.get_d());
  return NumericPoly(std::move(c));
}

real RationalPoly::evaluate(real x) const { return to_numeric()(x); }

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r = a;
  r += b;
  return r;
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r = a;
  r -= b;
  return r;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPoly(std::move(out));
}

RationalPoly operator*(const mpq_class& s, const RationalPoly& p) {
  std::vector<mpq_class> out = p.coeffs_;
  for (auto& c : out) c *= s;
  return RationalPoly(std::move(out));
}

bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

std::string to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const RationalPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  const auto& c = p.even_coefficients();
  bool first = true;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    const bool negative = c[k] < 0;
    const mpq_class magnitude = abs(c[k]);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << to_string(magnitude);
      continue;
    }
    if (magnitude != 1) os << to_string(magnitude) << ' ';
    os << "x^" << 2 * k;
  }
  return os.str();
}

}  // namespace pertlab
