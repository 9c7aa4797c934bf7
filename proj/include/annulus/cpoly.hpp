#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annulus/numbers.hpp"

namespace annulus {

/// Integer polynomial in one formal variable c. Coefficients are stored
/// lowest degree first with trailing zeros trimmed, so the zero polynomial
/// has no coefficients at all.
class CPoly {
 public:
  using Coefficient = std::int64_t;

  CPoly() = default;
  explicit CPoly(std::vector<Coefficient> coeffs) : c_(std::move(coeffs)) { trim(); }

  static CPoly monomial(std::size_t degree, Coefficient k = 1) {
    std::vector<Coefficient> v(degree + 1, 0);
    v[degree] = k;
    return CPoly(std::move(v));
  }

  const std::vector<Coefficient>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
  Coefficient operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0; }

  void add_term(std::size_t degree, Coefficient k) {
    if (c_.size() <= degree) c_.resize(degree + 1, 0);
    c_[degree] += k;
    trim();
  }

  CPoly& operator+=(const CPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }

  Rational evaluate(const Rational& c) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * c + *it;
    return r;
  }

  CPoly derivative() const {
    std::vector<Coefficient> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<Coefficient>(k) * c_[k]);
    return CPoly(std::move(d));
  }

  bool operator==(const CPoly&) const = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Coefficient> c_;
};

/// "c + 3c^2 + c^3"; the zero polynomial prints as "0".
inline std::string format_cpoly(const CPoly& p) {
  std::string out;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    auto a = p[k];
    if (a == 0) continue;
    if (!out.empty()) {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    } else if (a < 0) {
      out += "-";
      a = -a;
    }
    if (k == 0 || a != 1) out += std::to_string(a);
    if (k >= 1) out += "c";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace annulus
