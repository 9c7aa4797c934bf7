#pragma once

// JSON encodings shared by the command-line tool. Big integers are written as
// decimal strings.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "annulus/annular.hpp"
#include "annulus/cpoly.hpp"
#include "annulus/errors.hpp"
#include "annulus/matrixsim.hpp"
#include "annulus/numbers.hpp"

namespace annulus {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) {
  return Json{{"num", boost::multiprecision::numerator(q).str()}, {"den", boost::multiprecision::denominator(q).str()}};
}

inline Json to_json(const CPoly& p) {
  Json coeffs = Json::array();
  for (auto a : p.coefficients()) coeffs.push_back(a);
  return coeffs;
}

inline Json to_json(const std::optional<CrossingWitness>& w) {
  if (!w) return nullptr;
  return Json{{"kind", to_string(w->kind)}, {"elements", w->elements}};
}

inline Json to_json(const TraceEstimate& e) {
  return Json{{"mean", e.mean.real()},
              {"mean_imag", e.mean.imag()},
              {"std_error", e.std_error},
              {"std_error_imag", e.std_error_imag},
              {"trials", e.trials},
              {"seed", e.seed}};
}

/// Parses "3", "-2", "3/4" or "0.125" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  auto digits = [&](BigInt& v, std::size_t& count) {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    count = i - start;
  };
  BigInt num = 0, den = 1;
  std::size_t n = 0;
  digits(num, n);
  if (n == 0) throw ParseError("expected a number", i);
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = 0;
    digits(den, n);
    if (n == 0) throw ParseError("expected a denominator", i);
    if (den == 0) throw ParseError("zero denominator", i);
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    BigInt frac = 0;
    digits(frac, n);
    if (n == 0) throw ParseError("expected digits after '.'", i);
    den = power(BigInt(10), n);
    num = num * den + frac;
  }
  if (i != text.size()) throw ParseError(std::string("unexpected '") + text[i] + "'", i);
  return Rational(negative ? BigInt(-num) : num, den);
}

}  // namespace annulus
