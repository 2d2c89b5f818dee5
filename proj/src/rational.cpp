#include "tq/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace tq {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  const auto dot = s.find('.');
  const auto exp = s.find_first_of("eE");
  if (dot != std::string::npos || exp != std::string::npos) {
    // Decimal literal: read it digit by digit so that 0.1 stays 1/10.
    std::string mantissa = exp == std::string::npos ? s : s.substr(0, exp);
    long exponent = exp == std::string::npos ? 0 : std::stol(s.substr(exp + 1));
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
      negative = mantissa[0] == '-';
      mantissa.erase(mantissa.begin());
    }
    std::string digits;
    for (char c : mantissa) {
      if (c == '.') continue;
      if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal: " + s);
      digits.push_back(c);
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal literal: " + s);
    const auto dpos = mantissa.find('.');
    if (dpos != std::string::npos) exponent -= static_cast<long>(mantissa.size() - dpos - 1);
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(value);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace tq
