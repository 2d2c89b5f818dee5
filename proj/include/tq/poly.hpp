#pragma once

#include <cstddef>
#include <vector>

#include "tq/rational.hpp"

namespace tq {

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upwards. Always trimmed: no trailing zero coefficients.
class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(const Rational& constant) {  // NOLINT(google-explicit-constructor)
    if (sgn(constant) != 0) coeffs_.push_back(constant);
  }
  PolyQ(int constant) : PolyQ(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit PolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The monomial c * t^k.
  static PolyQ monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return PolyQ(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
  int order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (sgn(coeffs_[i]) != 0) return static_cast<int>(i);
    return -1;
  }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
  }

  PolyQ derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return PolyQ(std::move(d));
  }

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return PolyQ(std::move(c));
  }
  friend PolyQ operator-(const PolyQ& a) {
    std::vector<Rational> c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coeffs_[i];
    return PolyQ(std::move(c));
  }
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolyQ(std::move(c));
  }
  PolyQ& operator+=(const PolyQ& o) { return *this = *this + o; }
  PolyQ& operator-=(const PolyQ& o) { return *this = *this - o; }
  PolyQ& operator*=(const PolyQ& o) { return *this = *this * o; }

  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace tq
