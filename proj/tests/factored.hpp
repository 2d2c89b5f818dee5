#pragma once

// Square systems with known rational roots for certification checks.

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "test_support.hpp"
#include "tq/certify.hpp"
#include "tq/slp.hpp"

namespace tq::testing {

inline Rational lo(const Interval& a) { return Rational(a.mid) - Rational(a.rad); }
inline Rational hi(const Interval& a) { return Rational(a.mid) + Rational(a.rad); }

inline bool contains(const Interval& a, const Rational& v) { return lo(a) <= v && v <= hi(a); }

// Rational point (real) inside a certified box.
inline bool box_contains(const CertificateBox& b, const std::vector<Rational>& root) {
  for (std::size_t i = 0; i < root.size(); ++i)
    if (!contains(b.intervals[i].re, root[i]) || !contains(b.intervals[i].im, Rational(0))) return false;
  return true;
}

// y = A x, F_i = prod_k (y_i - r_ik), each factor with a rational root; the
// coefficients of A and the roots are parameters.
struct Factored {
  CertSystem sys;
  std::vector<std::vector<Rational>> roots;  // all exact solutions x
};

inline Factored factored_system(Rng& rng, std::size_t n) {
  const std::size_t np = n * n + 2 * n;
  slp::Builder b(n + np);
  std::vector<Rational> p;
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      A[i][j] = random_rational(rng, 5, 4);
      if (i == j) A[i][j] += 7;
      p.push_back(A[i][j]);
    }
  std::vector<std::array<Rational, 2>> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i][0] = random_rational(rng, 9, 5);
    do r[i][1] = random_rational(rng, 9, 5);
    while (r[i][1] == r[i][0]);
    p.push_back(r[i][0]);
    p.push_back(r[i][1]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    slp::Expr y = b.input(n + i * n) * b.input(0);
    for (std::size_t j = 1; j < n; ++j) y = y + b.input(n + i * n + j) * b.input(j);
    const auto r0 = b.input(n + n * n + 2 * i), r1 = b.input(n + n * n + 2 * i + 1);
    b.add_output((y - r0) * (y - r1));
  }
  Factored f;
  f.sys.tape = std::make_shared<const slp::Tape>(std::move(b).build());
  f.sys.n = n;
  f.sys.params = p;

  // Roots: solve A x = y exactly for every choice of y.
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
      M[i][n] = r[i][(mask >> i) & 1];
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (M[piv][c] == 0) ++piv;
      std::swap(M[piv], M[c]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || M[i][c] == 0) continue;
        const Rational t = M[i][c] / M[c][c];
        for (std::size_t j = c; j <= n; ++j) M[i][j] -= t * M[c][j];
      }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = M[i][n] / M[i][i];
    f.roots.push_back(x);
  }
  return f;
}

inline Eigen::VectorXcd to_vec(const std::vector<Rational>& x) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i].get_d();
  return v;
}

}  // namespace tq::testing
