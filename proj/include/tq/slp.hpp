#pragma once

// Straight-line programs: a flat tape of ring operations recorded once and
// replayed in any scalar tier (exact rationals, rational polynomials, complex
// doubles, complex intervals), with forward-mode first derivatives.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "tq/poly.hpp"
#include "tq/rational.hpp"

namespace tq::slp {

enum class Op : std::uint8_t { input, constant, add, sub, mul, neg };

struct Instr {
  Op op;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

/// How a scalar tier embeds tape constants and recognizes zero seeds.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_constant(const Rational& q, double) { return q; }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
};

template <>
struct ScalarTraits<double> {
  static double from_constant(const Rational&, double d) { return d; }
  static bool is_zero(double v) { return v == 0.0; }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static std::complex<double> from_constant(const Rational&, double d) { return {d, 0.0}; }
  static bool is_zero(const std::complex<double>& v) { return v == std::complex<double>(0.0, 0.0); }
};

template <>
struct ScalarTraits<PolyQ> {
  static PolyQ from_constant(const Rational& q, double) { return PolyQ(q); }
  static bool is_zero(const PolyQ& v) { return v.is_zero(); }
};

class Builder;

class Tape {
 public:
  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t num_outputs() const { return outputs_.size(); }
  /// Number of instructions, inputs and constants included.
  std::size_t size() const { return code_.size(); }
  const std::vector<Instr>& code() const { return code_; }

  template <class T>
  void evaluate(std::span<const T> inputs, std::span<T> out) const {
    check_sizes(inputs.size(), out.size());
    std::vector<T> reg(code_.size());
    run(inputs, reg);
    for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = reg[outputs_[k]];
  }

  template <class T>
  std::vector<T> evaluate(std::span<const T> inputs) const {
    std::vector<T> out(outputs_.size());
    evaluate<T>(inputs, out);
    return out;
  }

  /// Values plus directional derivatives. `seeds` holds one row of
  /// `directions` entries per input (row-major); `out_derivs` receives one
  /// such row per output.
  template <class T>
  void forward(std::span<const T> inputs, std::span<const T> seeds, std::size_t directions,
               std::span<T> out, std::span<T> out_derivs) const;

 private:
  friend class Builder;

  void check_sizes(std::size_t n_in, std::size_t n_out) const {
    if (n_in != num_inputs_ || n_out != outputs_.size())
      throw std::invalid_argument("tape called with mismatched dimensions");
  }

  template <class T>
  void run(std::span<const T> inputs, std::vector<T>& reg) const {
    for (std::size_t r = 0; r < code_.size(); ++r) {
      const Instr& in = code_[r];
      switch (in.op) {
        case Op::input: reg[r] = inputs[in.a]; break;
        case Op::constant: reg[r] = ScalarTraits<T>::from_constant(constants_[in.a], constants_d_[in.a]); break;
        case Op::add: reg[r] = reg[in.a] + reg[in.b]; break;
        case Op::sub: reg[r] = reg[in.a] - reg[in.b]; break;
        case Op::mul: reg[r] = reg[in.a] * reg[in.b]; break;
        case Op::neg: reg[r] = -reg[in.a]; break;
      }
    }
  }

  std::vector<Instr> code_;
  std::vector<Rational> constants_;
  std::vector<double> constants_d_;
  std::vector<std::uint32_t> outputs_;
  std::size_t num_inputs_ = 0;
};

template <class T>
void Tape::forward(std::span<const T> inputs, std::span<const T> seeds, std::size_t directions,
                   std::span<T> out, std::span<T> out_derivs) const {
  check_sizes(inputs.size(), out.size());
  const std::size_t m = directions;
  if (seeds.size() != num_inputs_ * m || out_derivs.size() != outputs_.size() * m)
    throw std::invalid_argument("forward: seed or derivative buffer has the wrong size");

  thread_local std::vector<T> reg;
  thread_local std::vector<T> grad;
  thread_local std::vector<std::uint8_t> active;
  reg.resize(code_.size());
  grad.resize(code_.size() * m);
  active.assign(code_.size(), 0);

  for (std::size_t r = 0; r < code_.size(); ++r) {
    const Instr& in = code_[r];
    T* g = grad.data() + r * m;
    switch (in.op) {
      case Op::input: {
        reg[r] = inputs[in.a];
        const T* s = seeds.data() + in.a * m;
        bool any = false;
        for (std::size_t k = 0; k < m; ++k) {
          g[k] = s[k];
          any = any || !ScalarTraits<T>::is_zero(s[k]);
        }
        active[r] = any;
        break;
      }
      case Op::constant:
        reg[r] = ScalarTraits<T>::from_constant(constants_[in.a], constants_d_[in.a]);
        break;
      case Op::add:
      case Op::sub: {
        const bool plus = in.op == Op::add;
        reg[r] = plus ? reg[in.a] + reg[in.b] : reg[in.a] - reg[in.b];
        const bool aa = active[in.a], ab = active[in.b];
        active[r] = aa || ab;
        const T* ga = grad.data() + in.a * m;
        const T* gb = grad.data() + in.b * m;
        if (aa && ab) {
          for (std::size_t k = 0; k < m; ++k) g[k] = plus ? ga[k] + gb[k] : ga[k] - gb[k];
        } else if (aa) {
          for (std::size_t k = 0; k < m; ++k) g[k] = ga[k];
        } else if (ab) {
          for (std::size_t k = 0; k < m; ++k) g[k] = plus ? gb[k] : -gb[k];
        }
        break;
      }
      case Op::mul: {
        const T& va = reg[in.a];
        const T& vb = reg[in.b];
        reg[r] = va * vb;
        const bool aa = active[in.a], ab = active[in.b];
        active[r] = aa || ab;
        const T* ga = grad.data() + in.a * m;
        const T* gb = grad.data() + in.b * m;
        if (aa && ab) {
          for (std::size_t k = 0; k < m; ++k) g[k] = vb * ga[k] + va * gb[k];
        } else if (aa) {
          for (std::size_t k = 0; k < m; ++k) g[k] = vb * ga[k];
        } else if (ab) {
          for (std::size_t k = 0; k < m; ++k) g[k] = va * gb[k];
        }
        break;
      }
      case Op::neg: {
        reg[r] = -reg[in.a];
        active[r] = active[in.a];
        if (active[r]) {
          const T* ga = grad.data() + in.a * m;
          for (std::size_t k = 0; k < m; ++k) g[k] = -ga[k];
        }
        break;
      }
    }
  }

  for (std::size_t k = 0; k < outputs_.size(); ++k) {
    const std::uint32_t r = outputs_[k];
    out[k] = reg[r];
    T* dst = out_derivs.data() + k * m;
    if (active[r]) {
      const T* src = grad.data() + r * m;
      for (std::size_t j = 0; j < m; ++j) dst[j] = src[j];
    } else {
      for (std::size_t j = 0; j < m; ++j) dst[j] = ScalarTraits<T>::from_constant(Rational(0), 0.0);
    }
  }
}

/// Handle to a register of a tape under construction.
class Expr {
 public:
  Expr() = default;
  Expr(Builder* builder, std::uint32_t reg) : builder_(builder), reg_(reg) {}

  Builder* builder() const { return builder_; }
  std::uint32_t reg() const { return reg_; }

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);

 private:
  Builder* builder_ = nullptr;
  std::uint32_t reg_ = 0;
};

/// Records ring operations into a Tape. Constant subexpressions are folded
/// and multiplications by 0 and 1 are elided.
class Builder {
 public:
  explicit Builder(std::size_t num_inputs);

  Builder(const Builder&) = delete;
  Builder& operator=(const Builder&) = delete;

  Expr input(std::size_t i);
  Expr constant(const Rational& c);
  void add_output(const Expr& e);
  Tape build() &&;

  Expr add(const Expr& a, const Expr& b);
  Expr sub(const Expr& a, const Expr& b);
  Expr mul(const Expr& a, const Expr& b);
  Expr neg(const Expr& a);

 private:
  const Rational* constant_value(std::uint32_t reg) const;
  std::uint32_t emit(Op op, std::uint32_t a, std::uint32_t b);

  Tape tape_;
  std::map<Rational, std::uint32_t> constant_regs_;
  std::vector<std::int32_t> constant_of_reg_;
};

inline Expr operator+(const Expr& a, const Expr& b) { return a.builder()->add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return a.builder()->sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return a.builder()->mul(a, b); }
inline Expr operator-(const Expr& a) { return a.builder()->neg(a); }
inline Expr operator*(const Rational& q, const Expr& e) { return e.builder()->mul(e.builder()->constant(q), e); }
inline Expr operator*(const Expr& e, const Rational& q) { return q * e; }
inline Expr operator*(long k, const Expr& e) { return Rational(k) * e; }
inline Expr operator+(const Expr& e, const Rational& q) { return e.builder()->add(e, e.builder()->constant(q)); }
inline Expr operator-(const Expr& e, const Rational& q) { return e.builder()->sub(e, e.builder()->constant(q)); }

inline Expr& Expr::operator+=(const Expr& o) { return *this = *this + o; }
inline Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
inline Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }

// Scaling by a rational constant, uniform across the tiers generic formulas
// are instantiated with.
inline Expr scaled(const Expr& v, const Rational& q) { return q * v; }
inline Rational scaled(const Rational& v, const Rational& q) { return v * q; }
inline double scaled(double v, const Rational& q) { return v * q.get_d(); }
inline std::complex<double> scaled(const std::complex<double>& v, const Rational& q) { return v * q.get_d(); }
inline PolyQ scaled(const PolyQ& v, const Rational& q) { return v * PolyQ(q); }

}  // namespace tq::slp
