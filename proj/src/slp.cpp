#include "tq/slp.hpp"

namespace tq::slp {

Builder::Builder(std::size_t num_inputs) {
  tape_.num_inputs_ = num_inputs;
  for (std::size_t i = 0; i < num_inputs; ++i) emit(Op::input, static_cast<std::uint32_t>(i), 0);
}

Expr Builder::input(std::size_t i) {
  if (i >= tape_.num_inputs_) throw std::out_of_range("slp input index out of range");
  return {this, static_cast<std::uint32_t>(i)};
}

Expr Builder::constant(const Rational& c) {
  if (auto it = constant_regs_.find(c); it != constant_regs_.end()) return {this, it->second};
  const auto idx = static_cast<std::uint32_t>(tape_.constants_.size());
  tape_.constants_.push_back(c);
  tape_.constants_d_.push_back(c.get_d());
  const std::uint32_t reg = emit(Op::constant, idx, 0);
  constant_of_reg_[reg] = static_cast<std::int32_t>(idx);
  constant_regs_.emplace(c, reg);
  return {this, reg};
}

void Builder::add_output(const Expr& e) {
  if (e.builder() != this) throw std::invalid_argument("expression belongs to another builder");
  tape_.outputs_.push_back(e.reg());
}

Tape Builder::build() && { return std::move(tape_); }

const Rational* Builder::constant_value(std::uint32_t reg) const {
  const std::int32_t idx = constant_of_reg_[reg];
  return idx < 0 ? nullptr : &tape_.constants_[static_cast<std::size_t>(idx)];
}

std::uint32_t Builder::emit(Op op, std::uint32_t a, std::uint32_t b) {
  tape_.code_.push_back({op, a, b});
  constant_of_reg_.push_back(-1);
  return static_cast<std::uint32_t>(tape_.code_.size() - 1);
}

Expr Builder::add(const Expr& a, const Expr& b) {
  const Rational* ca = constant_value(a.reg());
  const Rational* cb = constant_value(b.reg());
  if (ca && cb) return constant(*ca + *cb);
  if (ca && sgn(*ca) == 0) return b;
  if (cb && sgn(*cb) == 0) return a;
  return {this, emit(Op::add, a.reg(), b.reg())};
}

Expr Builder::sub(const Expr& a, const Expr& b) {
  const Rational* ca = constant_value(a.reg());
  const Rational* cb = constant_value(b.reg());
  if (ca && cb) return constant(*ca - *cb);
  if (cb && sgn(*cb) == 0) return a;
  if (ca && sgn(*ca) == 0) return neg(b);
  return {this, emit(Op::sub, a.reg(), b.reg())};
}

Expr Builder::mul(const Expr& a, const Expr& b) {
  const Rational* ca = constant_value(a.reg());
  const Rational* cb = constant_value(b.reg());
  if (ca && cb) return constant(*ca * *cb);
  if ((ca && sgn(*ca) == 0) || (cb && sgn(*cb) == 0)) return constant(0);
  if (ca && *ca == 1) return b;
  if (cb && *cb == 1) return a;
  if (ca && *ca == -1) return neg(b);
  if (cb && *cb == -1) return neg(a);
  return {this, emit(Op::mul, a.reg(), b.reg())};
}

Expr Builder::neg(const Expr& a) {
  if (const Rational* ca = constant_value(a.reg())) return constant(-*ca);
  return {this, emit(Op::neg, a.reg(), 0)};
}

}  // namespace tq::slp
