#include "projlab/expr.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <unordered_map>

namespace projlab::expr {

namespace {

Expr make(Op op, Expr lhs = {}, Expr rhs = {}, int exponent = 0, cplx value = {}) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->exponent = exponent;
  n->value = value;
  return Expr(std::move(n));
}

cplx int_power(cplx base, int n) {
  cplx result = 1.0;
  cplx factor = base;
  unsigned m = n < 0 ? static_cast<unsigned>(-static_cast<long>(n)) : static_cast<unsigned>(n);
  while (m != 0) {
    if (m & 1U) result *= factor;
    factor *= factor;
    m >>= 1U;
  }
  return n < 0 ? 1.0 / result : result;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Op Expr::op() const {
  if (!node_) throw std::logic_error("expr: empty expression");
  return node_->op;
}

bool Expr::is_const(cplx v) const { return op() == Op::Const && node_->value == v; }

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error([&] {
        std::string msg = "parse error at byte " + std::to_string(offset) + ": found " + found + ", expected one of {";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
        return msg + "}";
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

PoleError::PoleError(const std::string& what, cplx z, cplx zb)
    : std::runtime_error(what + " at z=(" + format_real(z.real()) + "," + format_real(z.imag()) + ")"),
      z_(z),
      zb_(zb) {}

Expr constant(cplx v) { return make(Op::Const, {}, {}, 0, v); }

Expr var_z() {
  static const Expr z = make(Op::Z);
  return z;
}

Expr var_zb() {
  static const Expr zb = make(Op::Zb);
  return zb;
}

Expr neg(const Expr& e) {
  if (e.is_const()) return constant(-e.node().value);
  if (e.op() == Op::Neg) return e.node().lhs;
  return make(Op::Neg, e);
}

Expr exp(const Expr& e) {
  if (e.is_const()) return constant(std::exp(e.node().value));
  return make(Op::Exp, e);
}

Expr log(const Expr& e) {
  if (e.is_const() && std::abs(e.node().value) >= kPoleThreshold) {
    cplx v = e.node().value;
    if (v.imag() == 0.0) v = cplx(v.real(), 0.0);
    return constant(std::log(v));
  }
  return make(Op::Log, e);
}

Expr pow(const Expr& e, int n) {
  if (n == 0) return constant(1.0);
  if (n == 1) return e;
  if (e.is_const() && (n > 0 || std::abs(e.node().value) >= kPoleThreshold))
    return constant(int_power(e.node().value, n));
  return make(Op::Pow, e, {}, n);
}

Expr add(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return constant(a.node().value + b.node().value);
  if (a.is_const(0.0)) return b;
  if (b.is_const(0.0)) return a;
  return make(Op::Add, a, b);
}

Expr sub(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return constant(a.node().value - b.node().value);
  if (b.is_const(0.0)) return a;
  if (a.is_const(0.0)) return neg(b);
  return make(Op::Sub, a, b);
}

Expr mul(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return constant(a.node().value * b.node().value);
  if (a.is_const(0.0) || b.is_const(0.0)) return constant(0.0);
  if (a.is_const(1.0)) return b;
  if (b.is_const(1.0)) return a;
  if (a.is_const(-1.0)) return neg(b);
  if (b.is_const(-1.0)) return neg(a);
  return make(Op::Mul, a, b);
}

Expr div(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const() && std::abs(b.node().value) >= kPoleThreshold)
    return constant(a.node().value / b.node().value);
  if (b.is_const(1.0)) return a;
  if (a.is_const(0.0)) return constant(0.0);
  return make(Op::Div, a, b);
}

Expr conj(const Expr& e) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
    if (auto it = memo.find(x.get()); it != memo.end()) return it->second;
    const Node& n = x.node();
    Expr r;
    switch (n.op) {
      case Op::Const: r = constant(std::conj(n.value)); break;
      case Op::Z: r = var_zb(); break;
      case Op::Zb: r = var_z(); break;
      case Op::Neg: r = neg(go(n.lhs)); break;
      case Op::Exp: r = exp(go(n.lhs)); break;
      case Op::Log: r = log(go(n.lhs)); break;
      case Op::Pow: r = pow(go(n.lhs), n.exponent); break;
      case Op::Add: r = add(go(n.lhs), go(n.rhs)); break;
      case Op::Sub: r = sub(go(n.lhs), go(n.rhs)); break;
      case Op::Mul: r = mul(go(n.lhs), go(n.rhs)); break;
      case Op::Div: r = div(go(n.lhs), go(n.rhs)); break;
    }
    memo.emplace(x.get(), r);
    return r;
  };
  return go(e);
}

std::string to_string(const Expr& e) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Const: {
      const cplx v = n.value;
      if (v.imag() == 0.0) {
        if (std::signbit(v.real())) return "(-" + format_real(-v.real()) + ")";
        return format_real(v.real());
      }
      std::string re = std::signbit(v.real()) ? "(-" + format_real(-v.real()) + ")" : format_real(v.real());
      std::string im = std::signbit(v.imag()) ? "(-" + format_real(-v.imag()) + ")" : format_real(v.imag());
      return "(" + re + "+" + im + "*i)";
    }
    case Op::Z: return "z";
    case Op::Zb: return "zb";
    case Op::Neg: return "(-" + to_string(n.lhs) + ")";
    case Op::Exp: return "exp(" + to_string(n.lhs) + ")";
    case Op::Log: return "log(" + to_string(n.lhs) + ")";
    case Op::Pow: return "(" + to_string(n.lhs) + "^(" + std::to_string(n.exponent) + "))";
    case Op::Add: return "(" + to_string(n.lhs) + "+" + to_string(n.rhs) + ")";
    case Op::Sub: return "(" + to_string(n.lhs) + "-" + to_string(n.rhs) + ")";
    case Op::Mul: return "(" + to_string(n.lhs) + "*" + to_string(n.rhs) + ")";
    case Op::Div: return "(" + to_string(n.lhs) + "/" + to_string(n.rhs) + ")";
  }
  return {};
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a.empty() || b.empty()) return false;
  const Node& x = a.node();
  const Node& y = b.node();
  if (x.op != y.op) return false;
  switch (x.op) {
    case Op::Const: return x.value == y.value;
    case Op::Z:
    case Op::Zb: return true;
    case Op::Pow: return x.exponent == y.exponent && structurally_equal(x.lhs, y.lhs);
    case Op::Neg:
    case Op::Exp:
    case Op::Log: return structurally_equal(x.lhs, y.lhs);
    default: return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
  }
}

std::size_t dag_size(const Expr& e) {
  std::unordered_map<const Node*, bool> seen;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x.empty() || !seen.emplace(x.get(), true).second) return;
    go(x.node().lhs);
    go(x.node().rhs);
  };
  go(e);
  return seen.size();
}

Expr wirtinger(const Expr& e, Var which) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const Expr&)> d = [&](const Expr& x) -> Expr {
    if (auto it = memo.find(x.get()); it != memo.end()) return it->second;
    const Node& n = x.node();
    Expr r;
    switch (n.op) {
      case Op::Const: r = constant(0.0); break;
      case Op::Z: r = constant(which == Var::Z ? 1.0 : 0.0); break;
      case Op::Zb: r = constant(which == Var::Zb ? 1.0 : 0.0); break;
      case Op::Neg: r = neg(d(n.lhs)); break;
      case Op::Exp: r = mul(x, d(n.lhs)); break;
      case Op::Log: r = div(d(n.lhs), n.lhs); break;
      case Op::Pow:
        r = mul(mul(constant(static_cast<double>(n.exponent)), pow(n.lhs, n.exponent - 1)), d(n.lhs));
        break;
      case Op::Add: r = add(d(n.lhs), d(n.rhs)); break;
      case Op::Sub: r = sub(d(n.lhs), d(n.rhs)); break;
      case Op::Mul: r = add(mul(d(n.lhs), n.rhs), mul(n.lhs, d(n.rhs))); break;
      case Op::Div: {
        Expr du = d(n.lhs);
        Expr dv = d(n.rhs);
        r = sub(div(du, n.rhs), div(mul(n.lhs, dv), pow(n.rhs, 2)));
        break;
      }
    }
    memo.emplace(x.get(), r);
    return r;
  };
  return d(e);
}

// ---------------------------------------------------------------------------
// Program

Program::Program(std::span<const Expr> outputs) {
  std::unordered_map<const Node*, int> slot;
  std::function<int(const Expr&)> emit = [&](const Expr& x) -> int {
    if (auto it = slot.find(x.get()); it != slot.end()) return it->second;
    const Node& n = x.node();
    Instr ins{n.op};
    if (!n.lhs.empty()) ins.a = emit(n.lhs);
    if (!n.rhs.empty()) ins.b = emit(n.rhs);
    ins.exponent = n.exponent;
    ins.value = n.value;
    tape_.push_back(ins);
    const int id = static_cast<int>(tape_.size()) - 1;
    slot.emplace(x.get(), id);
    return id;
  };
  outputs_.reserve(outputs.size());
  for (const Expr& e : outputs) outputs_.push_back(emit(e));
}

void Program::evaluate(cplx z, cplx zb, std::span<cplx> out) const {
  thread_local std::vector<cplx> v;
  v.resize(tape_.size());
  for (std::size_t i = 0; i < tape_.size(); ++i) {
    const Instr& t = tape_[i];
    switch (t.op) {
      case Op::Const: v[i] = t.value; break;
      case Op::Z: v[i] = z; break;
      case Op::Zb: v[i] = zb; break;
      case Op::Neg: v[i] = -v[t.a]; break;
      case Op::Exp: v[i] = std::exp(v[t.a]); break;
      case Op::Log: {
        cplx a = v[t.a];
        if (std::abs(a) < kPoleThreshold) throw PoleError("log of zero", z, zb);
        if (a.imag() == 0.0) a = cplx(a.real(), 0.0);
        v[i] = std::log(a);
        break;
      }
      case Op::Pow:
        if (t.exponent < 0 && std::abs(v[t.a]) < kPoleThreshold)
          throw PoleError("negative power of zero", z, zb);
        v[i] = int_power(v[t.a], t.exponent);
        break;
      case Op::Add: v[i] = v[t.a] + v[t.b]; break;
      case Op::Sub: v[i] = v[t.a] - v[t.b]; break;
      case Op::Mul: v[i] = v[t.a] * v[t.b]; break;
      case Op::Div:
        if (std::abs(v[t.b]) < kPoleThreshold) throw PoleError("division by zero", z, zb);
        v[i] = v[t.a] / v[t.b];
        break;
    }
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = v[outputs_[k]];
}

std::vector<cplx> Program::evaluate(cplx z, cplx zb) const {
  std::vector<cplx> out(outputs_.size());
  evaluate(z, zb, out);
  return out;
}

cplx evaluate(const Expr& e, cplx z, cplx zb) {
  const Program prog(std::span<const Expr>(&e, 1));
  cplx out;
  prog.evaluate(z, zb, std::span<cplx>(&out, 1));
  return out;
}

// ---------------------------------------------------------------------------
// CoeffField

CoeffField::CoeffField(Expr value) {
  d_[0][0] = std::move(value);
  for (int a = 1; a <= kMaxOrder; ++a) d_[a][0] = wirtinger(d_[a - 1][0], Var::Z);
  for (int a = 0; a <= kMaxOrder; ++a)
    for (int b = 1; a + b <= kMaxOrder; ++b) d_[a][b] = wirtinger(d_[a][b - 1], Var::Zb);
}

const Expr& CoeffField::d(int a, int b) const {
  if (a < 0 || b < 0 || a + b > kMaxOrder) throw std::out_of_range("CoeffField: derivative order exceeds 3");
  return d_[a][b];
}

double CoeffField::mixed_partial_defect(cplx z, cplx zb) const {
  // d_ differentiates z first; the alternates differentiate zb first.
  const Expr fb = wirtinger(value(), Var::Zb);
  const Expr alt11 = wirtinger(fb, Var::Z);
  const Expr alt21 = wirtinger(alt11, Var::Z);
  const Expr alt12 = wirtinger(wirtinger(fb, Var::Zb), Var::Z);
  const Expr pairs[] = {d_[1][1], alt11, d_[2][1], alt21, d_[1][2], alt12};
  const auto v = Program(pairs).evaluate(z, zb);
  double worst = 0.0;
  for (std::size_t k = 0; k < 6; k += 2) {
    const double scale = std::max(1.0, std::abs(v[k]));
    worst = std::max(worst, std::abs(v[k] - v[k + 1]) / scale);
  }
  return worst;
}

}  // namespace projlab::expr
