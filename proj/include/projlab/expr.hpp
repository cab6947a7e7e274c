#pragma once

// Closed-form expressions in the independent Wirtinger variables z and zb.
//
// Expressions are immutable DAGs shared through reference counting. The
// smart constructors below apply constant folding, the neutral-element
// rules (x+0, 1*x, x^1, ...), the negation rules and push conj() down to
// the leaves, so a built expression never contains a conj node:
//
//   conj(z) = zb, conj(zb) = z, conj(c) = c*, conj(a op b) = conj(a) op conj(b),
//   conj(exp e) = exp(conj e), conj(log e) = log(conj e).
//
// With this convention conj(f) evaluated at (z, zb) is the analytic
// continuation of the complex conjugate of f; on the real slice
// zb = conj(z) it is the ordinary conjugate. log uses the principal branch
// Arg in (-pi, pi], with -0 imaginary parts treated as +0, so log(-1) = i*pi.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace projlab::expr {

using cplx = std::complex<double>;

enum class Op { Const, Z, Zb, Neg, Exp, Log, Add, Sub, Mul, Div, Pow };

enum class Var { Z, Zb };

struct Node;

class Expr {
 public:
  Expr() = default;  // empty; only valid as a placeholder
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  bool empty() const { return node_ == nullptr; }
  const Node& node() const { return *node_; }
  const Node* get() const { return node_.get(); }
  Op op() const;

  bool is_const() const { return op() == Op::Const; }
  bool is_const(cplx v) const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op = Op::Const;
  cplx value{};   // Const
  int exponent = 0;  // Pow
  Expr lhs;       // unary operand / left operand
  Expr rhs;       // right operand
};

Expr constant(cplx v);
Expr var_z();
Expr var_zb();
Expr neg(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr conj(const Expr& e);
Expr pow(const Expr& e, int n);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);

inline Expr operator-(const Expr& e) { return neg(e); }
inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
inline Expr operator+(const Expr& a, cplx b) { return add(a, constant(b)); }
inline Expr operator+(cplx a, const Expr& b) { return add(constant(a), b); }
inline Expr operator-(const Expr& a, cplx b) { return sub(a, constant(b)); }
inline Expr operator-(cplx a, const Expr& b) { return sub(constant(a), b); }
inline Expr operator*(cplx a, const Expr& b) { return mul(constant(a), b); }
inline Expr operator*(const Expr& a, cplx b) { return mul(a, constant(b)); }
inline Expr operator/(const Expr& a, cplx b) { return div(a, constant(b)); }
inline Expr operator/(cplx a, const Expr& b) { return div(constant(a), b); }

/// Thrown by parse(); carries the byte offset of the offending token and
/// the set of tokens that would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Thrown when evaluation hits a division by (near) zero, log(0) or a
/// negative power of zero.
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, cplx z, cplx zb);
  cplx z() const { return z_; }
  cplx zb() const { return zb_; }

 private:
  cplx z_, zb_;
};

/// Divisors with modulus below this are poles.
inline constexpr double kPoleThreshold = 1e-300;

Expr parse(std::string_view source);

/// Fully parenthesized text that parse() maps back to a structurally equal
/// expression. Literals are printed with 17 significant digits.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Number of distinct nodes reachable from e.
std::size_t dag_size(const Expr& e);

/// Wirtinger derivative with z and zb as independent variables.
Expr wirtinger(const Expr& e, Var which);

cplx evaluate(const Expr& e, cplx z, cplx zb);

/// A set of expressions flattened into one evaluation tape. Shared
/// subexpressions (by identity) are evaluated once per call. Evaluation is
/// reentrant (scratch storage is per thread).
class Program {
 public:
  Program() = default;
  explicit Program(std::span<const Expr> outputs);

  std::size_t size() const { return outputs_.size(); }
  std::size_t tape_length() const { return tape_.size(); }

  /// Writes one value per output expression into out (out.size() >= size()).
  void evaluate(cplx z, cplx zb, std::span<cplx> out) const;
  std::vector<cplx> evaluate(cplx z, cplx zb) const;

 private:
  struct Instr {
    Op op;
    int a = -1;
    int b = -1;
    int exponent = 0;
    cplx value{};
  };
  std::vector<Instr> tape_;
  std::vector<int> outputs_;
};

/// A coefficient function with its symbolic derivatives d^a/dz^a d^b/dzb^b
/// for a + b <= 3.
class CoeffField {
 public:
  static constexpr int kMaxOrder = 3;

  CoeffField() : CoeffField(constant(0.0)) {}
  explicit CoeffField(Expr value);

  const Expr& value() const { return d_[0][0]; }
  /// Derivative with a z-derivatives and b zb-derivatives; throws
  /// std::out_of_range if a + b > 3.
  const Expr& d(int a, int b) const;

  /// Largest |d_z d_zb f - d_zb d_z f| relative to the magnitude, computed
  /// from independently differentiated trees.
  double mixed_partial_defect(cplx z, cplx zb) const;

 private:
  std::array<std::array<Expr, kMaxOrder + 1>, kMaxOrder + 1> d_;
};

}  // namespace projlab::expr
