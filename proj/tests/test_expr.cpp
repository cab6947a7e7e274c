#include <cmath>
#include <numbers>

#include "doctest.h"
#include "projlab/expr.hpp"
#include "support.hpp"

using namespace projlab::expr;
using testsupport::random_cplx;
using testsupport::random_expr;

namespace {

// 5-point central difference in one slot; f is analytic in each slot
// separately, so a real step suffices.
cplx fd5(const Expr& e, cplx z, cplx zb, Var which, double h = 1e-3) {
  const auto f = [&](double t) {
    return which == Var::Z ? evaluate(e, z + t, zb) : evaluate(e, z, zb + t);
  };
  return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

TEST_CASE("parse: variables, grammar cases and literals") {
  CHECK(parse("z").op() == Op::Z);
  CHECK(parse("zb").op() == Op::Zb);

  const Expr e = parse("1/(1 - z*zb)");
  REQUIRE(e.op() == Op::Div);
  CHECK(e.node().lhs.is_const(1.0));
  REQUIRE(e.node().rhs.op() == Op::Sub);
  CHECK(e.node().rhs.node().rhs.op() == Op::Mul);

  CHECK(evaluate(parse("2*i + 3"), 0.0, 0.0) == cplx(3.0, 2.0));
  CHECK(evaluate(parse("1.5e1"), 0.0, 0.0) == cplx(15.0, 0.0));
}

TEST_CASE("parse: precedence power > unary > mul/div > add/sub") {
  CHECK(evaluate(parse("-z^2"), 3.0, 0.0) == cplx(-9.0));
  CHECK(evaluate(parse("2 + 3*z^2"), 2.0, 0.0) == cplx(14.0));
  CHECK(evaluate(parse("8/2/2"), 0.0, 0.0) == cplx(2.0));
  CHECK(evaluate(parse("1 - 2 - 3"), 0.0, 0.0) == cplx(-4.0));
  CHECK(evaluate(parse("z^(-2)"), 2.0, 0.0) == cplx(0.25));
}

TEST_CASE("parse: errors carry byte offset and expected tokens") {
  try {
    parse("1 + * z");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("z^0.5"), ParseError);
  CHECK_THROWS_AS(parse("sin(z)"), ParseError);
  CHECK_THROWS_AS(parse("(z"), ParseError);
  CHECK_THROWS_AS(parse("z z"), ParseError);
  CHECK_THROWS_AS(parse("z\xc3\xa9"), ParseError);
  try {
    parse("exp(z");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
}

TEST_CASE("exp(log(z)) at 2+i") {
  const cplx z(2.0, 1.0);
  CHECK(std::abs(evaluate(parse("exp(log(z))"), z, std::conj(z)) - z) <= 1e-12);
}

TEST_CASE("evaluate: basic values, poles and the log branch") {
  const cplx z(1.0, 1.0);
  CHECK(std::abs(evaluate(parse("z^2"), z, std::conj(z)) - cplx(0.0, 2.0)) <= 1e-15);
  CHECK(evaluate(parse("1/(1 - z*zb)"), 0.0, 0.0) == cplx(1.0));

  // principal branch: log(-1) = i pi
  const cplx l = evaluate(parse("log(z)"), -1.0, -1.0);
  CHECK(std::abs(l - cplx(0.0, std::numbers::pi)) <= 1e-15);

  try {
    evaluate(parse("1/(1 - z*zb)"), 1.0, 1.0);
    FAIL("expected a pole error");
  } catch (const PoleError& e) {
    CHECK(e.z() == cplx(1.0));
    CHECK(e.zb() == cplx(1.0));
  }
  CHECK_THROWS_AS(evaluate(parse("log(z)"), 0.0, 0.0), PoleError);
  CHECK_THROWS_AS(evaluate(parse("z^(-1)"), 0.0, 0.0), PoleError);
}

TEST_CASE("wirtinger: trivial rules") {
  CHECK(structurally_equal(wirtinger(parse("z*zb"), Var::Z), var_zb()));
  CHECK(wirtinger(parse("zb"), Var::Z).is_const(0.0));
  CHECK(wirtinger(parse("z"), Var::Zb).is_const(0.0));
  CHECK(wirtinger(parse("conj(z)"), Var::Zb).is_const(1.0));
}

TEST_CASE("wirtinger: mixed second derivative of -2 log(1 - z zb) at z = 0.3") {
  const Expr e = parse("-2*log(1 - z*zb)");
  const Expr d = wirtinger(wirtinger(e, Var::Z), Var::Zb);
  const cplx z = 0.3;
  const cplx got = evaluate(d, z, std::conj(z));
  // 2/(1 - 0.09)^2, frozen from a 30-digit evaluation
  CHECK(std::abs(got - 2.4151672503320855) <= 1e-12);

  // independent oracle: mixed central difference with step 1e-5
  const double h = 1e-5;
  const auto f = [&](double a, double b) { return evaluate(e, z + a, std::conj(z) + b); };
  const cplx fd = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
  CHECK(std::abs(got - fd) <= 1e-5 * std::abs(got));
}

TEST_CASE("conj: involution and push-down") {
  for (int n = 0; n < 50; ++n) {
    const Expr e = random_expr(4);
    CHECK(structurally_equal(conj(conj(e)), e));
  }
  CHECK(structurally_equal(conj(parse("z*zb + 2*i")), parse("zb*z + (-2)*i")));
  const cplx z(0.3, -0.2);
  const Expr e = parse("z^2 + i*zb");
  CHECK(std::abs(evaluate(conj(e), z, std::conj(z)) - std::conj(evaluate(e, z, std::conj(z)))) <= 1e-15);
}

TEST_CASE("round trip: parse(to_string(e)) is structurally equal") {
  for (const char* s : {"z", "1/(1 - z*zb)", "exp(log(z))", "-z^2 + 3*i*zb", "conj(z*exp(zb))", "z^(-3)/(2 - zb)",
                        "(3*zb^2 - 2*z)/(4*(1 - z*zb)^2)", "-(-(z))", "1e-3*z"}) {
    const Expr e = parse(s);
    INFO(s);
    CHECK(structurally_equal(parse(to_string(e)), e));
  }
  for (int n = 0; n < 200; ++n) {
    const Expr e = random_expr(5);
    const std::string text = to_string(e);
    INFO(text);
    CHECK(structurally_equal(parse(text), e));
  }
}

TEST_CASE("derivative correctness against 5-point finite differences (100 random expressions)") {
  int tested = 0;
  int attempts = 0;
  while (tested < 100 && attempts < 5000) {
    ++attempts;
    const Expr e = random_expr(1 + attempts % 5);
    const cplx z = random_cplx(0.8);
    const cplx zb = std::conj(z);
    try {
      const cplx v = evaluate(e, z, zb);
      if (!finite(v) || std::abs(v) > 1e3) continue;
      bool ok = true;
      for (Var w : {Var::Z, Var::Zb}) {
        const cplx sym = evaluate(wirtinger(e, w), z, zb);
        const cplx fd = fd5(e, z, zb, w);
        if (!finite(sym) || std::abs(sym) > 1e3) {
          ok = false;
          break;
        }
        INFO(to_string(e));
        CHECK(std::abs(sym - fd) <= 1e-6 * std::max(1.0, std::abs(sym)));
      }
      if (ok) ++tested;
    } catch (const PoleError&) {
    }
  }
  CHECK(tested == 100);
}

TEST_CASE("linearity of wirtinger at 20 random points") {
  const Expr e1 = parse("z^2*exp(zb)");
  const Expr e2 = parse("log(2 + z*zb)/(3 - z)");
  const cplx a(0.7, -1.3);
  for (Var w : {Var::Z, Var::Zb}) {
    const Expr lhs = wirtinger(a * e1 + e2, w);
    const Expr rhs = a * wirtinger(e1, w) + wirtinger(e2, w);
    for (int n = 0; n < 20; ++n) {
      const cplx z = random_cplx(0.8);
      CHECK(std::abs(evaluate(lhs, z, std::conj(z)) - evaluate(rhs, z, std::conj(z))) <= 1e-12);
    }
  }
}

TEST_CASE("conjugation symmetry: dz conj(e) = conj(dzb e)") {
  for (int n = 0; n < 50; ++n) {
    const Expr e = random_expr(4);
    const cplx z = random_cplx(0.8);
    try {
      const cplx lhs = evaluate(wirtinger(conj(e), Var::Z), z, std::conj(z));
      const cplx rhs = std::conj(evaluate(wirtinger(e, Var::Zb), z, std::conj(z)));
      if (!finite(lhs)) continue;
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("Program evaluates many expressions like evaluate()") {
  std::vector<Expr> es;
  for (int n = 0; n < 20; ++n) es.push_back(random_expr(4));
  const Expr shared = parse("exp(z*zb)");
  es.push_back(shared * 2.0);
  es.push_back(shared + 1.0);
  const Program prog(es);
  CHECK(prog.size() == es.size());
  for (int k = 0; k < 10; ++k) {
    const cplx z = random_cplx(0.8);
    std::vector<cplx> out;
    try {
      out = prog.evaluate(z, std::conj(z));
    } catch (const PoleError&) {
      continue;
    }
    for (std::size_t n = 0; n < es.size(); ++n) {
      const cplx v = evaluate(es[n], z, std::conj(z));
      if (finite(v)) CHECK(std::abs(out[n] - v) <= 1e-12 * std::max(1.0, std::abs(v)));
    }
  }
}

TEST_CASE("CoeffField: mixed partials commute and order is capped at 3") {
  const CoeffField f(parse("1/(1 - z*zb) + exp(z)*zb^2"));
  for (int n = 0; n < 20; ++n) {
    const cplx z = random_cplx(0.6);
    CHECK(f.mixed_partial_defect(z, std::conj(z)) <= 1e-12);
  }
  CHECK_THROWS_AS(f.d(2, 2), std::out_of_range);
  CHECK(structurally_equal(f.d(0, 0), f.value()));
  const cplx z(0.2, 0.1);
  CHECK(std::abs(evaluate(f.d(1, 1), z, std::conj(z)) - fd5(f.d(0, 1), z, std::conj(z), Var::Z)) <= 1e-8);
}
