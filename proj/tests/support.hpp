#pragma once

#include <complex>
#include <random>

#include "projlab/expr.hpp"
#include "projlab/linalg4.hpp"

namespace testsupport {

using projlab::expr::cplx;
using projlab::la::Mat4C;
using projlab::la::Mat4R;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261016);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline cplx random_cplx(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }

inline cplx random_unit() { return std::polar(1.0, uniform(0.0, 6.283185307179586)); }

inline Mat4C random_mat(double r = 1.0) {
  Mat4C m;
  for (auto& x : m.a) x = random_cplx(r);
  return m;
}

/// exp of a random trace-free real matrix with entries in [-r, r].
inline Mat4R random_unimodular(double r = 0.4) {
  Mat4C x;
  for (auto& v : x.a) v = uniform(-r, r);
  const cplx t = projlab::la::trace(x) / 4.0;
  for (int i = 0; i < 4; ++i) x(i, i) -= t;
  return projlab::la::real_part(projlab::la::mat_exp(x));
}

inline Mat4C random_unimodular_complex(double r = 0.4) {
  Mat4C x = random_mat(r);
  const cplx t = projlab::la::trace(x) / 4.0;
  for (int i = 0; i < 4; ++i) x(i, i) -= t;
  return projlab::la::mat_exp(x);
}

/// Random expression tree of the given depth over z, zb and small constants.
inline projlab::expr::Expr random_expr(int depth) {
  namespace e = projlab::expr;
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth <= 0) {
    switch (pick(rng()) % 3) {
      case 0: return e::var_z();
      case 1: return e::var_zb();
      default: return e::constant(random_cplx(2.0));
    }
  }
  const e::Expr a = random_expr(depth - 1);
  switch (pick(rng())) {
    case 0: return e::add(a, random_expr(depth - 1));
    case 1: return e::sub(a, random_expr(depth - 1));
    case 2:
    case 3: return e::mul(a, random_expr(depth - 1));
    case 4: return e::div(a, e::add(e::constant(3.0), random_expr(depth - 1)));
    case 5: return e::pow(a, std::uniform_int_distribution<int>(-2, 3)(rng()));
    case 6: return e::exp(e::mul(e::constant(0.3), a));
    case 7: return e::log(e::add(e::constant(4.0), a));
    case 8: return e::conj(a);
    default: return e::neg(a);
  }
}

}  // namespace testsupport
