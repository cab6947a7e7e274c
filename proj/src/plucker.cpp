#include "projlab/plucker.hpp"

#include <cmath>

namespace projlab::plucker {

namespace {

template <std::size_t N>
double norm(const std::array<double, N>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

ProjPoint::ProjPoint(const Vec4R& x) : x_(x) {
  if (norm(x) < 1e-12) throw std::invalid_argument("projective point has (near) zero coordinates");
}

Wedge6 line_through(const ProjPoint& a, const ProjPoint& b) {
  const Wedge6 p = la::wedge(a.coords(), b.coords());
  if (norm(p) < 1e-10) throw DegenerateLineError("points are proportional; no line through them");
  return p;
}

RelationResidual plucker_relation_residual(const Wedge6& x) {
  return {std::abs(x[0] * x[3] + x[1] * x[4] + x[2] * x[5]), 0.5 * std::abs(la::pl_inner(x, x))};
}

}  // namespace projlab::plucker
