#pragma once

// Lines of real projective 3-space as null bivectors (Klein correspondence).

#include "projlab/linalg4.hpp"

namespace projlab::plucker {

using la::Vec4R;
using la::Wedge6;

class DegenerateLineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ProjPoint {
 public:
  /// Throws std::invalid_argument if the Euclidean norm is below 1e-12.
  explicit ProjPoint(const Vec4R& x);
  const Vec4R& coords() const { return x_; }

 private:
  Vec4R x_;
};

/// wedge(a, b); throws DegenerateLineError if its norm is below 1e-10.
Wedge6 line_through(const ProjPoint& a, const ProjPoint& b);

struct RelationResidual {
  double direct = 0.0;     // |p01 p23 + p02 p31 + p03 p12|
  double from_form = 0.0;  // |pl_inner(x, x)| / 2
};

RelationResidual plucker_relation_residual(const Wedge6& x);

}  // namespace projlab::plucker
