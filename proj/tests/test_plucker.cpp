#include <cmath>

#include "doctest.h"
#include "projlab/plucker.hpp"
#include "support.hpp"

using namespace projlab;
using namespace projlab::plucker;
using testsupport::random_unimodular;
using testsupport::uniform;

namespace {

Vec4R random_vec() { return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)}; }

Wedge6 random_wedge6() {
  Wedge6 w;
  for (auto& x : w) x = uniform(-1, 1);
  return w;
}

}  // namespace

TEST_CASE("line_through examples") {
  const ProjPoint e0({1, 0, 0, 0}), e1({0, 1, 0, 0});
  CHECK(line_through(e0, e1) == Wedge6{1, 0, 0, 0, 0, 0});

  const Vec4R a = random_vec(), b = random_vec();
  const Wedge6 w = line_through(ProjPoint(a), ProjPoint(b));
  const Wedge6 w3 = line_through(ProjPoint({3 * a[0], 3 * a[1], 3 * a[2], 3 * a[3]}), ProjPoint(b));
  const Wedge6 wm = line_through(ProjPoint(a), ProjPoint({-2 * b[0], -2 * b[1], -2 * b[2], -2 * b[3]}));
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(std::abs(w3[k] - 3 * w[k]) <= 1e-14);
    CHECK(std::abs(wm[k] + 2 * w[k]) <= 1e-14);
  }

  CHECK_THROWS_AS(line_through(ProjPoint(a), ProjPoint({2 * a[0], 2 * a[1], 2 * a[2], 2 * a[3]})),
                  DegenerateLineError);
  CHECK_THROWS_AS(ProjPoint({0, 0, 0, 1e-13}), std::invalid_argument);
}

TEST_CASE("Plucker relation residual") {
  for (int n = 0; n < 50; ++n) {
    const RelationResidual r = plucker_relation_residual(line_through(ProjPoint(random_vec()), ProjPoint(random_vec())));
    CHECK(r.direct <= 1e-12);
    CHECK(r.from_form <= 1e-12);
  }
  const RelationResidual one = plucker_relation_residual({1, 0, 0, 1, 0, 0});
  CHECK(one.direct == 1.0);
  CHECK(one.from_form == 1.0);

  for (int n = 0; n < 100; ++n) {
    const Wedge6 x = random_wedge6();
    const RelationResidual r = plucker_relation_residual(x);
    CHECK(std::abs(r.direct - 0.5 * std::abs(la::pl_inner(x, x))) <= 1e-12);
    CHECK(std::abs(r.direct - r.from_form) <= 1e-12);
  }
}

TEST_CASE("lines map equivariantly under the induced action") {
  for (int n = 0; n < 50; ++n) {
    const la::Mat4R g = random_unimodular(0.5);
    const Vec4R a = random_vec(), b = random_vec();
    const Wedge6 moved = line_through(ProjPoint(g * a), ProjPoint(g * b));
    const Wedge6 image = la::apply(la::wedge_square(g), line_through(ProjPoint(a), ProjPoint(b)));
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(moved[k] - image[k]) <= 1e-10);
    CHECK(plucker_relation_residual(moved).direct <= 1e-12);
  }
}
