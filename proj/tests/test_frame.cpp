#include <cmath>

#include "doctest.h"
#include "projlab/frame.hpp"
#include "support.hpp"

using namespace projlab;
using namespace projlab::frame;
using la::constants::Cswap;
using testsupport::uniform;

namespace {

SurfaceData with_h(SurfaceData sd, double h) {
  sd.h = h;
  return sd;
}

SurfaceData const_demoulin(double b0, double h) {
  canonical::CatalogParams p;
  p.b0 = b0;
  return with_h(canonical::catalog("const_demoulin", p), h);
}

// Sup over nodes of |F - exp(x (U+V) + y i (U-V))|_F for constant U, V.
double exp_oracle_error(const SurfaceData& sd) {
  const DerivedData dd = canonical::derive_kP(sd);
  const FrameField ff = integrate_frame(sd, dd);
  const MovingFramePair m = assemble_UV(sd, dd, ff.base);
  const Mat4C ax = m.U + m.V;
  const Mat4C ay = (m.U - m.V) * cplx(0.0, 1.0);
  const cplx z0 = ff.grid.point(ff.base);
  double err = 0.0;
  for (int j = 0; j < ff.grid.ny(); ++j)
    for (int i = 0; i < ff.grid.nx(); ++i) {
      const cplx d = ff.grid.point(i, j) - z0;
      const Mat4C want = la::mat_exp(ax * cplx(d.real()) + ay * cplx(d.imag()));
      err = std::max(err, la::frobenius(ff.at(i, j) - want));
    }
  return err;
}

HalfLattice corrupt_k(const HalfLattice& lat, cplx dk) {
  return map_lattice(lat, [dk](const Mat4C& u, const Mat4C& v) {
    Mat4C u2 = u, v2 = v;
    u2(0, 2) += dk;
    u2(1, 3) += dk;
    v2(0, 1) += std::conj(dk);
    v2(2, 3) += std::conj(dk);
    return std::pair{u2, v2};
  });
}

}  // namespace

TEST_CASE("assemble_UV on const_demoulin b0 = 1") {
  const SurfaceData sd = const_demoulin(1.0, 0.05);
  const DerivedData dd = canonical::derive_kP(sd);
  const MovingFramePair m = assemble_UV(sd, dd, {3, 4});
  Mat4C want;
  want(0, 2) = 0.5;
  want(1, 0) = 1.0;
  want(1, 3) = 0.5;
  want(2, 1) = 1.0;
  want(3, 2) = 1.0;
  CHECK(la::max_abs(m.U - want) <= 1e-15);
  CHECK(la::trace(m.U) == cplx(0.0));
  CHECK(la::trace(m.V) == cplx(0.0));
}

TEST_CASE("U shape, trace and conjugation identity conj(U) = Cswap V Cswap") {
  for (const auto& name : canonical::catalog_names()) {
    INFO(name);
    const SurfaceData sd = canonical::catalog(name);
    const DerivedData dd = canonical::derive_kP(sd);
    const ConnectionField conn(sd, dd);
    const Rect& r = sd.domain;
    for (int n = 0; n < 20; ++n) {
      const cplx z(uniform(r.x0, r.x1), uniform(r.y0, r.y1));
      const MovingFramePair m = conn.at(z);
      CHECK(std::abs(la::trace(m.U)) <= 1e-12);
      CHECK(std::abs(la::trace(m.V)) <= 1e-12);
      CHECK(la::max_abs(la::conj(m.U) - Cswap() * m.V * Cswap()) <= 1e-14);
      CHECK(m.U(1, 0) == cplx(1.0));
      CHECK(m.U(3, 2) == cplx(1.0));
      const cplx b = expr::evaluate(sd.b.value(), z, std::conj(z));
      CHECK(std::abs(m.U(2, 1) - b) <= 1e-15);
      CHECK(std::abs(m.U(0, 0) + m.U(1, 1)) <= 1e-15);
      CHECK(m.U(2, 0) == cplx(0.0));
      CHECK(m.U(3, 0) == cplx(0.0));
      CHECK(m.U(3, 1) == cplx(0.0));
    }
  }
}

TEST_CASE("mixed-partial flatness on every catalog entry") {
  for (const auto& name : canonical::catalog_names()) {
    INFO(name);
    const SurfaceData sd = canonical::catalog(name);
    CHECK(flatness_sup(sd, canonical::derive_kP(sd)) <= 1e-10);
  }
}

TEST_CASE("integrate_frame: base value and unimodularity") {
  for (const auto& name : canonical::catalog_names()) {
    INFO(name);
    const SurfaceData sd = with_h(canonical::catalog(name), 0.02);
    const FrameField ff = integrate_frame(sd, canonical::derive_kP(sd));
    CHECK(ff.at(ff.base) == Mat4C::identity());
    CHECK(det_drift(ff) <= 1e-6);
    CHECK(reality_residual(ff) <= 1e-7);
  }
  const SurfaceData cd = const_demoulin(1.0, 0.02);
  const FrameField ff = integrate_frame(cd, canonical::derive_kP(cd));
  const Mat4C& corner = ff.at(ff.grid.nx() - 1, ff.grid.ny() - 1);
  CHECK(std::abs(la::det(corner) - 1.0) <= 1e-7);
}

TEST_CASE("integrate_frame rejects a curved connection") {
  SurfaceData sd = canonical::catalog("const_demoulin");
  sd.p = expr::CoeffField(expr::parse("zb"));
  CHECK_THROWS_AS(integrate_frame(sd, canonical::derive_kP(sd)), NonFlatError);
}

TEST_CASE("const_demoulin: RK4 converges to the matrix-exponential oracle at fourth order") {
  // The h = 0.02 bound itself is checked by the acceptance binary.
  for (double b0 : {1.0, 2.0}) {
    INFO("b0 = " << b0);
    const double e1 = exp_oracle_error(const_demoulin(b0, 0.02));
    const double e2 = exp_oracle_error(const_demoulin(b0, 0.01));
    MESSAGE("b0 = " << b0 << ": error " << e1 << " -> " << e2);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
    CHECK(exp_oracle_error(const_demoulin(b0, 0.005)) <= e2 / 12.0);
  }
}

TEST_CASE("path independence") {
  const SurfaceData l02 = with_h(canonical::catalog("liouville_demoulin"), 0.02);
  const SurfaceData l01 = with_h(canonical::catalog("liouville_demoulin"), 0.01);
  const double r02 = path_independence_residual(l02, canonical::derive_kP(l02));
  const double r01 = path_independence_residual(l01, canonical::derive_kP(l01));
  MESSAGE("liouville path residual " << r02 << " -> " << r01);
  CHECK(r02 <= 1e-6);
  CHECK(r02 / r01 >= 12.0);
  CHECK(r02 / r01 <= 20.0);

  const SurfaceData cd = const_demoulin(1.0, 0.02);
  CHECK(path_independence_residual(cd, canonical::derive_kP(cd)) <= 1e-10);

  // k + 0.1 injects curvature
  for (const SurfaceData& sd : {l02, cd}) {
    const DerivedData dd = canonical::derive_kP(sd);
    const HalfLattice lat = sample_half_lattice(sd.grid(), ConnectionField(sd, dd));
    const double bad = path_independence_residual(corrupt_k(lat, 0.1), sd.base_node());
    INFO(sd.name << " corrupted: " << bad);
    CHECK(bad > 1e-3);
  }
}

TEST_CASE("realify and surface lift") {
  const SurfaceData sd = with_h(canonical::catalog("liouville_demoulin"), 0.02);
  const FrameField ff = integrate_frame(sd, canonical::derive_kP(sd));
  const RealFrameField rf = realify(ff);
  CHECK(rf.max_imag <= 1e-7);
  CHECK(la::max_abs(rf.at(ff.base.i, ff.base.j) - Mat4R::identity()) <= 1e-15);
  for (std::size_t n = 0; n < ff.F.size(); n += 97)
    CHECK(std::abs(la::det(rf.F[n]) - la::det(ff.F[n]).real()) <= 1e-10);

  const SurfaceLift lift = surface_lift(rf);
  const std::size_t b = ff.grid.index(ff.base);
  CHECK(lift.lift[b] == la::Vec4R{1.0, 0.0, 0.0, 0.0});
  REQUIRE(lift.chart_valid(b));
  CHECK(*lift.point[b] == la::Vec4R{0.0, 0.0, 0.0, 0.0});

  // first column of L F L^{-1} is real up to the reality residual
  double im = 0.0;
  const Mat4C l = la::constants::L(), li = la::constants::L_inv();
  for (const Mat4C& f : ff.F) {
    const Mat4C g = l * f * li;
    for (int r = 0; r < 4; ++r) im = std::max(im, std::abs(g(r, 0).imag()));
  }
  CHECK(im <= 1e-7);
}

TEST_CASE("column relation f_z - beta f - f1 is O(h^2)") {
  double prev = 0.0;
  for (double h : {0.04, 0.02, 0.01}) {
    const SurfaceData sd = const_demoulin(1.0, h);
    const DerivedData dd = canonical::derive_kP(sd);
    const double r = column_relation_residual(sd, dd, integrate_frame(sd, dd));
    MESSAGE("h = " << h << ": " << r);
    if (h == 0.02) CHECK(r <= 1e-3);
    if (prev > 0.0) {
      CHECK(prev / r >= 3.5);
      CHECK(prev / r <= 4.5);
    }
    prev = r;
  }
}
