#include <cmath>
#include <numbers>

#include "doctest.h"
#include "projlab/loop.hpp"
#include "projlab/quadric.hpp"
#include "support.hpp"

using namespace projlab;
using namespace projlab::quadric;
using la::constants::epsilon;
using la::constants::J1_hat;
using la::constants::J2_hat;
using testsupport::random_mat;
using testsupport::random_unimodular;
using testsupport::uniform;

namespace {

struct Setup {
  canonical::SurfaceData sd;
  canonical::DerivedData dd;
  FrameField ff;
  RealFrameField rf;
};

Setup setup(const std::string& name, double h) {
  Setup s;
  s.sd = canonical::catalog(name);
  s.sd.h = h;
  s.dd = canonical::derive_kP(s.sd);
  s.ff = frame::integrate_frame(s.sd, s.dd);
  s.rf = frame::realify(s.ff);
  return s;
}

Mat4R random_symmetric() {
  Mat4R m;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) m(i, j) = m(j, i) = uniform(-1, 1);
  return m;
}

struct ConfErr {
  double zz = 0.0, zzb = 0.0, deriv = 0.0;
};

// Largest deviation of the finite-difference metric values from the
// predictions, and of the FD derivative matrices from the closed forms, over
// the interior nodes of the coarse grid (which are nodes of the fine grid too).
std::pair<ConfErr, ConfErr> conformality_error(GaussMap which, const Setup& coarse, const Setup& fine) {
  const auto rc = conformality_report(which, coarse.sd, coarse.dd, coarse.ff);
  const auto rf = conformality_report(which, fine.sd, fine.dd, fine.ff);
  const Grid& gf = fine.ff.grid;
  ConfErr ec, ef;
  const auto add = [](ConfErr& e, const ConformalityRow& r) {
    e.zz = std::max(e.zz, std::abs(r.fd_zz - r.closed_form_zz));
    e.zzb = std::max(e.zzb, std::abs(r.fd_zzb - r.closed_form_zzb));
    e.deriv = std::max(e.deriv, r.derivative_error);
  };
  for (const auto& r : rc) {
    const NodeIndex n = gf.nearest(cplx(r.x, r.y));
    REQUIRE(std::abs(gf.point(n) - cplx(r.x, r.y)) <= 1e-12);
    add(ec, r);
    add(ef, rf[static_cast<std::size_t>((n.j - 1) * (gf.nx() - 2) + (n.i - 1))]);
  }
  return {ec, ef};
}

}  // namespace

TEST_CASE("metric_at examples, bilinearity and invariance") {
  const Mat4C x = Mat4C::diag(1.0, 1.0, -1.0, -1.0);
  CHECK(metric_at(Mat4R::identity(), x, x) == cplx(4.0));
  CHECK_THROWS_AS(metric_at(Mat4R::diag(1.0, 0.0, 1.0, 1.0), x, x), la::SingularMatrixError);

  const Mat4R q = J1_hat();
  const Mat4C a = random_mat(1.0), b = random_mat(1.0), c = random_mat(1.0);
  const cplx s(0.3, -0.8);
  CHECK(std::abs(metric_at(q, a * s + b, c) - (s * metric_at(q, a, c) + metric_at(q, b, c))) <= 1e-13);
  CHECK(std::abs(metric_at(q, c, a * s + b) - (s * metric_at(q, c, a) + metric_at(q, c, b))) <= 1e-13);

  for (int n = 0; n < 50; ++n) {
    const Mat4R g = random_unimodular(0.4);
    const Mat4R q0 = random_symmetric() + Mat4R::identity() * 3.0;
    const Mat4C gc = la::to_complex(g), gt = la::transpose(gc);
    const Mat4C xx = la::to_complex(random_symmetric()), yy = la::to_complex(random_symmetric());
    const cplx before = metric_at(q0, xx, yy);
    const cplx after = metric_at(g * q0 * la::transpose(g), gc * xx * gt, gc * yy * gt);
    CHECK(std::abs(after - before) <= 1e-9 * std::max(1.0, std::abs(before)));
  }
}

TEST_CASE("g1 and g2 on liouville_demoulin") {
  const Setup s = setup("liouville_demoulin", 0.02);
  const std::size_t b = s.ff.grid.index(s.ff.base);
  const auto q1 = g1(s.rf);
  const auto q2 = g2(s.rf);
  CHECK(la::max_abs(q1[b] - J1_hat()) <= 1e-15);
  CHECK(la::max_abs(q2[b] - J2_hat()) <= 1e-15);

  for (const auto* qs : {&q1, &q2}) {
    const QuadricGridCheck c = check_quadric_grid(*qs, (*qs)[b]);
    CHECK(c.max_asymmetry <= 1e-9);
    CHECK(c.max_normalized_det_error <= 1e-7);
    CHECK(c.max_det_drift <= 1e-7);
    CHECK(c.sign_pattern_ok);
  }
  for (std::size_t n = 0; n < q1.size(); n += 101) CHECK(la::signature(q1[n]) == la::Signature{3, 1});

  double im = 0.0;
  const auto q2c = g2_from_complex(s.ff, &im);
  double d = 0.0;
  for (std::size_t n = 0; n < q2.size(); ++n) d = std::max(d, la::max_abs(q2[n] - q2c[n]));
  CHECK(d <= 1e-9);
  CHECK(im <= 1e-7);
  CHECK(to_string(parse_gauss_map("g2")) == "g2");
  CHECK_THROWS_AS(parse_gauss_map("g3"), std::invalid_argument);
}

TEST_CASE("quadric helpers") {
  const Mat4R q = J1_hat() * 3.0;
  CHECK(std::abs(std::abs(la::det(normalize(q))) - 1.0) <= 1e-14);
  CHECK(lorentzian_sign_pattern(q));
  CHECK(lorentzian_sign_pattern(q * -1.0));
  CHECK_FALSE(lorentzian_sign_pattern(Mat4R::identity()));
  Mat4R a = Mat4R::identity();
  a(1, 2) = 0.25;
  CHECK(asymmetry(a) == 0.25);
}

TEST_CASE("closed-form metric values match the predictions exactly") {
  for (const auto& name : canonical::catalog_names()) {
    INFO(name);
    const Setup s = setup(name, 0.05);
    for (GaussMap w : {GaussMap::G1, GaussMap::G2}) {
      for (const auto& r : conformality_report(w, s.sd, s.dd, s.ff)) {
        CHECK(std::abs(r.exact_zz - r.closed_form_zz) <= 1e-10);
        CHECK(std::abs(r.exact_zzb - r.closed_form_zzb) <= 1e-10);
      }
    }
  }
}

TEST_CASE("conformality: finite differences converge at second order") {
  for (const auto& name : canonical::catalog_names()) {
    INFO(name);
    const Setup coarse = setup(name, 0.04);
    const Setup fine = setup(name, 0.02);
    for (GaussMap w : {GaussMap::G1, GaussMap::G2}) {
      const auto [ec, ef] = conformality_error(w, coarse, fine);
      INFO(to_string(w) << " zz " << ec.zz << " -> " << ef.zz << ", zzb " << ec.zzb << " -> " << ef.zzb
                        << ", deriv " << ec.deriv << " -> " << ef.deriv);
      // derivative matrices: plain h^2; the metric values may cancel to higher order
      CHECK(ec.deriv / ef.deriv >= 3.5);
      CHECK(ec.deriv / ef.deriv <= 4.5);
      CHECK(ec.zzb / ef.zzb >= 3.5);
      CHECK(ec.zz / ef.zz >= 3.5);
    }
  }
}

TEST_CASE("g1 on nonminimal_linear: <dz g1, dz g1> tracks 16 (z + 1)") {
  const Setup s = setup("nonminimal_linear", 0.02);
  const auto rows = conformality_report(GaussMap::G1, s.sd, s.dd, s.ff);
  REQUIRE(!rows.empty());
  const auto& r = rows[rows.size() / 3];
  const cplx z(r.x, r.y);
  CHECK(std::abs(r.closed_form_zz - 16.0 * (z + 1.0)) <= 1e-12);
  CHECK(std::abs(r.fd_zz - r.closed_form_zz) <= 0.5);
}

TEST_CASE("primitive lift") {
  const Setup s = setup("liouville_demoulin", 0.02);
  const PrimitiveLift p = primitive_lift(s.ff);
  const std::size_t b = s.ff.grid.index(s.ff.base);
  const cplx e = epsilon();
  CHECK(la::max_abs(p.g[b] - Mat4C::offdiag(1.0, e * e, e, 1.0)) <= 1e-15);
  CHECK(la::max_abs(p.pi[b] - la::constants::J1()) == 0.0);
  CHECK(p.pi_vs_g1 <= 1e-9);
  const Mat4C ej = la::constants::E() * la::constants::J1();
  for (std::size_t n = 0; n < p.g.size(); n += 53)
    CHECK(la::max_abs(p.g[n] - s.ff.F[n] * ej * la::transpose(s.ff.F[n])) <= 1e-15);
}

TEST_CASE("stabilizer elements are kappa-fixed and preserve E J1") {
  const Mat4C k = stabilizer_element(2.0, std::polar(1.0, std::numbers::pi / 7.0));
  CHECK(kappa_fixedness(k) <= 1e-14);
  const Mat4C ej = la::constants::E() * la::constants::J1();
  CHECK(la::max_abs(k * ej * la::transpose(k) - ej) <= 1e-14);
  CHECK(kappa_fixedness(random_mat(1.0) + Mat4C::identity() * cplx(3.0)) > 1e-3);
}

TEST_CASE("g1 is well defined on the coset: right action by the stabilizer of J1 hat") {
  const Setup s = setup("liouville_demoulin", 0.05);
  const auto q = g1(s.rf);
  const Mat4R jinv = la::inverse(J1_hat());
  for (int n = 0; n < 5; ++n) {
    Mat4R a;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        a(i, j) = uniform(-0.5, 0.5);
        a(j, i) = -a(i, j);
      }
    const Mat4R h = la::real_part(la::mat_exp(la::to_complex(a * jinv)));
    CHECK(la::max_abs(h * J1_hat() * la::transpose(h) - J1_hat()) <= 1e-12);
    RealFrameField moved = s.rf;
    for (auto& f : moved.F) f = f * h;
    const auto q2 = g1(moved);
    double d = 0.0;
    for (std::size_t m = 0; m < q.size(); ++m) d = std::max(d, la::max_abs(q2[m] - q[m]));
    CHECK(d <= 1e-10);
  }
}
