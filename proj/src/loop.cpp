#include "projlab/loop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace projlab::loop {

using la::constants::E;
using la::constants::J1;
using la::constants::J2;

std::string to_string(SplitType s) { return s == SplitType::FirstOrder ? "FirstOrder" : "Conformal"; }

SplitType parse_split(const std::string& s) {
  if (s == "first-order" || s == "FirstOrder" || s == "first_order") return SplitType::FirstOrder;
  if (s == "conformal" || s == "Conformal") return SplitType::Conformal;
  throw std::invalid_argument("unknown split '" + s + "' (expected first-order or conformal)");
}

Mat4C tau1(const Mat4C& x) { return -(J1() * la::transpose(x) * J1()); }
Mat4C tau2(const Mat4C& x) { return -(J2() * la::transpose(x) * J2()); }

Mat4C sigma(const Mat4C& x) {
  // E is diagonal, so Ad(E) scales entry (r, c) by E_r / E_c.
  const Mat4C e = E();
  Mat4C r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = x(i, j) * e(i, i) / e(j, j);
  return r;
}

Mat4C kappa(const Mat4C& x) { return tau1(sigma(x)); }

Mat4C tau(const Mat4C& x, SplitType s) { return s == SplitType::FirstOrder ? tau1(x) : tau2(x); }

Mat4C tau1_group(const Mat4C& g) { return J1() * la::inverse(la::transpose(g)) * J1(); }
Mat4C tau2_group(const Mat4C& g) { return J2() * la::inverse(la::transpose(g)) * J2(); }
Mat4C sigma_group(const Mat4C& g) { return sigma(g); }
Mat4C kappa_group(const Mat4C& g) { return tau1_group(sigma_group(g)); }

Split split(const Mat4C& x, SplitType s) {
  const Mat4C t = tau(x, s);
  return {(x + t) * cplx(0.5), (x - t) * cplx(0.5)};
}

void check_on_circle(cplx lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw OffCircleError("spectral parameter is not on the unit circle");
}

namespace {

using Mask = std::array<bool, 16>;

Mask off_diagonal() {
  Mask m{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[static_cast<std::size_t>(4 * r + c)] = r != c;
  return m;
}

Mask entries(std::initializer_list<std::pair<int, int>> rc) {
  Mask m{};
  for (auto [r, c] : rc) m[static_cast<std::size_t>(4 * r + c)] = true;
  return m;
}

Mask u_mask(SplitType s) { return s == SplitType::FirstOrder ? off_diagonal() : entries({{0, 3}, {2, 1}}); }
Mask v_mask(SplitType s) { return s == SplitType::FirstOrder ? off_diagonal() : entries({{0, 3}, {1, 2}}); }

Mat4C scale(Mat4C m, const Mask& mask, cplx f) {
  for (std::size_t n = 0; n < 16; ++n)
    if (mask[n]) m.a[n] *= f;
  return m;
}

}  // namespace

MovingFramePair loop_UV(const frame::ConnectionEntries& e, cplx lambda, SplitType s) {
  check_on_circle(lambda);
  const MovingFramePair m = frame::make_pair(e);
  const Mask mu = u_mask(s), mv = v_mask(s);
  const cplx inv = 1.0 / lambda;
  return {scale(m.U, mu, inv), scale(m.V, mv, lambda), scale(m.U_zb, mu, inv), scale(m.V_z, mv, lambda)};
}

MovingFramePair loop_UV_via_split(const MovingFramePair& m, cplx lambda, SplitType s) {
  check_on_circle(lambda);
  const cplx inv = 1.0 / lambda;
  const auto u = [&](const Mat4C& x) {
    const Split sp = split(x, s);
    return sp.k + sp.p * inv;
  };
  const auto v = [&](const Mat4C& x) {
    const Split sp = split(x, s);
    return sp.k + sp.p * lambda;
  };
  return {u(m.U), v(m.V), u(m.U_zb), v(m.V_z)};
}

frame::HalfLattice loop_lattice(const frame::HalfLattice& lat, cplx lambda, SplitType s) {
  check_on_circle(lambda);
  const Mask mu = u_mask(s), mv = v_mask(s);
  const cplx inv = 1.0 / lambda;
  return frame::map_lattice(lat, [&](const Mat4C& U, const Mat4C& V) {
    return std::pair{scale(U, mu, inv), scale(V, mv, lambda)};
  });
}

std::vector<cplx> default_lambda_samples(int n_random, std::uint64_t seed) {
  std::vector<cplx> out;
  for (int m = 0; m < 12; ++m) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * m / 12.0));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int m = 0; m < n_random; ++m) out.push_back(std::polar(1.0, angle(rng)));
  return out;
}

std::vector<FlatnessSample> flatness_residual(const canonical::SurfaceData& sd, const canonical::DerivedData& dd,
                                              SplitType s, const std::vector<cplx>& lambdas) {
  for (cplx l : lambdas) check_on_circle(l);
  std::vector<FlatnessSample> out;
  for (cplx l : lambdas) out.push_back({l, 0.0});
  const frame::ConnectionField conn(sd, dd);
  const Grid grid = sd.grid();
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const frame::ConnectionEntries e = conn.entries(grid.point(i, j));
      for (auto& sample : out)
        sample.sup = std::max(sample.sup, la::frobenius(frame::curvature(loop_UV(e, sample.lambda, s))));
    }
  return out;
}

FrameField integrate_loop_frame(const canonical::SurfaceData& sd, const canonical::DerivedData& dd, SplitType s,
                                cplx lambda, frame::Sweep sweep) {
  const double curv = flatness_residual(sd, dd, s, {lambda}).front().sup;
  if (curv > 1e-6) throw frame::NonFlatError("curvature " + std::to_string(curv) + " at lambda exceeds 1e-6");
  const frame::ConnectionField conn(sd, dd);
  return frame::integrate_lattice(loop_lattice(frame::sample_half_lattice(sd.grid(), conn), lambda, s),
                                  sd.base_node(), sweep);
}

TwistResidual twist_residual(const FrameField& f_l, const FrameField& f_el, const FrameField& f_ml,
                             const FrameField& f_mel) {
  TwistResidual r;
  for (std::size_t n = 0; n < f_l.F.size(); ++n) {
    const Mat4C s = sigma_group(f_l.F[n]);
    r.sigma = std::max(r.sigma, la::frobenius(s - f_el.F[n]));
    r.kappa = std::max(r.kappa, la::frobenius(tau1_group(s) - f_mel.F[n]));
    r.tau1 = std::max(r.tau1, la::frobenius(tau1_group(f_l.F[n]) - f_ml.F[n]));
  }
  return r;
}

TwistResidual twist_residual(const canonical::SurfaceData& sd, const canonical::DerivedData& dd, cplx lambda) {
  const frame::ConnectionField conn(sd, dd);
  const frame::HalfLattice lat = frame::sample_half_lattice(sd.grid(), conn);
  const cplx eps = la::constants::epsilon();
  const auto frame_at = [&](cplx l) {
    return frame::integrate_lattice(loop_lattice(lat, l, SplitType::FirstOrder), sd.base_node(), frame::Sweep::XThenY);
  };
  return twist_residual(frame_at(lambda), frame_at(eps * lambda), frame_at(-lambda), frame_at(-eps * lambda));
}

cplx omega() { return -la::constants::epsilon(); }

EigenProjection eig_project(const Mat4C& x) {
  std::array<Mat4C, 6> powers;
  powers[0] = x;
  for (std::size_t m = 1; m < 6; ++m) powers[m] = kappa(powers[m - 1]);
  const cplx w = omega();
  EigenProjection out;
  for (int j = 0; j < 6; ++j) {
    Mat4C c;
    for (int m = 0; m < 6; ++m) c += powers[static_cast<std::size_t>(m)] * std::pow(w, -j * m);
    out[static_cast<std::size_t>(j)] = c * cplx(1.0 / 6.0);
  }
  return out;
}

double primitivity_residual(const canonical::SurfaceData& sd, const canonical::DerivedData& dd) {
  const frame::ConnectionField conn(sd, dd);
  const Grid grid = sd.grid();
  double sup = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const Mat4C x = split(conn.at(grid.point(i, j)).U, SplitType::FirstOrder).p;
      sup = std::max(sup, la::frobenius(x - eig_project(x)[5]));
    }
  return sup;
}

Deformation deformation_frame(const FrameField& ff_lambda, cplx lambda, const canonical::SurfaceData& sd,
                              const canonical::DerivedData& dd) {
  check_on_circle(lambda);
  const Mat4C D = la::constants::D(lambda);
  const Mat4C Dinv = la::constants::D(1.0 / lambda);
  const cplx l1 = 1.0 / lambda, l2 = l1 * l1, l3 = l2 * l1;

  Deformation out{ff_lambda, 0.0, 0.0};
  for (auto& F : out.frame.F) F = D * F * Dinv;

  const frame::ConnectionField conn(sd, dd);
  const Grid& grid = ff_lambda.grid;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const frame::ConnectionEntries e = conn.entries(grid.point(i, j));
      const MovingFramePair m = loop_UV(e, lambda, SplitType::FirstOrder);
      const auto [beta, P, k, bPb, b] = e.u;
      const auto [gamma, Pb, kb, bbP, bb] = e.v;
      // (b, P) -> (lambda^-3 b, lambda^-2 P); conj(lambda) = 1/lambda.
      const Mat4C Uexp = frame::wilczynski_U({beta, l2 * P, k, l1 * bPb, l3 * b});
      const Mat4C Vexp = frame::wilczynski_V({gamma, Pb / l2, kb, bbP / l1, bb / l3});
      out.leak = std::max({out.leak, la::max_abs(D * m.U * Dinv - Uexp), la::max_abs(D * m.V * Dinv - Vexp)});
      out.abs_b_change = std::max(out.abs_b_change, std::abs(std::abs(l3 * b) - std::abs(b)));
    }
  if (out.leak > 1e-9) throw ShapeMismatchError("deformed connection leaves the Wilczynski shape");
  return out;
}

}  // namespace projlab::loop
