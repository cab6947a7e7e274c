#include "projlab/frame.hpp"

#include <algorithm>
#include <cmath>

namespace projlab::frame {

using expr::Expr;
using la::Mat4C;

Mat4C wilczynski_U(const std::array<cplx, 5>& u, bool ones) {
  const auto [beta, P, k, bPb, b] = u;
  Mat4C m;
  m(0, 0) = beta;
  m(1, 1) = -beta;
  m(2, 2) = beta;
  m(3, 3) = -beta;
  m(0, 1) = P;
  m(2, 3) = P;
  m(0, 2) = k;
  m(1, 3) = k;
  m(0, 3) = bPb;
  m(2, 1) = b;
  if (ones) {
    m(1, 0) = 1.0;
    m(3, 2) = 1.0;
  }
  return m;
}

Mat4C wilczynski_V(const std::array<cplx, 5>& v, bool ones) {
  const auto [gamma, Pb, kb, bbP, bb] = v;
  Mat4C m;
  m(0, 0) = gamma;
  m(1, 1) = gamma;
  m(2, 2) = -gamma;
  m(3, 3) = -gamma;
  m(0, 1) = kb;
  m(2, 3) = kb;
  m(0, 2) = Pb;
  m(1, 3) = Pb;
  m(0, 3) = bbP;
  m(1, 2) = bb;
  if (ones) {
    m(2, 0) = 1.0;
    m(3, 1) = 1.0;
  }
  return m;
}

MovingFramePair make_pair(const ConnectionEntries& e) {
  return {wilczynski_U(e.u), wilczynski_V(e.v), wilczynski_U(e.u_zb, false), wilczynski_V(e.v_z, false)};
}

Mat4C curvature(const MovingFramePair& m) { return m.U_zb - m.V_z - la::commutator(m.U, m.V); }

ConnectionField::ConnectionField(const SurfaceData& sd, const DerivedData& dd) {
  const Expr& b = sd.b.value();
  const Expr bb = expr::conj(b);
  const Expr bb_z = expr::conj(sd.b.d(0, 1));
  const Expr& P = dd.P.f;
  const Expr& k = dd.k.f;
  const std::array<Expr, 5> u = {bb_z / (2.0 * bb), P, k, b * expr::conj(P), b};

  std::vector<Expr> out;
  out.reserve(20);
  for (const auto& e : u) out.push_back(e);
  for (const auto& e : u) out.push_back(expr::conj(e));
  std::array<Expr, 5> u_zb;
  for (std::size_t n = 0; n < 5; ++n) u_zb[n] = expr::wirtinger(u[n], expr::Var::Zb);
  for (const auto& e : u_zb) out.push_back(e);
  // d/dz conj(f) = conj(d/dzb f)
  for (const auto& e : u_zb) out.push_back(expr::conj(e));
  program_ = expr::Program(out);
}

ConnectionEntries ConnectionField::entries(cplx z) const {
  std::array<cplx, 20> buf;
  program_.evaluate(z, std::conj(z), buf);
  ConnectionEntries e;
  for (std::size_t n = 0; n < 5; ++n) {
    e.u[n] = buf[n];
    e.v[n] = buf[5 + n];
    e.u_zb[n] = buf[10 + n];
    e.v_z[n] = buf[15 + n];
  }
  return e;
}

MovingFramePair assemble_UV(const SurfaceData& sd, const DerivedData& dd, NodeIndex node) {
  const ConnectionEntries e = ConnectionField(sd, dd).entries(sd.grid().point(node));
  if (std::abs(e.u[4]) < canonical::kMinAbsB) throw canonical::InvalidSurfaceError("|b| < 1e-6 at node");
  return make_pair(e);
}

double flatness_sup(const SurfaceData& sd, const DerivedData& dd) {
  const ConnectionField conn(sd, dd);
  const Grid grid = sd.grid();
  double sup = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) sup = std::max(sup, la::frobenius(curvature(conn.at(grid.point(i, j)))));
  return sup;
}

HalfLattice sample_half_lattice(const Grid& grid, const ConnectionField& conn) {
  HalfLattice lat;
  lat.grid = grid;
  lat.na = 2 * grid.nx() - 1;
  lat.nb = 2 * grid.ny() - 1;
  const std::size_t n = static_cast<std::size_t>(lat.na) * static_cast<std::size_t>(lat.nb);
  lat.U.resize(n);
  lat.V.resize(n);
  const double half = 0.5 * grid.h();
  for (int b = 0; b < lat.nb; ++b)
    for (int a = 0; a < lat.na; ++a) {
      if (!HalfLattice::used(a, b)) continue;
      const cplx z(grid.domain().x0 + a * half, grid.domain().y0 + b * half);
      const ConnectionEntries e = conn.entries(z);
      lat.U[lat.index(a, b)] = wilczynski_U(e.u);
      lat.V[lat.index(a, b)] = wilczynski_V(e.v);
    }
  return lat;
}

HalfLattice map_lattice(const HalfLattice& lat, const std::function<std::pair<Mat4C, Mat4C>(const Mat4C&, const Mat4C&)>& f) {
  HalfLattice out = lat;
  for (int b = 0; b < lat.nb; ++b)
    for (int a = 0; a < lat.na; ++a) {
      if (!HalfLattice::used(a, b)) continue;
      const std::size_t n = lat.index(a, b);
      std::tie(out.U[n], out.V[n]) = f(lat.U[n], lat.V[n]);
    }
  return out;
}

namespace {

const cplx kI(0.0, 1.0);

Mat4C gen_x(const HalfLattice& lat, int a, int b) {
  const std::size_t n = lat.index(a, b);
  return lat.U[n] + lat.V[n];
}

Mat4C gen_y(const HalfLattice& lat, int a, int b) {
  const std::size_t n = lat.index(a, b);
  return (lat.U[n] - lat.V[n]) * kI;
}

// One RK4 step of F' = F A(t) with step h; a0, am, a1 are A at t, t + h/2, t + h.
Mat4C rk4_step(const Mat4C& F, const Mat4C& a0, const Mat4C& am, const Mat4C& a1, double h) {
  const cplx hc(h, 0.0);
  const Mat4C k1 = F * a0;
  const Mat4C k2 = (F + k1 * (0.5 * hc)) * am;
  const Mat4C k3 = (F + k2 * (0.5 * hc)) * am;
  const Mat4C k4 = (F + k3 * hc) * a1;
  return F + (k1 + k2 * cplx(2.0) + k3 * cplx(2.0) + k4) * (hc / 6.0);
}

// Integrates along row j (x-direction) from node i0, where F is already set.
void sweep_row(const HalfLattice& lat, std::vector<Mat4C>& F, int i0, int j) {
  const Grid& g = lat.grid;
  for (int dir : {1, -1})
    for (int i = i0; i + dir >= 0 && i + dir < g.nx(); i += dir) {
      const int a = 2 * i, b = 2 * j;
      F[g.index(i + dir, j)] = rk4_step(F[g.index(i, j)], gen_x(lat, a, b), gen_x(lat, a + dir, b),
                                        gen_x(lat, a + 2 * dir, b), dir * g.h());
    }
}

void sweep_col(const HalfLattice& lat, std::vector<Mat4C>& F, int i, int j0) {
  const Grid& g = lat.grid;
  for (int dir : {1, -1})
    for (int j = j0; j + dir >= 0 && j + dir < g.ny(); j += dir) {
      const int a = 2 * i, b = 2 * j;
      F[g.index(i, j + dir)] = rk4_step(F[g.index(i, j)], gen_y(lat, a, b), gen_y(lat, a, b + dir),
                                        gen_y(lat, a, b + 2 * dir), dir * g.h());
    }
}

}  // namespace

FrameField integrate_lattice(const HalfLattice& lat, NodeIndex base, Sweep sweep) {
  FrameField ff{lat.grid, base, sweep, std::vector<Mat4C>(lat.grid.size())};
  ff.F[lat.grid.index(base)] = Mat4C::identity();
  if (sweep == Sweep::XThenY) {
    sweep_row(lat, ff.F, base.i, base.j);
    for (int i = 0; i < lat.grid.nx(); ++i) sweep_col(lat, ff.F, i, base.j);
  } else {
    sweep_col(lat, ff.F, base.i, base.j);
    for (int j = 0; j < lat.grid.ny(); ++j) sweep_row(lat, ff.F, base.i, j);
  }
  return ff;
}

FrameField integrate_frame(const SurfaceData& sd, const DerivedData& dd, Sweep sweep) {
  const double gc = canonical::gauss_codazzi_residual(sd, dd).max_sup();
  if (gc > 1e-6) throw NonFlatError("Gauss-Codazzi residual " + std::to_string(gc) + " exceeds 1e-6");
  const double curv = flatness_sup(sd, dd);
  if (curv > 1e-6) throw NonFlatError("connection curvature " + std::to_string(curv) + " exceeds 1e-6");
  const ConnectionField conn(sd, dd);
  return integrate_lattice(sample_half_lattice(sd.grid(), conn), sd.base_node(), sweep);
}

double path_independence_residual(const HalfLattice& lat, NodeIndex base) {
  const FrameField a = integrate_lattice(lat, base, Sweep::XThenY);
  const FrameField b = integrate_lattice(lat, base, Sweep::YThenX);
  double r = 0.0;
  for (std::size_t n = 0; n < a.F.size(); ++n) r = std::max(r, la::frobenius(a.F[n] - b.F[n]));
  return r;
}

double path_independence_residual(const SurfaceData& sd, const DerivedData& dd) {
  const ConnectionField conn(sd, dd);
  return path_independence_residual(sample_half_lattice(sd.grid(), conn), sd.base_node());
}

double det_drift(const FrameField& ff) {
  double r = 0.0;
  for (const auto& F : ff.F) r = std::max(r, std::abs(la::det(F) - 1.0));
  return r;
}

double reality_residual(const FrameField& ff) {
  const Mat4C S = la::constants::Cswap();
  double r = 0.0;
  for (const auto& F : ff.F) r = std::max(r, la::frobenius(la::conj(F) - S * F * S));
  return r;
}

RealFrameField realify(const FrameField& ff) {
  const Mat4C L = la::constants::L();
  const Mat4C Linv = la::constants::L_inv();
  RealFrameField rf{ff.grid, ff.base, std::vector<Mat4R>(ff.F.size()), 0.0};
  for (std::size_t n = 0; n < ff.F.size(); ++n) {
    const Mat4C Fh = L * ff.F[n] * Linv;
    rf.max_imag = std::max(rf.max_imag, la::max_abs_imag(Fh));
    rf.F[n] = la::real_part(Fh);
  }
  return rf;
}

SurfaceLift surface_lift(const RealFrameField& rf) {
  SurfaceLift s{rf.grid, std::vector<la::Vec4R>(rf.F.size()), std::vector<std::optional<la::Vec4R>>(rf.F.size())};
  for (std::size_t n = 0; n < rf.F.size(); ++n) {
    const Mat4R& F = rf.F[n];
    const la::Vec4R f = {F(0, 0), F(1, 0), F(2, 0), F(3, 0)};
    s.lift[n] = f;
    if (std::abs(f[0]) >= kChartThreshold) s.point[n] = la::Vec4R{f[1] / f[0], f[2] / f[0], f[3] / f[0], 0.0};
  }
  return s;
}

double column_relation_residual(const SurfaceData& sd, const DerivedData& dd, const FrameField& ff) {
  const ConnectionField conn(sd, dd);
  const Grid& g = ff.grid;
  const double h = g.h();
  double sup = 0.0;
  for (int j = 1; j + 1 < g.ny(); ++j)
    for (int i = 1; i + 1 < g.nx(); ++i) {
      const cplx beta = conn.entries(g.point(i, j)).u[0];
      const Mat4C& F = ff.at(i, j);
      for (int r = 0; r < 4; ++r) {
        const cplx fx = (ff.at(i + 1, j)(r, 0) - ff.at(i - 1, j)(r, 0)) / (2.0 * h);
        const cplx fy = (ff.at(i, j + 1)(r, 0) - ff.at(i, j - 1)(r, 0)) / (2.0 * h);
        const cplx fz = 0.5 * (fx - kI * fy);
        sup = std::max(sup, std::abs(fz - beta * F(r, 0) - F(r, 1)));
      }
    }
  return sup;
}

}  // namespace projlab::frame
