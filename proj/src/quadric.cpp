#include "projlab/quadric.hpp"

#include <algorithm>
#include <cmath>

#include "projlab/loop.hpp"

namespace projlab::quadric {

using la::constants::L;

std::string to_string(GaussMap m) { return m == GaussMap::G1 ? "g1" : "g2"; }

GaussMap parse_gauss_map(const std::string& s) {
  if (s == "g1") return GaussMap::G1;
  if (s == "g2") return GaussMap::G2;
  throw std::invalid_argument("unknown Gauss map '" + s + "' (expected g1 or g2)");
}

double asymmetry(const Mat4R& q) {
  double r = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) r = std::max(r, std::abs(q(i, j) - q(j, i)));
  return r;
}

Mat4R normalize(const Mat4R& q) { return q * (1.0 / std::pow(std::abs(la::det(q)), 0.25)); }

bool lorentzian_sign_pattern(const Mat4R& q) {
  const la::Signature s = la::signature(q);
  return (s.pos == 3 && s.neg == 1) || (s.pos == 1 && s.neg == 3);
}

QuadricGridCheck check_quadric_grid(const std::vector<Mat4R>& qs, const Mat4R& reference) {
  QuadricGridCheck c;
  const double d0 = la::det(reference);
  for (const auto& q : qs) {
    c.max_asymmetry = std::max(c.max_asymmetry, asymmetry(q));
    c.max_normalized_det_error = std::max(c.max_normalized_det_error, std::abs(std::abs(la::det(normalize(q))) - 1.0));
    c.max_det_drift = std::max(c.max_det_drift, std::abs(la::det(q) - d0));
    try {
      c.sign_pattern_ok = c.sign_pattern_ok && lorentzian_sign_pattern(q);
    } catch (const std::runtime_error&) {
      c.sign_pattern_ok = false;
    }
  }
  return c;
}

namespace {

std::vector<Mat4R> congruence(const RealFrameField& rf, const Mat4R& j) {
  std::vector<Mat4R> out(rf.F.size());
  for (std::size_t n = 0; n < rf.F.size(); ++n) out[n] = rf.F[n] * j * la::transpose(rf.F[n]);
  return out;
}

}  // namespace

std::vector<Mat4R> g1(const RealFrameField& rf) { return congruence(rf, la::constants::J1_hat()); }
std::vector<Mat4R> g2(const RealFrameField& rf) { return congruence(rf, la::constants::J2_hat()); }

std::vector<Mat4R> gauss_map(GaussMap which, const RealFrameField& rf) {
  return which == GaussMap::G1 ? g1(rf) : g2(rf);
}

std::vector<Mat4R> g2_from_complex(const FrameField& ff, double* max_imag) {
  const Mat4C l = L();
  const Mat4C lt = la::transpose(l);
  const Mat4C j2 = la::constants::J2();
  std::vector<Mat4R> out(ff.F.size());
  double im = 0.0;
  for (std::size_t n = 0; n < ff.F.size(); ++n) {
    const Mat4C g = -(l * ff.F[n] * j2 * la::transpose(ff.F[n]) * lt);
    im = std::max(im, la::max_abs_imag(g));
    out[n] = la::real_part(g);
  }
  if (max_imag) *max_imag = im;
  return out;
}

cplx metric_at(const Mat4C& q, const Mat4C& x, const Mat4C& y) {
  const Mat4C qi = la::inverse(q);
  return la::trace(qi * x * qi * y);
}

cplx metric_at(const Mat4R& q, const Mat4C& x, const Mat4C& y) { return metric_at(la::to_complex(q), x, y); }

GaussDerivative closed_form_derivative(GaussMap which, const Mat4C& F, const frame::MovingFramePair& uv) {
  const Mat4C j = which == GaussMap::G1 ? la::constants::J1() : la::constants::J2();
  const cplx sign = which == GaussMap::G1 ? 1.0 : -1.0;
  const Mat4C lf = L() * F;
  const Mat4C lft = la::transpose(lf);
  const auto sym = [&](const Mat4C& a) { return lf * (a * j + j * la::transpose(a)) * lft * sign; };
  return {sym(uv.U), sym(uv.V)};
}

std::vector<ConformalityRow> conformality_report(GaussMap which, const canonical::SurfaceData& sd,
                                                 const canonical::DerivedData& dd, const FrameField& ff) {
  const RealFrameField rf = frame::realify(ff);
  const std::vector<Mat4R> g = gauss_map(which, rf);
  const frame::ConnectionField conn(sd, dd);
  const Grid& grid = ff.grid;
  const double h = grid.h();
  const cplx I(0.0, 1.0);

  std::vector<ConformalityRow> rows;
  for (int j = 1; j + 1 < grid.ny(); ++j)
    for (int i = 1; i + 1 < grid.nx(); ++i) {
      const Mat4C gx = la::to_complex(g[grid.index(i + 1, j)] - g[grid.index(i - 1, j)]) * cplx(1.0 / (2.0 * h));
      const Mat4C gy = la::to_complex(g[grid.index(i, j + 1)] - g[grid.index(i, j - 1)]) * cplx(1.0 / (2.0 * h));
      const Mat4C dz = (gx - gy * I) * cplx(0.5);
      const Mat4C dzb = (gx + gy * I) * cplx(0.5);
      const Mat4R& q = g[grid.index(i, j)];

      const frame::ConnectionEntries e = conn.entries(grid.point(i, j));
      const GaussDerivative exact = closed_form_derivative(which, ff.at(i, j), frame::make_pair(e));
      const cplx P = e.u[1], k = e.u[2], b = e.u[4];

      ConformalityRow row;
      row.node = {i, j};
      row.x = grid.x(i);
      row.y = grid.y(j);
      row.fd_zz = metric_at(q, dz, dz);
      row.fd_zzb = metric_at(q, dz, dzb);
      if (which == GaussMap::G1) {
        row.closed_form_zz = 16.0 * P;
        row.closed_form_zzb = 8.0 * (k + std::conj(k)) + 4.0 * std::norm(b);
      } else {
        row.closed_form_zz = 0.0;
        row.closed_form_zzb = 4.0 * std::norm(b);
      }
      row.exact_zz = metric_at(q, exact.dz, exact.dz);
      row.exact_zzb = metric_at(q, exact.dz, exact.dzb);
      row.derivative_error = std::max(la::max_abs(dz - exact.dz), la::max_abs(dzb - exact.dzb));
      rows.push_back(row);
    }
  return rows;
}

PrimitiveLift primitive_lift(const FrameField& ff) {
  const Mat4C j1 = la::constants::J1();
  const Mat4C ej1 = la::constants::E() * j1;
  const Mat4C l = L();
  const Mat4C lt = la::transpose(l);
  const std::vector<Mat4R> ref = g1(frame::realify(ff));
  PrimitiveLift out;
  out.g.resize(ff.F.size());
  out.pi.resize(ff.F.size());
  for (std::size_t n = 0; n < ff.F.size(); ++n) {
    const Mat4C ft = la::transpose(ff.F[n]);
    out.g[n] = ff.F[n] * ej1 * ft;
    out.pi[n] = ff.F[n] * j1 * ft;
    out.pi_vs_g1 = std::max(out.pi_vs_g1, la::max_abs(l * out.pi[n] * lt - la::to_complex(ref[n])));
  }
  return out;
}

Mat4C stabilizer_element(cplx k1, cplx k2) { return Mat4C::diag(k1, k2, 1.0 / k2, 1.0 / k1); }

double kappa_fixedness(const Mat4C& k) { return la::frobenius(loop::kappa_group(k) - k); }

}  // namespace projlab::quadric
