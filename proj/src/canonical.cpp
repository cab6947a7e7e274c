#include "projlab/canonical.hpp"

#include <algorithm>
#include <cmath>

namespace projlab::canonical {

using expr::Var;
using expr::wirtinger;

std::vector<std::vector<cplx>> sample(const Grid& grid, std::span<const Expr> exprs) {
  const expr::Program prog(exprs);
  std::vector<std::vector<cplx>> out(exprs.size(), std::vector<cplx>(grid.size()));
  std::vector<cplx> buf(exprs.size());
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const cplx z = grid.point(i, j);
      prog.evaluate(z, std::conj(z), buf);
      const std::size_t n = grid.index(i, j);
      for (std::size_t k = 0; k < exprs.size(); ++k) out[k][n] = buf[k];
    }
  return out;
}

namespace {

ScalarField field_of(const Grid& grid, const std::vector<cplx>& values, double (*f)(cplx)) {
  ScalarField s{grid, std::vector<double>(values.size())};
  std::transform(values.begin(), values.end(), s.values.begin(), f);
  return s;
}

double abs_of(cplx v) { return std::abs(v); }
double abs_imag(cplx v) { return std::abs(v.imag()); }

}  // namespace

void validate(const SurfaceData& sd) {
  const Grid grid = sd.grid();
  std::vector<Expr> all;
  for (const CoeffField* f : {&sd.b, &sd.p})
    for (int a = 0; a <= CoeffField::kMaxOrder; ++a)
      for (int b = 0; a + b <= CoeffField::kMaxOrder; ++b) all.push_back(f->d(a, b));
  std::vector<std::vector<cplx>> values;
  try {
    values = sample(grid, all);
  } catch (const expr::PoleError& e) {
    throw InvalidSurfaceError(std::string("surface data has a pole on the grid: ") + e.what());
  }
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (std::abs(values[0][n]) < kMinAbsB) throw InvalidSurfaceError("|b| < 1e-6 on the grid");
    for (const auto& v : values)
      if (!std::isfinite(v[n].real()) || !std::isfinite(v[n].imag()))
        throw InvalidSurfaceError("surface data is not finite on the grid");
  }
}

Field1 Field1::of(const Expr& e) { return {e, wirtinger(e, Var::Z), wirtinger(e, Var::Zb)}; }

Field1 Field1::conj() const { return {expr::conj(f), expr::conj(f_zb), expr::conj(f_z)}; }

DerivedData derive_kP(const SurfaceData& sd) {
  const Expr& b = sd.b.value();
  const Expr bb = expr::conj(b);
  const Expr bb_z = expr::conj(sd.b.d(0, 1));
  const Expr bb_zz = expr::conj(sd.b.d(0, 2));
  // (log b)_{z zb} = (b b_{z zb} - b_z b_zb) / b^2
  const Expr log_b_zzb = (b * sd.b.d(1, 1) - sd.b.d(1, 0) * sd.b.d(0, 1)) / expr::pow(b, 2);
  const Expr k = (b * bb - log_b_zzb) / 2.0;
  const Expr P = sd.p.value() + sd.b.d(0, 1) / 2.0 - bb_zz / (2.0 * bb) + expr::pow(bb_z, 2) / (4.0 * expr::pow(bb, 2));
  return {Field1::of(k), Field1::of(P)};
}

ScalarField k_identity_residual(const SurfaceData& sd, const DerivedData& dd) {
  const Expr& b = sd.b.value();
  const Expr log_b_zzb = wirtinger(wirtinger(expr::log(b), Var::Z), Var::Zb);
  const Expr r = 2.0 * dd.k.f + log_b_zzb - b * expr::conj(b);
  const auto v = sample(sd.grid(), std::span<const Expr>(&r, 1));
  return field_of(sd.grid(), v[0], abs_of);
}

const ResidualEntry& ResidualReport::at(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw std::out_of_range("residual report has no entry " + name);
}

double ResidualReport::max_sup() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.sup);
  return m;
}

ResidualEntry summarize(const std::string& name, const ScalarField& field) {
  ResidualEntry e{name, field.sup(), field.argmax()};
  e.argmax_x = field.grid.x(e.argmax.i);
  e.argmax_y = field.grid.y(e.argmax.j);
  return e;
}

namespace {

Expr minimality_expr(const SurfaceData& sd, const DerivedData& dd) {
  return expr::conj(sd.b.value()) * dd.P.f_z + 2.0 * expr::conj(sd.b.d(0, 1)) * dd.P.f;
}

Expr comp1_expr(const SurfaceData& sd, const DerivedData& dd) {
  const Field1 Pb = dd.P.conj();
  return Pb.f_z - dd.k.f_zb - dd.k.f * sd.b.d(0, 1) / sd.b.value();
}

}  // namespace

ResidualReport gauss_codazzi_residual(const SurfaceData& sd, const DerivedData& dd) {
  const Grid grid = sd.grid();
  const Expr exprs[] = {comp1_expr(sd, dd), minimality_expr(sd, dd)};
  const auto v = sample(grid, exprs);
  return {{summarize("comp1", field_of(grid, v[0], abs_of)), summarize("comp2", field_of(grid, v[1], abs_imag))}};
}

ScalarField minimality_residual(const SurfaceData& sd, const DerivedData& dd) {
  const Expr e = minimality_expr(sd, dd);
  return field_of(sd.grid(), sample(sd.grid(), std::span<const Expr>(&e, 1))[0], abs_of);
}

ScalarField demoulin_residual(const SurfaceData& sd, const DerivedData& dd) {
  return field_of(sd.grid(), sample(sd.grid(), std::span<const Expr>(&dd.P.f, 1))[0], abs_of);
}

ResidualReport canonical_integrability_residual(const SurfaceData& sd) {
  const CoeffField& b = sd.b;
  const Expr bb = expr::conj(b.value());
  const Expr bb_z = expr::conj(b.d(0, 1));
  const Expr bb_zzb = expr::conj(b.d(1, 1));
  const Expr pb = expr::conj(sd.p.value());
  const Expr pb_zb = expr::conj(sd.p.d(1, 0));
  const Expr canon1 = sd.p.d(0, 1) - b.value() * bb_z - b.d(1, 0) * bb / 2.0 + b.d(0, 2) / 2.0;
  const Expr canon2 = b.d(0, 3) - b.value() * bb_zzb - 2.0 * b.value() * pb_zb - 2.0 * b.d(0, 1) * bb_z -
                      4.0 * b.d(0, 1) * pb;
  const Grid grid = sd.grid();
  const Expr exprs[] = {canon1, canon2};
  const auto v = sample(grid, exprs);
  return {{summarize("canon1", field_of(grid, v[0], abs_of)), summarize("canon2", field_of(grid, v[1], abs_imag))}};
}

ResidualReport full_report(const SurfaceData& sd, const DerivedData& dd) {
  ResidualReport r = gauss_codazzi_residual(sd, dd);
  r.entries.push_back(summarize("projmin", minimality_residual(sd, dd)));
  r.entries.push_back(summarize("demoulin", demoulin_residual(sd, dd)));
  for (auto& e : canonical_integrability_residual(sd).entries) r.entries.push_back(e);
  return r;
}

double ZcrTriple::max() const { return std::max({P_zb, k_eq, projmin}); }

ZcrTriple zcr1st_residual(const SurfaceData& sd, const DerivedData& dd) {
  const Expr exprs[] = {dd.P.f_zb, dd.k.f_zb + dd.k.f * sd.b.d(0, 1) / sd.b.value(), minimality_expr(sd, dd)};
  const Grid grid = sd.grid();
  const auto v = sample(grid, exprs);
  return {field_of(grid, v[0], abs_of).sup(), field_of(grid, v[1], abs_of).sup(), field_of(grid, v[2], abs_of).sup()};
}

std::string to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::Demoulin: return "Demoulin";
    case SurfaceClass::ProjectiveMinimal: return "ProjectiveMinimal";
    case SurfaceClass::Generic: return "Generic";
  }
  return "Generic";
}

SurfaceClass parse_surface_class(const std::string& s) {
  if (s == "Demoulin") return SurfaceClass::Demoulin;
  if (s == "ProjectiveMinimal") return SurfaceClass::ProjectiveMinimal;
  if (s == "Generic") return SurfaceClass::Generic;
  throw std::invalid_argument("unknown surface class '" + s + "'");
}

namespace {

// (sup - inf) of real and imaginary parts, whichever is larger.
double spread(const std::vector<cplx>& v) {
  if (v.empty()) return 0.0;
  const auto [re_lo, re_hi] = std::minmax_element(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  const auto [im_lo, im_hi] = std::minmax_element(v.begin(), v.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  return std::max(re_hi->real() - re_lo->real(), im_hi->imag() - im_lo->imag());
}

}  // namespace

Classification classify(const SurfaceData& sd, double tol) {
  const DerivedData dd = derive_kP(sd);
  const ResidualReport gc = gauss_codazzi_residual(sd, dd);
  if (gc.max_sup() > tol)
    throw InvalidSurfaceError("Gauss-Codazzi residual " + std::to_string(gc.max_sup()) + " exceeds tolerance; not a surface");

  Classification c;
  c.zcr = zcr1st_residual(sd, dd);
  c.sup_P = demoulin_residual(sd, dd).sup();
  c.sup_minimality = minimality_residual(sd, dd).sup();
  if (c.sup_P <= tol) {
    c.cls = SurfaceClass::Demoulin;
  } else if (c.sup_minimality <= tol) {
    c.cls = SurfaceClass::ProjectiveMinimal;
  } else {
    c.cls = SurfaceClass::Generic;
  }
  const Expr exprs[] = {sd.b.value(), dd.k.f, dd.P.f};
  const auto v = sample(sd.grid(), exprs);
  c.coincidence = spread(v[0]) <= tol && spread(v[1]) <= tol && spread(v[2]) <= tol && c.sup_P > tol;
  return c;
}

ProjectiveInvariants projective_invariants(const SurfaceData& sd) {
  const Grid grid = sd.grid();
  const auto b = sample(grid, std::span<const Expr>(&sd.b.value(), 1))[0];
  ProjectiveInvariants inv;
  inv.fubini_pick = field_of(grid, b, [](cplx v) { return 8.0 * std::norm(v); });
  inv.metric_coefficient = inv.fubini_pick;
  inv.cubic_coefficient.resize(b.size());
  std::transform(b.begin(), b.end(), inv.cubic_coefficient.begin(), [](cplx v) { return -2.0 * v; });
  return inv;
}

}  // namespace projlab::canonical
