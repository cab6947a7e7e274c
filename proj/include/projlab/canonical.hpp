#pragma once

// Surface data of the canonical system f_zz = b f_zb + p f, the derived
// invariants k and P, the scalar compatibility residuals and the surface
// classification.

#include <string>
#include <vector>

#include "projlab/expr.hpp"
#include "projlab/grid.hpp"

namespace projlab::canonical {

using expr::CoeffField;
using expr::Expr;

class InvalidSurfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownCatalogEntry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SurfaceData {
  std::string name;
  Rect domain;
  double h = 0.05;
  CoeffField b;
  CoeffField p;
  cplx base{0.0, 0.0};

  Grid grid() const { return {domain, h}; }
  NodeIndex base_node() const { return grid().nearest(base); }
};

/// Minimum |b| over the grid required of valid surface data.
inline constexpr double kMinAbsB = 1e-6;

/// Checks |b| >= 1e-6 on every node and that b, p and all their derivatives
/// up to order 3 evaluate without poles. Throws InvalidSurfaceError.
void validate(const SurfaceData& sd);

/// A function with its first Wirtinger derivatives.
struct Field1 {
  Expr f, f_z, f_zb;

  static Field1 of(const Expr& e);
  Field1 conj() const;
};

struct DerivedData {
  Field1 k;
  Field1 P;
};

/// k = (|b|^2 - (log b)_{z zb}) / 2,
/// P = p + b_zb/2 - conj(b)_zz / (2 conj(b)) + conj(b)_z^2 / (4 conj(b)^2).
DerivedData derive_kP(const SurfaceData& sd);

/// 2k + (log b)_{z zb} - |b|^2 sampled on the grid (identically zero for
/// data produced by derive_kP).
ScalarField k_identity_residual(const SurfaceData& sd, const DerivedData& dd);

struct ResidualEntry {
  std::string name;
  double sup = 0.0;
  NodeIndex argmax{};
  double argmax_x = 0.0;
  double argmax_y = 0.0;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;

  const ResidualEntry& at(const std::string& name) const;
  double sup(const std::string& name) const { return at(name).sup; }
  double max_sup() const;
};

ResidualEntry summarize(const std::string& name, const ScalarField& field);

/// comp1 = |conj(P)_z - k_zb - k b_zb / b|, comp2 = |Im(conj(b) P_z + 2 conj(b)_z P)|.
ResidualReport gauss_codazzi_residual(const SurfaceData& sd, const DerivedData& dd);

/// |conj(b) P_z + 2 conj(b)_z P| pointwise.
ScalarField minimality_residual(const SurfaceData& sd, const DerivedData& dd);

/// |P| pointwise.
ScalarField demoulin_residual(const SurfaceData& sd, const DerivedData& dd);

/// Integrability of the canonical system:
/// canon1 = |p_zb - b conj(b)_z - b_z conj(b)/2 + b_{zb zb}/2|,
/// canon2 = |Im(b_{zb zb zb} - b conj(b)_{z zb} - 2 b conj(p)_zb - 2 b_zb conj(b)_z - 4 b_zb conj(p))|.
ResidualReport canonical_integrability_residual(const SurfaceData& sd);

/// All residuals (comp1, comp2, projmin, demoulin, canon1, canon2).
ResidualReport full_report(const SurfaceData& sd, const DerivedData& dd);

/// Sup-norms of |P_zb|, |k_zb + k b_zb / b| and |conj(b) P_z + 2 conj(b)_z P|;
/// all three vanish exactly when the first-order spectral family is flat.
struct ZcrTriple {
  double P_zb = 0.0;
  double k_eq = 0.0;
  double projmin = 0.0;
  double max() const;
};

ZcrTriple zcr1st_residual(const SurfaceData& sd, const DerivedData& dd);

enum class SurfaceClass { Demoulin, ProjectiveMinimal, Generic };

std::string to_string(SurfaceClass c);
SurfaceClass parse_surface_class(const std::string& s);

struct Classification {
  SurfaceClass cls = SurfaceClass::Generic;
  bool coincidence = false;
  ZcrTriple zcr;
  double sup_P = 0.0;
  double sup_minimality = 0.0;
};

/// Throws InvalidSurfaceError when a Gauss-Codazzi sup-norm exceeds tol.
Classification classify(const SurfaceData& sd, double tol);

struct ProjectiveInvariants {
  ScalarField fubini_pick;       // J = 8|b|^2
  ScalarField metric_coefficient;  // 8|b|^2 in 8|b|^2 dz dzb
  std::vector<cplx> cubic_coefficient;  // -2b in C = -2(b dz^3 + conj(b) dzb^3)
};

ProjectiveInvariants projective_invariants(const SurfaceData& sd);

struct CatalogParams {
  double b0 = 1.0;  // const_demoulin, coincidence_minimal
  double p0 = 1.0;  // coincidence_minimal
  double c = 1.0;   // nonminimal_linear: p = c z + d
  double d = 1.0;
};

std::vector<std::string> catalog_names();

/// Built-in surfaces: const_demoulin, liouville_demoulin,
/// coincidence_minimal, nonminimal_linear. Throws UnknownCatalogEntry.
SurfaceData catalog(const std::string& name, const CatalogParams& params = {});

/// Samples the given expressions on every grid node; result[k][node].
std::vector<std::vector<cplx>> sample(const Grid& grid, std::span<const Expr> exprs);

}  // namespace projlab::canonical
