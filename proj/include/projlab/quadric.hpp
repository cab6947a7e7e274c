#pragma once

// The space of conformal 2-spheres: real symmetric 4x4 matrices with three
// eigenvalues of one sign and one of the other, acted on by g.Q = g Q g^T,
// with invariant metric <X, Y>_Q = Tr(Q^-1 X Q^-1 Y). Gauss maps
// g1 = F^ J1^ F^T and g2 = F^ J2^ F^T of a real frame F^ = L F L^-1.

#include <vector>

#include "projlab/frame.hpp"

namespace projlab::quadric {

using frame::FrameField;
using frame::RealFrameField;
using la::Mat4C;
using la::Mat4R;

enum class GaussMap { G1, G2 };

std::string to_string(GaussMap m);
/// Accepts "g1" and "g2".
GaussMap parse_gauss_map(const std::string& s);

/// Largest |Q_ij - Q_ji|.
double asymmetry(const Mat4R& q);

/// Q / |det Q|^(1/4), so |det| = 1. Quadric grids are stored un-normalized.
Mat4R normalize(const Mat4R& q);

/// True when the eigenvalue signs are (3,1) or (1,3).
bool lorentzian_sign_pattern(const Mat4R& q);

struct QuadricGridCheck {
  double max_asymmetry = 0.0;
  double max_normalized_det_error = 0.0;  // max ||det normalize(Q)| - 1|
  double max_det_drift = 0.0;             // max |det Q - det Q(z_*)|
  bool sign_pattern_ok = true;
};

QuadricGridCheck check_quadric_grid(const std::vector<Mat4R>& qs, const Mat4R& reference);

std::vector<Mat4R> g1(const RealFrameField& rf);
std::vector<Mat4R> g2(const RealFrameField& rf);
std::vector<Mat4R> gauss_map(GaussMap which, const RealFrameField& rf);

/// Second realization -Ad(L)(F J2 F^T) from the complex frame; also reports
/// the largest imaginary part that was dropped.
std::vector<Mat4R> g2_from_complex(const FrameField& ff, double* max_imag = nullptr);

/// Tr(Q^-1 X Q^-1 Y); throws la::SingularMatrixError.
cplx metric_at(const Mat4C& q, const Mat4C& x, const Mat4C& y);
cplx metric_at(const Mat4R& q, const Mat4C& x, const Mat4C& y);

/// d/dz and d/dzb of the Gauss map from U, V and the frame:
/// dz g1 = L F (U J1 + J1 U^T) F^T L^T, dz g2 = -L F (U J2 + J2 U^T) F^T L^T.
struct GaussDerivative {
  Mat4C dz, dzb;
};

GaussDerivative closed_form_derivative(GaussMap which, const Mat4C& F, const frame::MovingFramePair& uv);

struct ConformalityRow {
  NodeIndex node;
  double x = 0.0, y = 0.0;
  cplx fd_zz, closed_form_zz;    // <dz g, dz g>_g from finite differences / prediction
  cplx fd_zzb, closed_form_zzb;  // <dz g, dzb g>_g
  cplx exact_zz, exact_zzb;      // metric of the closed-form derivative matrices
  double derivative_error = 0.0;  // max entry |FD matrix - closed-form matrix|
};

/// Interior nodes only. Predictions: g1 -> (16P, 8(k + conj k) + 4|b|^2),
/// g2 -> (0, 4|b|^2).
std::vector<ConformalityRow> conformality_report(GaussMap which, const canonical::SurfaceData& sd,
                                                 const canonical::DerivedData& dd, const FrameField& ff);

struct PrimitiveLift {
  std::vector<Mat4C> g;   // F (E J1) F^T
  std::vector<Mat4C> pi;  // F J1 F^T
  double pi_vs_g1 = 0.0;  // max entry |Ad(L)(pi) - g1|
};

PrimitiveLift primitive_lift(const FrameField& ff);

/// diag(k1, k2, 1/k2, 1/k1).
Mat4C stabilizer_element(cplx k1, cplx k2);

/// |kappa(k) - k|_F for the group automorphism kappa.
double kappa_fixedness(const Mat4C& k);

}  // namespace projlab::quadric
