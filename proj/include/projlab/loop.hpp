#pragma once

// Spectral-parameter families of the Wilczynski connection, the involutions
// tau1, tau2 and the order-six automorphism kappa, eigenspace projections,
// extended frames and the D-conjugation deformation.
//
// Both splittings act on U, V entry by entry. FirstOrder (tau1) multiplies
// every off-diagonal entry of U by 1/lambda and every off-diagonal entry of V
// by lambda. Conformal (tau2) scales only b conj(P) (0,3) and b (2,1) of U,
// and conj(b) P (0,3) and conj(b) (1,2) of V.

#include <cstdint>
#include <string>
#include <vector>

#include "projlab/frame.hpp"

namespace projlab::loop {

using frame::FrameField;
using frame::MovingFramePair;
using la::Mat4C;

enum class SplitType { FirstOrder, Conformal };

std::string to_string(SplitType s);
/// Accepts "first-order"/"FirstOrder" and "conformal"/"Conformal".
SplitType parse_split(const std::string& s);

class OffCircleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lie algebra automorphisms.
Mat4C tau1(const Mat4C& x);  // -J1 X^T J1
Mat4C tau2(const Mat4C& x);  // -J2 X^T J2
Mat4C sigma(const Mat4C& x);  // E X E^{-1}
Mat4C kappa(const Mat4C& x);  // tau1(sigma(X))
Mat4C tau(const Mat4C& x, SplitType s);

// Group versions; throw la::SingularMatrixError.
Mat4C tau1_group(const Mat4C& g);  // J1 (g^T)^{-1} J1
Mat4C tau2_group(const Mat4C& g);
Mat4C sigma_group(const Mat4C& g);
Mat4C kappa_group(const Mat4C& g);

struct Split {
  Mat4C k;  // +1 eigenspace of tau
  Mat4C p;  // -1 eigenspace of tau
};

Split split(const Mat4C& x, SplitType s);

/// Throws OffCircleError if ||lambda| - 1| > 1e-12.
void check_on_circle(cplx lambda);

/// (U^lambda, V^lambda) and their derivative matrices from the entry values
/// of U and V (explicit entry scaling).
MovingFramePair loop_UV(const frame::ConnectionEntries& e, cplx lambda, SplitType s);

/// Same family built as k_part + lambda^{-1} p_part (U) and
/// k_part + lambda p_part (V) from split().
MovingFramePair loop_UV_via_split(const MovingFramePair& m, cplx lambda, SplitType s);

/// Scales the (U, V) pairs of a lattice into (U^lambda, V^lambda).
frame::HalfLattice loop_lattice(const frame::HalfLattice& lat, cplx lambda, SplitType s);

/// The 12th roots of unity followed by n_random seeded unit-modulus samples.
std::vector<cplx> default_lambda_samples(int n_random = 3, std::uint64_t seed = 0x5eed2026);

struct FlatnessSample {
  cplx lambda;
  double sup = 0.0;
};

/// Sup over the grid of |U^l_zb - V^l_z - [U^l, V^l]|_F per sample.
std::vector<FlatnessSample> flatness_residual(const canonical::SurfaceData& sd, const canonical::DerivedData& dd,
                                              SplitType s, const std::vector<cplx>& lambdas);

using canonical::zcr1st_residual;

/// Extended frame F_lambda with F_lambda(z_*) = id. Throws NonFlatError if
/// the curvature at lambda exceeds 1e-6.
FrameField integrate_loop_frame(const canonical::SurfaceData& sd, const canonical::DerivedData& dd, SplitType s,
                                cplx lambda, frame::Sweep sweep = frame::Sweep::XThenY);

struct TwistResidual {
  double sigma = 0.0;  // sup |sigma(F_l) - F_{eps l}|_F
  double kappa = 0.0;  // sup |kappa(F_l) - F_{-eps l}|_F
  double tau1 = 0.0;   // sup |tau1(F_l) - F_{-l}|_F
};

TwistResidual twist_residual(const FrameField& f_l, const FrameField& f_el, const FrameField& f_ml,
                             const FrameField& f_mel);

/// Integrates the four FirstOrder frames at lambda, eps lambda, -lambda and
/// -eps lambda without the flatness precondition, then compares.
TwistResidual twist_residual(const canonical::SurfaceData& sd, const canonical::DerivedData& dd, cplx lambda);

/// omega = -eps, the primitive sixth root used to index kappa-eigenvalues.
cplx omega();

/// component[j] lies in the omega^j eigenspace of kappa; index 5 is j = -1.
using EigenProjection = std::array<Mat4C, 6>;

EigenProjection eig_project(const Mat4C& x);

/// Sup over the grid of |X - component_{-1}(X)|_F where X is the tau1
/// p-part of U.
double primitivity_residual(const canonical::SurfaceData& sd, const canonical::DerivedData& dd);

struct Deformation {
  FrameField frame;        // D F_lambda D^{-1}
  double leak = 0.0;       // max entry deviation from the Wilczynski shape
  double abs_b_change = 0.0;  // max ||b'| - |b||
};

/// Conjugates a FirstOrder extended frame by D(lambda) and checks that
/// D U^lambda D^{-1}, D V^lambda D^{-1} have Wilczynski shape with
/// b -> lambda^-3 b, P -> lambda^-2 P, k -> k. Throws ShapeMismatchError if
/// the leak exceeds 1e-9.
Deformation deformation_frame(const FrameField& ff_lambda, cplx lambda, const canonical::SurfaceData& sd,
                              const canonical::DerivedData& dd);

}  // namespace projlab::loop
