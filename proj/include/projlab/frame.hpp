#pragma once

// Wilczynski connection matrices, RK4 integration of the moving frame over
// the grid, realification and the surface lift.
//
// Conventions: F_z = F U, F_zb = F V (right logarithmic derivative), so the
// curvature is R = U_zb - V_z - [U, V]. With beta = conj(b)_z / (2 conj(b))
// and gamma = b_zb / (2b):
//
//       | beta  P     k     b conj(P) |        | gamma    conj(k)  conj(P)  conj(b) P |
//   U = | 1     -beta 0     k         |    V = | 0        gamma    conj(b)  conj(P)   |
//       | 0     b     beta  P         |        | 1        0        -gamma   conj(k)   |
//       | 0     0     1     -beta     |        | 0        1        0        -gamma    |

#include <functional>
#include <optional>
#include <vector>

#include "projlab/canonical.hpp"
#include "projlab/linalg4.hpp"

namespace projlab::frame {

using canonical::DerivedData;
using canonical::SurfaceData;
using la::Mat4C;
using la::Mat4R;

class NonFlatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Values of the non-constant entries of U and V at one point.
/// u = (beta, P, k, b conj(P), b) and v is its entrywise conjugate
/// (gamma, conj(P), conj(k), conj(b) P, conj(b)).
struct ConnectionEntries {
  std::array<cplx, 5> u{};
  std::array<cplx, 5> v{};
  std::array<cplx, 5> u_zb{};  // d/dzb of u
  std::array<cplx, 5> v_z{};   // d/dz of v
};

/// U from its entry values (the constant 1s are filled in); pass derivative
/// values with ones = false to get U_zb.
Mat4C wilczynski_U(const std::array<cplx, 5>& u, bool ones = true);
Mat4C wilczynski_V(const std::array<cplx, 5>& v, bool ones = true);

struct MovingFramePair {
  Mat4C U, V;
  Mat4C U_zb, V_z;
};

MovingFramePair make_pair(const ConnectionEntries& e);

/// R = U_zb - V_z - [U, V].
Mat4C curvature(const MovingFramePair& m);

/// The entry expressions of U and V and their derivatives compiled into a
/// single evaluation program.
class ConnectionField {
 public:
  ConnectionField(const SurfaceData& sd, const DerivedData& dd);

  ConnectionEntries entries(cplx z) const;
  MovingFramePair at(cplx z) const { return make_pair(entries(z)); }

 private:
  expr::Program program_;
};

MovingFramePair assemble_UV(const SurfaceData& sd, const DerivedData& dd, NodeIndex node);

/// Sup over the grid of the Frobenius norm of R.
double flatness_sup(const SurfaceData& sd, const DerivedData& dd);

/// Generator values on the half-step lattice: point (a, b) is
/// (x0 + a h/2, y0 + b h/2). Only points with a or b even are filled, which
/// are the only ones RK4 along grid lines visits.
struct HalfLattice {
  Grid grid;
  int na = 0, nb = 0;
  std::vector<Mat4C> U, V;

  std::size_t index(int a, int b) const { return static_cast<std::size_t>(b) * static_cast<std::size_t>(na) + static_cast<std::size_t>(a); }
  static bool used(int a, int b) { return a % 2 == 0 || b % 2 == 0; }
};

HalfLattice sample_half_lattice(const Grid& grid, const ConnectionField& conn);

/// Applies f to every (U, V) pair of the lattice.
HalfLattice map_lattice(const HalfLattice& lat, const std::function<std::pair<Mat4C, Mat4C>(const Mat4C&, const Mat4C&)>& f);

enum class Sweep { XThenY, YThenX };

struct FrameField {
  Grid grid;
  NodeIndex base{};
  Sweep sweep = Sweep::XThenY;
  std::vector<Mat4C> F;

  const Mat4C& at(int i, int j) const { return F[grid.index(i, j)]; }
  const Mat4C& at(NodeIndex n) const { return F[grid.index(n)]; }
};

/// Classical RK4 for F_x = F (U + V), F_y = F i (U - V) along grid lines
/// from the base node (F = id there). No precondition checks.
FrameField integrate_lattice(const HalfLattice& lat, NodeIndex base, Sweep sweep);

/// Throws NonFlatError if a Gauss-Codazzi residual exceeds 1e-6.
FrameField integrate_frame(const SurfaceData& sd, const DerivedData& dd, Sweep sweep = Sweep::XThenY);

/// Max over nodes of |F_xy - F_yx|_F. Integrates without the flatness check,
/// so it can measure the path dependence of a curved connection.
double path_independence_residual(const SurfaceData& sd, const DerivedData& dd);
double path_independence_residual(const HalfLattice& lat, NodeIndex base);

/// Max over nodes of |det F - 1| and of |conj(F) - Cswap F Cswap|_F.
double det_drift(const FrameField& ff);
double reality_residual(const FrameField& ff);

struct RealFrameField {
  Grid grid;
  NodeIndex base{};
  std::vector<Mat4R> F;
  double max_imag = 0.0;  // largest |Im| entry of L F L^{-1} before truncation

  const Mat4R& at(int i, int j) const { return F[grid.index(i, j)]; }
};

/// L F L^{-1} at every node.
RealFrameField realify(const FrameField& ff);

inline constexpr double kChartThreshold = 1e-6;

struct SurfaceLift {
  Grid grid;
  std::vector<la::Vec4R> lift;                        // first column of the real frame
  std::vector<std::optional<la::Vec4R>> point;        // (f1, f2, f3) / f0 in slots 0..2
  bool chart_valid(std::size_t n) const { return point[n].has_value(); }
};

SurfaceLift surface_lift(const RealFrameField& rf);

/// Largest entry modulus of f_z - beta f - f_1 over interior nodes, with f_z
/// from central differences of the first frame column (f_1 is the second).
double column_relation_residual(const SurfaceData& sd, const DerivedData& dd, const FrameField& ff);

}  // namespace projlab::frame
