#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace projlab {

using cplx = std::complex<double>;

struct Rect {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};

struct NodeIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
};

/// Uniform rectangular grid with nodes x0 + i*h, y0 + j*h. The last node in
/// each direction is the largest one not beyond the rectangle edge.
class Grid {
 public:
  Grid() = default;
  Grid(Rect domain, double h);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  const Rect& domain() const { return domain_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }

  /// Row-major (j outer, i inner) linear index.
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i); }
  std::size_t index(NodeIndex n) const { return index(n.i, n.j); }
  NodeIndex node(std::size_t linear) const {
    return {static_cast<int>(linear % static_cast<std::size_t>(nx_)), static_cast<int>(linear / static_cast<std::size_t>(nx_))};
  }

  double x(int i) const { return domain_.x0 + i * h_; }
  double y(int j) const { return domain_.y0 + j * h_; }
  cplx point(int i, int j) const { return {x(i), y(j)}; }
  cplx point(NodeIndex n) const { return point(n.i, n.j); }

  bool interior(int i, int j) const { return i > 0 && j > 0 && i + 1 < nx_ && j + 1 < ny_; }

  /// Node nearest to p (rounded to the closest index, clamped to the grid).
  NodeIndex nearest(cplx p) const;

 private:
  Rect domain_{};
  double h_ = 0.05;
  int nx_ = 0;
  int ny_ = 0;
};

/// A real field sampled on the nodes of a grid.
struct ScalarField {
  Grid grid;
  std::vector<double> values;

  double sup() const;
  double inf() const;
  /// Node of the largest value (first one in row-major order on ties).
  NodeIndex argmax() const;
};

}  // namespace projlab
