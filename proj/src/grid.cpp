#include "projlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace projlab {

Grid::Grid(Rect domain, double h) : domain_(domain), h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("grid: step must be positive");
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0)) throw std::invalid_argument("grid: degenerate rectangle");
  nx_ = static_cast<int>(std::floor((domain.x1 - domain.x0) / h + 1e-9)) + 1;
  ny_ = static_cast<int>(std::floor((domain.y1 - domain.y0) / h + 1e-9)) + 1;
}

NodeIndex Grid::nearest(cplx p) const {
  const auto clamp = [](long v, int n) { return static_cast<int>(std::clamp<long>(v, 0, n - 1)); };
  return {clamp(std::lround((p.real() - domain_.x0) / h_), nx_), clamp(std::lround((p.imag() - domain_.y0) / h_), ny_)};
}

double ScalarField::sup() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }

double ScalarField::inf() const { return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end()); }

NodeIndex ScalarField::argmax() const {
  if (values.empty()) return {};
  const auto it = std::max_element(values.begin(), values.end());
  return grid.node(static_cast<std::size_t>(it - values.begin()));
}

}  // namespace projlab
