#pragma once

#include <vector>

#include "btlab/common.hpp"

namespace btlab {

/// 1-D Dirichlet grid: interior nodes only, boundary nodes at a and b are
/// eliminated. Graded grids use a sinh stretch clustering toward a chosen
/// point; adjacent spacing ratio stays <= 1.2.
struct Grid1D {
  enum class Kind { uniform, graded };

  double a = 0.0;
  double b = 1.0;
  std::vector<double> nodes;
  Kind kind = Kind::uniform;
  double stretch = 0.0;

  int n() const { return static_cast<int>(nodes.size()); }

  /// Full coordinate list including the two boundary nodes.
  std::vector<double> with_boundary() const;

  /// Finite-volume cell sizes w_i = (x_{i+1} - x_{i-1})/2 (trapezoid weights
  /// of the interior nodes under Dirichlet conditions).
  std::vector<double> cell_weights() const;

  /// Quadrature weights for pairings: composite Simpson on uniform grids
  /// (the fiber-normalization invariant needs O(delta^4)), cell_weights()
  /// otherwise.
  std::vector<double> quad_weights() const;

  double max_spacing_ratio() const;
};

Grid1D make_uniform_grid(double a, double b, int n_interior);

/// Grid on [a, b] clustered around `center` (sinh map); min_spacing is the
/// target spacing at the center. Falls back to uniform when min_spacing is
/// not smaller than the uniform spacing.
Grid1D make_center_graded_grid(double a, double b, int n_interior, double min_spacing,
                               double center = 0.0);

/// Grid on [a, b] clustered at the left end a.
Grid1D make_left_graded_grid(double a, double b, int n_interior, double min_spacing);

struct Grid2D {
  Grid1D gx;  // x (or s) direction
  Grid1D gy;  // y (or t) direction, on (0, Y)

  std::size_t unknowns() const {
    return static_cast<std::size_t>(gx.n()) * static_cast<std::size_t>(gy.n());
  }
  /// x-major flattening: index = ix*ny + iy.
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * static_cast<std::size_t>(gy.n()) +
           static_cast<std::size_t>(iy);
  }
  std::vector<double> cell_weights() const;  // tensor product of the 1-D weights
};

}  // namespace btlab
