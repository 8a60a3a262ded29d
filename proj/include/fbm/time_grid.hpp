#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>

#include "fbm/errors.hpp"

namespace fbm {

// Symmetric uniform grid on [-T, T] with an odd number of nodes so that
// t = 0 is a grid point. Nodes are built as (j - mid) * spacing, which makes
// the symmetry t_j == -t_{N-1-j} exact in floating point.
struct TimeGrid {
  double half_width = 0.0;     // T
  Eigen::Index n_points = 0;   // N, odd and >= 3
  double spacing = 0.0;        // 2T / (N - 1)
  Eigen::VectorXd nodes;       // t_j
  Eigen::VectorXd weights;     // trapezoid: spacing/2 at the ends, spacing inside

  static TimeGrid symmetric(double half_width, Eigen::Index n_points) {
    if (!(half_width > 0.0)) {
      throw ValidationError("grid half-width must be positive, got " +
                            std::to_string(half_width));
    }
    if (n_points < 3 || n_points % 2 == 0) {
      throw ValidationError("grid needs an odd node count >= 3, got " +
                            std::to_string(n_points));
    }
    TimeGrid g;
    g.half_width = half_width;
    g.n_points = n_points;
    g.spacing = 2.0 * half_width / static_cast<double>(n_points - 1);
    const Eigen::Index mid = (n_points - 1) / 2;
    g.nodes.resize(n_points);
    for (Eigen::Index j = 0; j < n_points; ++j) {
      g.nodes[j] = static_cast<double>(j - mid) * g.spacing;
    }
    g.weights = Eigen::VectorXd::Constant(n_points, g.spacing);
    g.weights[0] = 0.5 * g.spacing;
    g.weights[n_points - 1] = 0.5 * g.spacing;
    return g;
  }

  [[nodiscard]] Eigen::Index zero_index() const noexcept {
    return (n_points - 1) / 2;
  }

  [[nodiscard]] Eigen::Index size() const noexcept { return n_points; }
};

using TimeGridPtr = std::shared_ptr<const TimeGrid>;

inline TimeGridPtr make_grid(double half_width, Eigen::Index n_points) {
  return std::make_shared<const TimeGrid>(
      TimeGrid::symmetric(half_width, n_points));
}

}  // namespace fbm
