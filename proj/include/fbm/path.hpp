#pragma once

#include <Eigen/Core>

#include "fbm/hurst.hpp"
#include "fbm/time_grid.hpp"

namespace fbm {

// A sampled two-sided fBm trajectory on a shared grid. The value at the
// t = 0 node is exactly zero by construction.
struct FbmPath {
  TimeGridPtr grid;
  Hurst hurst;
  Eigen::VectorXd values;
};

}  // namespace fbm
