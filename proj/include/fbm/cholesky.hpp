#pragma once

#include <Eigen/Core>

#include "fbm/hurst.hpp"
#include "fbm/path.hpp"
#include "fbm/rng.hpp"
#include "fbm/time_grid.hpp"

namespace fbm {

// Dense-covariance oracle sampler: exact multivariate normal over the
// nonzero grid nodes, with the t = 0 node fixed at zero. O(N^3) setup,
// guarded at N <= 2048. Independent of the circulant route by design.
class CholeskySampler {
public:
  CholeskySampler(TimeGridPtr grid, Hurst hurst);

  FbmPath sample(RngStream& rng) const;

  [[nodiscard]] const Eigen::MatrixXd& factor() const noexcept {
    return factor_;
  }

private:
  TimeGridPtr grid_;
  Hurst hurst_;
  Eigen::MatrixXd factor_;  // lower triangular over nonzero nodes
};

FbmPath sample_path_cholesky(const TimeGridPtr& grid, Hurst hurst,
                             RngStream& rng);

}  // namespace fbm
