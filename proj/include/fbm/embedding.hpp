#pragma once

#include <Eigen/Core>
#include <memory>
#include <unsupported/Eigen/FFT>

#include "fbm/hurst.hpp"
#include "fbm/path.hpp"
#include "fbm/rng.hpp"
#include "fbm/time_grid.hpp"

namespace fbm {

// Relative tolerance below which a negative circulant eigenvalue is treated
// as floating-point noise and clamped to zero. fGn embeddings are
// nonnegative definite, so anything worse is an internal fault.
inline constexpr double kEigenvalueTolerance = 1e-9;

// Precomputed circulant embedding of the fGn autocovariance. Built once and
// shared read-only across sampling workers.
struct EmbeddingPlan {
  Hurst hurst;
  Eigen::Index n_increments = 0;
  Eigen::Index circulant_size = 0;  // power of two >= 2 * n_increments
  double spacing = 0.0;
  Eigen::VectorXd eigenvalues;      // clamped to >= 0
  Eigen::VectorXd spectral_scale;   // sqrt(eigenvalues * circulant_size)
};

using EmbeddingPlanPtr = std::shared_ptr<const EmbeddingPlan>;

// First circulant row [gamma(0), ..., gamma(M/2), gamma(M/2-1), ..., gamma(1)]
// with M the next power of two >= 2 * n_increments; the eigenvalues are the
// real parts of its FFT. Throws EigenvalueNegative if any eigenvalue falls
// below -kEigenvalueTolerance * max.
EmbeddingPlan build_embedding(Eigen::Index n_increments, Hurst hurst,
                              double spacing);

// Draws exact fGn / fBm samples from a shared plan. Each instance owns its
// FFT workspace, so use one sampler per worker thread.
class CirculantSampler {
public:
  explicit CirculantSampler(EmbeddingPlanPtr plan);

  // Fills `out` with n consecutive fGn increments, exact in law.
  void sample_increments(RngStream& rng, Eigen::Ref<Eigen::VectorXd> out);

  // Two-sided path on a symmetric grid: a one-sided path on [0, 2T] shifted
  // so that the t = 0 node is pinned at zero. Exact in law by increment
  // stationarity.
  FbmPath sample_two_sided(const TimeGridPtr& grid, RngStream& rng);

  [[nodiscard]] const EmbeddingPlan& plan() const noexcept { return *plan_; }

private:
  EmbeddingPlanPtr plan_;
  Eigen::FFT<double> fft_;
  Eigen::VectorXd normals_;
  Eigen::VectorXcd spectrum_;
  Eigen::VectorXcd field_;
};

// One-shot convenience wrapper over CirculantSampler.
FbmPath sample_two_sided_path(const EmbeddingPlanPtr& plan,
                              const TimeGridPtr& grid, RngStream& rng);

// Degenerate H = 1 path: W_t = t * g for a single standard normal g.
FbmPath sample_path_degenerate(const TimeGridPtr& grid, RngStream& rng);

}  // namespace fbm
