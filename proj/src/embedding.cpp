#include "fbm/embedding.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "fbm/covariance.hpp"
#include "fbm/errors.hpp"

namespace fbm {

namespace {

Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index m = 1;
  while (m < n) m *= 2;
  return m;
}

}  // namespace

EmbeddingPlan build_embedding(Eigen::Index n_increments, Hurst hurst,
                              double spacing) {
  if (n_increments < 1) {
    throw ValidationError("embedding needs at least one increment");
  }
  if (!(spacing > 0.0)) {
    throw ValidationError("embedding spacing must be positive");
  }
  const Eigen::Index size = next_power_of_two(2 * n_increments);
  const Eigen::Index half = size / 2;

  Eigen::VectorXcd row(size);
  for (Eigen::Index j = 0; j <= half; ++j) {
    row[j] = fgn_autocovariance(j, hurst, spacing);
  }
  for (Eigen::Index j = half + 1; j < size; ++j) {
    row[j] = row[size - j];
  }

  Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum(size);
  fft.fwd(spectrum, row);

  EmbeddingPlan plan{hurst, n_increments, size, spacing,
                     Eigen::VectorXd(size), Eigen::VectorXd(size)};
  plan.eigenvalues = spectrum.real();
  const double max_eig = plan.eigenvalues.maxCoeff();
  const double floor = -kEigenvalueTolerance * max_eig;
  const double min_eig = plan.eigenvalues.minCoeff();
  if (min_eig < floor) {
    throw EigenvalueNegative(
        "circulant embedding eigenvalue " + std::to_string(min_eig) +
        " below tolerance " + std::to_string(floor) +
        " (H=" + std::to_string(hurst.value()) + ")");
  }
  plan.eigenvalues = plan.eigenvalues.cwiseMax(0.0);
  plan.spectral_scale =
      (plan.eigenvalues * static_cast<double>(size)).cwiseSqrt();
  return plan;
}

CirculantSampler::CirculantSampler(EmbeddingPlanPtr plan)
    : plan_(std::move(plan)),
      normals_(plan_->circulant_size),
      spectrum_(plan_->circulant_size),
      field_(plan_->circulant_size) {}

void CirculantSampler::sample_increments(RngStream& rng,
                                         Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index size = plan_->circulant_size;
  const Eigen::Index half = size / 2;
  const Eigen::Index n = out.size();
  if (n > half) {
    throw ValidationError("requested more increments than the plan embeds");
  }

  for (Eigen::Index k = 0; k < size; ++k) normals_[k] = rng.normal();

  const Eigen::VectorXd& scale = plan_->spectral_scale;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  spectrum_[0] = scale[0] * normals_[0];
  spectrum_[half] = scale[half] * normals_[half];
  for (Eigen::Index k = 1; k < half; ++k) {
    const std::complex<double> z(normals_[k], normals_[size - k]);
    spectrum_[k] = scale[k] * inv_sqrt2 * z;
    spectrum_[size - k] = std::conj(spectrum_[k]);
  }

  fft_.inv(field_, spectrum_);
  out = field_.head(n).real();
}

FbmPath CirculantSampler::sample_two_sided(const TimeGridPtr& grid,
                                           RngStream& rng) {
  const Eigen::Index n_inc = grid->n_points - 1;
  if (n_inc > plan_->n_increments) {
    throw ValidationError("plan built for fewer increments than the grid");
  }
  if (std::abs(grid->spacing - plan_->spacing) >
      1e-12 * std::abs(plan_->spacing)) {
    throw ValidationError("plan spacing does not match the grid spacing");
  }

  Eigen::VectorXd increments(n_inc);
  sample_increments(rng, increments);

  FbmPath path{grid, plan_->hurst, Eigen::VectorXd(grid->n_points)};
  path.values[0] = 0.0;
  for (Eigen::Index j = 1; j < grid->n_points; ++j) {
    path.values[j] = path.values[j - 1] + increments[j - 1];
  }
  const double at_origin = path.values[grid->zero_index()];
  path.values.array() -= at_origin;
  path.values[grid->zero_index()] = 0.0;
  return path;
}

FbmPath sample_two_sided_path(const EmbeddingPlanPtr& plan,
                              const TimeGridPtr& grid, RngStream& rng) {
  CirculantSampler sampler(plan);
  return sampler.sample_two_sided(grid, rng);
}

FbmPath sample_path_degenerate(const TimeGridPtr& grid, RngStream& rng) {
  const double g = rng.normal();
  FbmPath path{grid, Hurst(1.0), grid->nodes * g};
  path.values[grid->zero_index()] = 0.0;
  return path;
}

}  // namespace fbm
