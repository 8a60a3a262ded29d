#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "fbm/cholesky.hpp"
#include "fbm/covariance.hpp"
#include "fbm/embedding.hpp"
#include "fbm/errors.hpp"
#include "fbm/moment_accumulator.hpp"
#include "fbm/rng.hpp"
#include "helpers.hpp"

using namespace fbm;

namespace {

EmbeddingPlanPtr make_plan(Eigen::Index n_inc, double h, double spacing) {
  return std::make_shared<const EmbeddingPlan>(
      build_embedding(n_inc, Hurst(h), spacing));
}

}  // namespace

TEST_CASE("embedding of a single Brownian increment is the identity") {
  const EmbeddingPlan plan = build_embedding(1, Hurst(0.5), 1.0);
  CHECK(plan.circulant_size == 2);
  CHECK(plan.eigenvalues.size() == 2);
  CHECK(plan.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(plan.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("white noise embeds as an identity circulant") {
  const EmbeddingPlan plan = build_embedding(4, Hurst(0.5), 1.0);
  CHECK(plan.circulant_size == 8);
  for (Eigen::Index k = 0; k < plan.circulant_size; ++k) {
    CHECK(plan.eigenvalues[k] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("embedding eigenvalues stay nonnegative across H and size") {
  for (const Eigen::Index n : {Eigen::Index(1) << 8, Eigen::Index(1) << 12,
                               Eigen::Index(1) << 16}) {
    for (int i = 1; i <= 10; ++i) {
      const double h = 0.1 * i;
      const EmbeddingPlan plan = build_embedding(n, Hurst(h), 0.5);
      CHECK(plan.eigenvalues.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("embedding rejects bad arguments") {
  CHECK_THROWS_AS(build_embedding(0, Hurst(0.5), 1.0), ValidationError);
  CHECK_THROWS_AS(build_embedding(4, Hurst(0.5), -1.0), ValidationError);
}

TEST_CASE("same stream state gives bit-identical paths") {
  const TimeGridPtr grid = make_grid(2.0, 17);
  const auto plan = make_plan(16, 0.75, grid->spacing);
  CirculantSampler sampler(plan);
  RngStream a = RngStream::for_trajectory(99, 12);
  RngStream b = RngStream::for_trajectory(99, 12);
  const FbmPath pa = sampler.sample_two_sided(grid, a);
  const FbmPath pb = sampler.sample_two_sided(grid, b);
  CHECK(pa.values == pb.values);
  CHECK(pa.values[grid->zero_index()] == 0.0);

  RngStream c = RngStream::for_trajectory(99, 13);
  const FbmPath pc = sampler.sample_two_sided(grid, c);
  CHECK(pa.values != pc.values);
}

TEST_CASE("sampled fGn reproduces the autocovariance sequence") {
  const Eigen::Index n = 8;
  const auto plan = make_plan(n, 0.75, 1.0);
  CirculantSampler sampler(plan);
  const long samples = 100000;

  std::vector<MomentAccumulator> lag_products(n);
  Eigen::VectorXd x(n);
  for (long i = 0; i < samples; ++i) {
    RngStream rng = RngStream::for_trajectory(424242, i);
    sampler.sample_increments(rng, x);
    for (Eigen::Index k = 0; k < n; ++k) lag_products[k].add(x[0] * x[k]);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double expected = fgn_autocovariance(k, Hurst(0.75), 1.0);
    const double got = lag_products[k].mean();
    const double se = lag_products[k].se_of_mean();
    CHECK(std::abs(got - expected) <= 3.0 * se);
  }
}

TEST_CASE("Brownian branches are uncorrelated across the origin") {
  const TimeGridPtr grid = make_grid(1.0, 3);
  const auto plan = make_plan(2, 0.5, grid->spacing);
  CirculantSampler sampler(plan);
  MomentAccumulator cross;
  for (long i = 0; i < 100000; ++i) {
    RngStream rng = RngStream::for_trajectory(5150, i);
    const FbmPath p = sampler.sample_two_sided(grid, rng);
    cross.add(p.values[0] * p.values[2]);
  }
  CHECK(std::abs(cross.mean()) <= 3.0 * cross.se_of_mean());
}

TEST_CASE("two-sided sample covariance matches R and the Cholesky oracle") {
  const TimeGridPtr grid = make_grid(2.0, 17);
  const Hurst h(0.75);
  const Eigen::MatrixXd expected = covariance_matrix(*grid, h);
  const long samples = 100000;

  const auto plan = make_plan(grid->n_points - 1, h.value(), grid->spacing);
  CirculantSampler circulant(plan);
  CholeskySampler cholesky(grid, h);

  testutil::SampleCovariance cov_circ(grid->n_points);
  testutil::SampleCovariance cov_chol(grid->n_points);
  for (long i = 0; i < samples; ++i) {
    RngStream rng_c = RngStream::for_trajectory(31337, i);
    cov_circ.add(circulant.sample_two_sided(grid, rng_c).values);
    RngStream rng_o = RngStream::for_trajectory(271828, i);
    cov_chol.add(cholesky.sample(rng_o).values);
  }
  const Eigen::MatrixXd est_c = cov_circ.estimate();
  const Eigen::MatrixXd est_o = cov_chol.estimate();

  const Eigen::Index mid = grid->zero_index();
  double worst_c = 0.0, worst_o = 0.0, worst_diff = 0.0;
  for (Eigen::Index i = 0; i < grid->n_points; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (i == mid || j == mid) {
        CHECK(est_c(i, j) == 0.0);
        CHECK(est_o(i, j) == 0.0);
        continue;
      }
      const double se = testutil::cov_entry_se(
          expected(i, i), expected(j, j), expected(i, j), samples);
      worst_c = std::max(worst_c, std::abs(est_c(i, j) - expected(i, j)) / se);
      worst_o = std::max(worst_o, std::abs(est_o(i, j) - expected(i, j)) / se);
      worst_diff = std::max(
          worst_diff, std::abs(est_c(i, j) - est_o(i, j)) /
                          (se * std::numbers::sqrt2));
    }
  }
  CHECK(worst_c <= 3.0);
  CHECK(worst_o <= 3.0);
  CHECK(worst_diff <= 5.0);
}

TEST_CASE("degenerate H = 1 path is an exact line through the origin") {
  const TimeGridPtr grid = make_grid(1.0, 3);
  RngStream rng = RngStream::for_trajectory(7, 0);
  const FbmPath p = sample_path_cholesky(grid, Hurst(1.0), rng);
  CHECK(p.values[1] == 0.0);
  // Rank-1 covariance: the two branch values are exact negatives.
  CHECK(p.values[0] == doctest::Approx(-p.values[2]).epsilon(1e-14));
  CHECK(p.values[2] != 0.0);

  const TimeGridPtr wide = make_grid(3.0, 9);
  RngStream rng2 = RngStream::for_trajectory(7, 1);
  const FbmPath q = sample_path_cholesky(wide, Hurst(1.0), rng2);
  const double slope = q.values[8] / wide->nodes[8];
  for (Eigen::Index j = 0; j < 9; ++j) {
    CHECK(q.values[j] ==
          doctest::Approx(wide->nodes[j] * slope).epsilon(1e-10));
  }
}

TEST_CASE("Cholesky sampler is deterministic and guards the grid size") {
  const TimeGridPtr grid = make_grid(1.0, 9);
  RngStream a = RngStream::for_trajectory(1, 2);
  RngStream b = RngStream::for_trajectory(1, 2);
  CHECK(sample_path_cholesky(grid, Hurst(0.6), a).values ==
        sample_path_cholesky(grid, Hurst(0.6), b).values);

  const TimeGridPtr huge = make_grid(1.0, 2049);
  RngStream c = RngStream::for_trajectory(1, 3);
  CHECK_THROWS_AS(sample_path_cholesky(huge, Hurst(0.6), c), GridTooLarge);
}

TEST_CASE("Cholesky Brownian covariance matches the min-based form") {
  const TimeGridPtr grid = make_grid(2.0, 9);
  const Hurst h(0.5);
  CholeskySampler sampler(grid, h);
  testutil::SampleCovariance cov(grid->n_points);
  const long samples = 100000;
  for (long i = 0; i < samples; ++i) {
    RngStream rng = RngStream::for_trajectory(161803, i);
    cov.add(sampler.sample(rng).values);
  }
  const Eigen::MatrixXd est = cov.estimate();
  const Eigen::Index mid = grid->zero_index();
  for (Eigen::Index i = 0; i < grid->n_points; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (i == mid || j == mid) continue;
      const double ti = grid->nodes[i], tj = grid->nodes[j];
      const double expected =
          ti * tj > 0.0 ? std::min(std::abs(ti), std::abs(tj)) : 0.0;
      const double se = testutil::cov_entry_se(
          std::abs(ti), std::abs(tj), expected, samples);
      CHECK(std::abs(est(i, j) - expected) <= 3.0 * se);
    }
  }
}

TEST_CASE("variance growth, increment stationarity, reversal symmetry") {
  const TimeGridPtr grid = make_grid(2.0, 65);
  const Hurst h(0.7);
  const auto plan = make_plan(grid->n_points - 1, h.value(), grid->spacing);
  CirculantSampler sampler(plan);
  const long samples = 100000;

  const Eigen::Index n = grid->n_points;
  std::vector<MomentAccumulator> sq(n);
  const std::vector<Eigen::Index> incr_at{5, 32, 50};
  std::vector<MomentAccumulator> incr(incr_at.size());
  for (long i = 0; i < samples; ++i) {
    RngStream rng = RngStream::for_trajectory(8675309, i);
    const FbmPath p = sampler.sample_two_sided(grid, rng);
    for (Eigen::Index j = 0; j < n; ++j) sq[j].add(p.values[j] * p.values[j]);
    for (std::size_t k = 0; k < incr_at.size(); ++k) {
      const double d = p.values[incr_at[k] + 1] - p.values[incr_at[k]];
      incr[k].add(d * d);
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == grid->zero_index()) continue;
    const double expected = std::pow(std::abs(grid->nodes[j]), h.two_h());
    CHECK(std::abs(sq[j].mean() - expected) <= 4.0 * sq[j].se_of_mean());
  }
  const double step_var = std::pow(grid->spacing, h.two_h());
  for (std::size_t k = 0; k < incr_at.size(); ++k) {
    CHECK(std::abs(incr[k].mean() - step_var) <= 4.0 * incr[k].se_of_mean());
  }
  // Reversal symmetry in law: second moments at t and -t agree.
  for (Eigen::Index j = 0; j < grid->zero_index(); ++j) {
    const Eigen::Index r = n - 1 - j;
    const double se =
        std::hypot(sq[j].se_of_mean(), sq[r].se_of_mean());
    CHECK(std::abs(sq[j].mean() - sq[r].mean()) <= 4.0 * se);
  }
}

TEST_CASE("two-sided sampling validates plan compatibility") {
  const TimeGridPtr grid = make_grid(2.0, 17);
  const auto small_plan = make_plan(8, 0.75, grid->spacing);
  RngStream rng = RngStream::for_trajectory(3, 0);
  CHECK_THROWS_AS(sample_two_sided_path(small_plan, grid, rng),
                  ValidationError);

  const auto wrong_spacing = make_plan(16, 0.75, grid->spacing * 2.0);
  CHECK_THROWS_AS(sample_two_sided_path(wrong_spacing, grid, rng),
                  ValidationError);
}
