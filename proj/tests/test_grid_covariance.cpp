#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fbm/covariance.hpp"
#include "fbm/errors.hpp"
#include "fbm/hurst.hpp"
#include "fbm/time_grid.hpp"

using namespace fbm;

TEST_CASE("hurst range is enforced") {
  CHECK_NOTHROW(Hurst(1e-6));
  CHECK_NOTHROW(Hurst(1.0));
  CHECK_THROWS_AS(Hurst(0.0), ValidationError);
  CHECK_THROWS_AS(Hurst(-0.3), ValidationError);
  CHECK_THROWS_AS(Hurst(1.5), ValidationError);
  CHECK_THROWS_AS(Hurst(std::nan("")), ValidationError);
}

TEST_CASE("time grid nodes are exactly symmetric with a zero node") {
  const TimeGrid grid = TimeGrid::symmetric(7.3, 129);
  CHECK(grid.spacing == doctest::Approx(2.0 * 7.3 / 128.0).epsilon(1e-15));
  CHECK(grid.nodes[grid.zero_index()] == 0.0);
  for (Eigen::Index j = 0; j < grid.n_points; ++j) {
    CHECK(grid.nodes[j] == -grid.nodes[grid.n_points - 1 - j]);
  }
  const double total = grid.weights.sum();
  CHECK(std::abs(total - 2.0 * 7.3) <= 1e-12 * 2.0 * 7.3);
}

TEST_CASE("time grid rejects invalid shapes") {
  CHECK_THROWS_AS(TimeGrid::symmetric(1.0, 128), ValidationError);  // even
  CHECK_THROWS_AS(TimeGrid::symmetric(1.0, 1), ValidationError);
  CHECK_THROWS_AS(TimeGrid::symmetric(0.0, 9), ValidationError);
  CHECK_THROWS_AS(TimeGrid::symmetric(-2.0, 9), ValidationError);
}

TEST_CASE("covariance worked examples") {
  // R(t, t) = |t|^{2H}
  CHECK(fbm_covariance(2.0, 2.0, Hurst(0.75)) ==
        doctest::Approx(2.8284271247461903).epsilon(1e-14));
  // Brownian branches are uncorrelated.
  CHECK(fbm_covariance(1.0, -1.0, Hurst(0.5)) == 0.0);
  CHECK(fbm_covariance(2.0, 1.0, Hurst(0.7)) ==
        doctest::Approx(1.3195079107728942).epsilon(1e-14));
}

TEST_CASE("covariance is symmetric and consistent with increment variance") {
  // E|W_t - W_s|^2 = |t-s|^{2H} rewritten through R is the defining
  // property; check it on random pairs.
  std::mt19937 gen(20240517);
  std::uniform_real_distribution<double> pick(-5.0, 5.0);
  std::uniform_real_distribution<double> hpick(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double t = pick(gen), s = pick(gen);
    const Hurst h(hpick(gen));
    CHECK(fbm_covariance(t, s, h) == fbm_covariance(s, t, h));
    const double incr_var = fbm_covariance(t, t, h) -
                            2.0 * fbm_covariance(t, s, h) +
                            fbm_covariance(s, s, h);
    CHECK(incr_var ==
          doctest::Approx(std::pow(std::abs(t - s), h.two_h()))
              .epsilon(1e-9));
  }
}

TEST_CASE("fgn autocovariance worked examples") {
  CHECK(fgn_autocovariance(0, Hurst(0.6), 1.0) == doctest::Approx(1.0));
  CHECK(fgn_autocovariance(3, Hurst(0.5), 1.0) == doctest::Approx(0.0));
  CHECK(fgn_autocovariance(1, Hurst(0.7), 1.0) ==
        doctest::Approx(0.3195079107728942).epsilon(1e-14));
  CHECK_THROWS_AS(fgn_autocovariance(1, Hurst(0.7), 0.0), ValidationError);
  CHECK_THROWS_AS(fgn_autocovariance(-1, Hurst(0.7), 1.0), ValidationError);
}

TEST_CASE("fgn autocovariance equals the increment covariance from R") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> hpick(0.05, 1.0);
  std::uniform_real_distribution<double> dpick(0.01, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Hurst h(hpick(gen));
    const double d = dpick(gen);
    for (Eigen::Index k = 0; k < 6; ++k) {
      const double t0 = static_cast<double>(k) * d;
      const double t1 = t0 + d;
      const double brute = fbm_covariance(t1, d, h) -
                           fbm_covariance(t1, 0.0, h) -
                           fbm_covariance(t0, d, h) +
                           fbm_covariance(t0, 0.0, h);
      const double gamma = fgn_autocovariance(k, h, d);
      CHECK(gamma == doctest::Approx(brute).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("covariance matrix has a zero row at t = 0") {
  const TimeGrid grid = TimeGrid::symmetric(2.0, 9);
  const Eigen::MatrixXd cov = covariance_matrix(grid, Hurst(0.7));
  CHECK(cov.row(grid.zero_index()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
