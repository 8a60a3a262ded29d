#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fbm/functionals.hpp"
#include "fbm/hurst.hpp"
#include "fbm/moment_accumulator.hpp"

namespace fbm {

struct CampaignChecks {
  bool corollary1 = false;
  bool theorem2 = false;
  bool corollary2_k4 = false;
  bool lemma2 = false;
  bool gcurvature = false;

  [[nodiscard]] bool any() const noexcept {
    return corollary1 || theorem2 || corollary2_k4 || lemma2 || gcurvature;
  }
};

// Full description of a simulation campaign. Trajectory streams derive from
// (seed, index), so results are reproducible and independent of `threads`.
struct RunConfig {
  Hurst hurst{0.5};
  double half_width = 1000.0;
  Eigen::Index n_points = (1 << 14) + 1;
  std::int64_t n_trajectories = 20000;
  std::uint64_t seed = 1;
  std::vector<double> p_orders{1.0, 2.0, 4.0};
  double m_step = 0.02;  // h of the g(m) grid {-h, 0, h}
  CampaignChecks checks;
  int threads = 0;  // 0 -> hardware concurrency

  // Sorted m grid: {-h, 0, h}, plus {-h/2, h/2} when the curvature check
  // needs its bias probe.
  [[nodiscard]] std::vector<double> m_values() const;
};

void validate_config(const RunConfig& config);

enum class TestFunction { kCos, kSigmoid };

// Paired z-score of per-trajectory identity differences. `exact` marks the
// zero-variance, zero-mean case (identity holds pathwise).
struct CheckResult {
  double z = 0.0;
  double mean = 0.0;
  double se = 0.0;
  std::int64_t count = 0;
  bool exact = false;
  bool pass = false;  // exact, or |z| <= 3
};

struct InequalityResult {
  double margin = 0.0;  // mean of zeta^4 - c4^4 A4
  double se = 0.0;
  double c4 = 0.0;
  std::int64_t count = 0;
  bool pass = false;  // margin >= -3 se
};

struct GCurvatureResult {
  double g_dd = 0.0;       // mean second difference of log beta at +-h
  double se = 0.0;
  double paired_se = 0.0;  // SE of mean(s_i - zeta_i^2), common random numbers
  double bias_allowance = 0.0;  // (4/3) |mean_h - mean_{h/2}|
  double h = 0.0;
  std::int64_t count = 0;
  bool pass = false;  // |g_dd - var_zeta| <= 3 paired_se + bias_allowance
};

struct Lemma2Result {
  double estimate = 0.0;
  double se = 0.0;
  double bound = 0.0;
  double t = 1.0;
  double r = 1.0;
  std::int64_t count = 0;
  bool pass = false;  // estimate <= bound + 3 se
};

struct GEntry {
  double m = 0.0;
  double mean = 0.0;
  double se = 0.0;
};

struct McSummary {
  RunConfig config;
  double mean_zeta = 0.0;
  double se_mean_zeta = 0.0;
  double var_zeta = 0.0;  // uncentered second moment of zeta
  double se_var_zeta = 0.0;
  double var_zeta_centered = 0.0;
  double var_xi = 0.0;
  double se_var_xi = 0.0;
  std::optional<double> mean_a2, se_mean_a2;
  std::optional<double> mean_a4, se_mean_a4;
  std::vector<GEntry> g_of_m;
  double tail_mass_outer = 0.0;  // mean posterior mass at |t| > 0.95 T
  std::optional<CheckResult> corollary1;
  std::optional<CheckResult> theorem2_cos;
  std::optional<CheckResult> theorem2_sigmoid;
  std::optional<InequalityResult> corollary2;
  std::optional<GCurvatureResult> gcurvature;
  std::optional<Lemma2Result> lemma2;
};

struct StatRecord {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t count = 0;
};

std::vector<StatRecord> records(const McSummary& summary);

// Called once per trajectory during the sequential fold, in index order.
using TrajectorySink =
    std::function<void(std::int64_t, const PathFunctionals&)>;

McSummary run_campaign(const RunConfig& config,
                       const TrajectorySink& sink = {});

// Sorted-key JSON document; all floats at 9 significant digits. Identical
// configs and seeds produce byte-identical documents for any thread count.
void summary_to_json(const McSummary& summary, std::ostream& out);

// --- check primitives (also used by the campaign fold) ---

// G(zeta) - quadrature of G(zeta - t) q_t for one trajectory.
double theorem2_difference(const PosteriorDensity& density, double zeta,
                           TestFunction g);

CheckResult paired_identity_check(const MomentAccumulator& diffs);

CheckResult check_corollary1(std::span<const double> zeta,
                             std::span<const double> a2);

InequalityResult check_corollary2(std::span<const double> zeta,
                                  std::span<const double> a4, double c4);

// (lb(+h) - 2 lb(0) + lb(-h)) / h^2
double second_difference(double lb_minus, double lb_center, double lb_plus,
                         double h);

// (quadrature of e^{W} against weights)^{-r}, evaluated in the log domain.
double inverse_exp_integral(const Eigen::VectorXd& weights,
                            const Eigen::VectorXd& values, double r);

// Samples one-sided paths on [0, t] and tests the Jensen bound.
Lemma2Result check_lemma2(Hurst hurst, double t, double r,
                          std::int64_t n_samples, std::uint64_t seed,
                          Eigen::Index n_grid_points = 1025);

}  // namespace fbm
