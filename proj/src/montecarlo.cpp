#include "fbm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fbm/closed_form.hpp"
#include "fbm/embedding.hpp"
#include "fbm/errors.hpp"
#include "fbm/json_writer.hpp"
#include "fbm/rng.hpp"

namespace fbm {

namespace {

constexpr std::int64_t kChunk = 8192;
constexpr double kOuterFraction = 0.95;
constexpr std::uint64_t kLemma2Tag = 0x4C454D4D4132ULL;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs work(i) for i in [0, count) across `threads` workers. Each index is
// processed exactly once; output slots are disjoint, so scheduling does not
// affect results.
template <typename MakeState, typename Work>
void parallel_indices(std::int64_t count, int threads,
                      const MakeState& make_state, const Work& work) {
  if (count <= 0) return;
  threads = static_cast<int>(std::min<std::int64_t>(threads, count));
  std::atomic<std::int64_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto body = [&] {
    auto state = make_state();
    while (true) {
      const std::int64_t i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) break;
      try {
        work(state, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        cursor.store(count, std::memory_order_relaxed);
        break;
      }
    }
  };

  if (threads <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

struct SigmoidOf {
  double operator()(double x) const { return 1.0 / (1.0 + std::exp(-x)); }
};

}  // namespace

std::vector<double> RunConfig::m_values() const {
  std::vector<double> ms{-m_step, 0.0, m_step};
  if (checks.gcurvature) {
    ms.push_back(-0.5 * m_step);
    ms.push_back(0.5 * m_step);
  }
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

void validate_config(const RunConfig& config) {
  if (config.n_points < 3 || config.n_points % 2 == 0) {
    throw ConfigInvalid("n_points must be odd and >= 3");
  }
  if (!(config.half_width > 0.0)) {
    throw ConfigInvalid("half_width must be positive");
  }
  if (config.n_trajectories < 2) {
    throw ConfigInvalid("n_trajectories must be >= 2");
  }
  if (!(config.m_step > 0.0) || !(config.m_step < kLogBetaWindow)) {
    throw ConfigInvalid("m_step must lie in (0, 1/8)");
  }
  for (const double p : config.p_orders) {
    if (!(p >= 1.0)) throw ConfigInvalid("p_orders entries must be >= 1");
  }
  if (config.checks.gcurvature && config.hurst.value() < 0.5) {
    throw ConfigInvalid("the g-curvature check requires H >= 1/2");
  }
  const auto has_order = [&](double p) {
    return std::find(config.p_orders.begin(), config.p_orders.end(), p) !=
           config.p_orders.end();
  };
  if (config.checks.corollary1 && !has_order(2.0)) {
    throw ConfigInvalid("corollary1 check needs p_orders to include 2");
  }
  if (config.checks.corollary2_k4 && !has_order(4.0)) {
    throw ConfigInvalid("corollary2 check needs p_orders to include 4");
  }
  if (config.threads < 0) {
    throw ConfigInvalid("threads must be >= 0");
  }
}

double theorem2_difference(const PosteriorDensity& density, double zeta,
                           TestFunction g) {
  const TimeGrid& grid = *density.grid;
  double rhs = 0.0;
  switch (g) {
    case TestFunction::kCos:
      rhs = (grid.weights.array() * (zeta - grid.nodes.array()).cos() *
             density.q.array())
                .sum();
      return std::cos(zeta) - rhs;
    case TestFunction::kSigmoid: {
      const SigmoidOf sigmoid;
      rhs = (grid.weights.array() *
             (1.0 / (1.0 + (grid.nodes.array() - zeta).exp())) *
             density.q.array())
                .sum();
      return sigmoid(zeta) - rhs;
    }
  }
  throw ValidationError("unknown test function");
}

CheckResult paired_identity_check(const MomentAccumulator& diffs) {
  CheckResult result;
  result.count = diffs.count();
  result.mean = diffs.mean();
  result.se = diffs.se_of_mean();
  if (result.se == 0.0) {
    result.exact = result.mean == 0.0;
    result.z = result.exact ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    result.z = result.mean / result.se;
  }
  result.pass = result.exact || std::abs(result.z) <= 3.0;
  return result;
}

CheckResult check_corollary1(std::span<const double> zeta,
                             std::span<const double> a2) {
  if (zeta.size() != a2.size() || zeta.size() < 2) {
    throw ValidationError("corollary1 needs paired samples, n >= 2");
  }
  MomentAccumulator diffs;
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    diffs.add(zeta[i] * zeta[i] - 0.5 * a2[i]);
  }
  return paired_identity_check(diffs);
}

InequalityResult check_corollary2(std::span<const double> zeta,
                                  std::span<const double> a4, double c4) {
  if (zeta.size() != a4.size() || zeta.size() < 2) {
    throw ValidationError("corollary2 needs paired samples, n >= 2");
  }
  const double c4_4 = c4 * c4 * c4 * c4;
  MomentAccumulator diffs;
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    const double z2 = zeta[i] * zeta[i];
    diffs.add(z2 * z2 - c4_4 * a4[i]);
  }
  InequalityResult result;
  result.margin = diffs.mean();
  result.se = diffs.se_of_mean();
  result.c4 = c4;
  result.count = diffs.count();
  result.pass = result.margin >= -3.0 * result.se;
  return result;
}

double second_difference(double lb_minus, double lb_center, double lb_plus,
                         double h) {
  if (!(h > 0.0)) throw ValidationError("second difference needs h > 0");
  return (lb_plus - 2.0 * lb_center + lb_minus) / (h * h);
}

double inverse_exp_integral(const Eigen::VectorXd& weights,
                            const Eigen::VectorXd& values, double r) {
  const double top = values.maxCoeff();
  const double mass =
      (weights.array() * (values.array() - top).exp()).sum();
  return std::exp(-r * (top + std::log(mass)));
}

Lemma2Result check_lemma2(Hurst hurst, double t, double r,
                          std::int64_t n_samples, std::uint64_t seed,
                          Eigen::Index n_grid_points) {
  if (!(t > 0.0) || !(r > 0.0)) {
    throw ValidationError("lemma2 check needs t > 0 and r > 0");
  }
  if (n_samples < 2 || n_grid_points < 2) {
    throw ValidationError("lemma2 check needs n >= 2 samples and nodes");
  }
  const Eigen::Index n_inc = n_grid_points - 1;
  const double dt = t / static_cast<double>(n_inc);
  Eigen::VectorXd weights = Eigen::VectorXd::Constant(n_grid_points, dt);
  weights[0] = 0.5 * dt;
  weights[n_grid_points - 1] = 0.5 * dt;

  std::unique_ptr<CirculantSampler> sampler;
  if (!hurst.is_degenerate()) {
    sampler = std::make_unique<CirculantSampler>(
        std::make_shared<const EmbeddingPlan>(
            build_embedding(n_inc, hurst, dt)));
  }

  Eigen::VectorXd increments(n_inc);
  Eigen::VectorXd path(n_grid_points);
  MomentAccumulator acc;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    RngStream rng = RngStream::for_trajectory(seed,
                                              static_cast<std::uint64_t>(i));
    path[0] = 0.0;
    if (sampler) {
      sampler->sample_increments(rng, increments);
      for (Eigen::Index j = 1; j < n_grid_points; ++j) {
        path[j] = path[j - 1] + increments[j - 1];
      }
    } else {
      const double g = rng.normal();
      for (Eigen::Index j = 1; j < n_grid_points; ++j) {
        path[j] = static_cast<double>(j) * dt * g;
      }
    }
    acc.add(inverse_exp_integral(weights, path, r));
  }

  Lemma2Result result;
  result.estimate = acc.mean();
  result.se = acc.se_of_mean();
  result.bound = lemma2_bound(t, r, hurst);
  result.t = t;
  result.r = r;
  result.count = acc.count();
  result.pass = result.estimate <= result.bound + 3.0 * result.se;
  return result;
}

namespace {

// Row layout of the per-trajectory record block.
struct RecordLayout {
  Eigen::Index zeta = 0;
  Eigen::Index xi = 1;
  Eigen::Index log_b0 = 2;
  Eigen::Index tail = 3;
  Eigen::Index a_base = 4;
  Eigen::Index m_base = 0;
  Eigen::Index th2_cos = -1;
  Eigen::Index th2_sigmoid = -1;
  Eigen::Index rows = 0;
};

struct CampaignContext {
  const RunConfig* config = nullptr;
  TimeGridPtr grid;
  EmbeddingPlanPtr plan;
  std::vector<double> ms;
  std::vector<Eigen::VectorXd> weighted_abs_pow;  // per p order
  Eigen::VectorXd weighted_outer;                 // weights on |t| > 0.95 T
  RecordLayout layout;
};

struct WorkerState {
  std::unique_ptr<CirculantSampler> sampler;
};

void fill_record(const CampaignContext& ctx, WorkerState& state,
                 std::int64_t index, Eigen::Ref<Eigen::VectorXd> col) {
  const RunConfig& config = *ctx.config;
  RngStream rng = RngStream::for_trajectory(config.seed,
                                            static_cast<std::uint64_t>(index));
  const FbmPath path = state.sampler
                           ? state.sampler->sample_two_sided(ctx.grid, rng)
                           : sample_path_degenerate(ctx.grid, rng);
  const LogLikelihoodField field = log_likelihood_field(path);
  const PosteriorDensity density = posterior(field);
  const RecordLayout& layout = ctx.layout;

  const double zeta = pitman_estimate(density);
  col[layout.zeta] = zeta;
  col[layout.xi] = mle_argmax(field);
  col[layout.log_b0] = density.log_b0;
  col[layout.tail] = ctx.weighted_outer.dot(density.q);
  for (std::size_t i = 0; i < ctx.weighted_abs_pow.size(); ++i) {
    col[layout.a_base + static_cast<Eigen::Index>(i)] =
        ctx.weighted_abs_pow[i].dot(density.q);
  }
  for (std::size_t i = 0; i < ctx.ms.size(); ++i) {
    const double m = ctx.ms[i];
    col[layout.m_base + static_cast<Eigen::Index>(i)] =
        m == 0.0 ? density.log_b0 : log_beta(field, m);
  }
  if (layout.th2_cos >= 0) {
    col[layout.th2_cos] =
        theorem2_difference(density, zeta, TestFunction::kCos);
    col[layout.th2_sigmoid] =
        theorem2_difference(density, zeta, TestFunction::kSigmoid);
  }
}

}  // namespace

McSummary run_campaign(const RunConfig& config, const TrajectorySink& sink) {
  validate_config(config);

  CampaignContext ctx;
  ctx.config = &config;
  ctx.grid = make_grid(config.half_width, config.n_points);
  if (!config.hurst.is_degenerate()) {
    ctx.plan = std::make_shared<const EmbeddingPlan>(build_embedding(
        config.n_points - 1, config.hurst, ctx.grid->spacing));
  }
  ctx.ms = config.m_values();

  const TimeGrid& grid = *ctx.grid;
  ctx.weighted_abs_pow.reserve(config.p_orders.size());
  for (const double p : config.p_orders) {
    ctx.weighted_abs_pow.emplace_back(grid.weights.array() *
                                      grid.nodes.array().abs().pow(p));
  }
  ctx.weighted_outer =
      (grid.nodes.array().abs() > kOuterFraction * grid.half_width)
          .select(grid.weights, Eigen::VectorXd::Zero(grid.n_points));

  RecordLayout& layout = ctx.layout;
  layout.m_base = layout.a_base +
                  static_cast<Eigen::Index>(config.p_orders.size());
  layout.rows = layout.m_base + static_cast<Eigen::Index>(ctx.ms.size());
  if (config.checks.theorem2) {
    layout.th2_cos = layout.rows++;
    layout.th2_sigmoid = layout.rows++;
  }

  // Per-p and per-m accumulators, plus the paired check accumulators.
  MomentAccumulator acc_zeta, acc_xi, acc_tail;
  std::vector<MomentAccumulator> acc_a(config.p_orders.size());
  std::vector<MomentAccumulator> acc_lb(ctx.ms.size());
  MomentAccumulator acc_c1, acc_c2, acc_cos, acc_sigmoid;
  MomentAccumulator acc_curv, acc_curv_half, acc_curv_paired;

  const auto index_of_p = [&](double p) -> Eigen::Index {
    const auto it =
        std::find(config.p_orders.begin(), config.p_orders.end(), p);
    return layout.a_base +
           static_cast<Eigen::Index>(it - config.p_orders.begin());
  };
  const auto index_of_m = [&](double m) -> Eigen::Index {
    const auto it = std::find(ctx.ms.begin(), ctx.ms.end(), m);
    return layout.m_base + static_cast<Eigen::Index>(it - ctx.ms.begin());
  };

  double c4 = 0.0;
  if (config.checks.corollary2_k4) c4 = ck_root(4).root;
  const double c4_4 = c4 * c4 * c4 * c4;
  const double h = config.m_step;

  const int threads = resolve_threads(config.threads);
  const std::int64_t n = config.n_trajectories;
  Eigen::MatrixXd block(layout.rows, std::min<std::int64_t>(kChunk, n));

  for (std::int64_t start = 0; start < n; start += kChunk) {
    const std::int64_t count = std::min<std::int64_t>(kChunk, n - start);
    parallel_indices(
        count, threads,
        [&] {
          WorkerState state;
          if (ctx.plan) {
            state.sampler = std::make_unique<CirculantSampler>(ctx.plan);
          }
          return state;
        },
        [&](WorkerState& state, std::int64_t i) {
          fill_record(ctx, state, start + i, block.col(i));
        });

    for (std::int64_t i = 0; i < count; ++i) {
      const auto col = block.col(i);
      const double zeta = col[layout.zeta];
      acc_zeta.add(zeta);
      acc_xi.add(col[layout.xi]);
      acc_tail.add(col[layout.tail]);
      for (std::size_t p = 0; p < acc_a.size(); ++p) {
        acc_a[p].add(col[layout.a_base + static_cast<Eigen::Index>(p)]);
      }
      for (std::size_t m = 0; m < acc_lb.size(); ++m) {
        acc_lb[m].add(col[layout.m_base + static_cast<Eigen::Index>(m)]);
      }
      if (config.checks.corollary1) {
        acc_c1.add(zeta * zeta - 0.5 * col[index_of_p(2.0)]);
      }
      if (config.checks.corollary2_k4) {
        const double z2 = zeta * zeta;
        acc_c2.add(z2 * z2 - c4_4 * col[index_of_p(4.0)]);
      }
      if (config.checks.theorem2) {
        acc_cos.add(col[layout.th2_cos]);
        acc_sigmoid.add(col[layout.th2_sigmoid]);
      }
      if (config.checks.gcurvature) {
        const double lb0 = col[layout.log_b0];
        const double s = second_difference(col[index_of_m(-h)], lb0,
                                           col[index_of_m(h)], h);
        const double s_half =
            second_difference(col[index_of_m(-0.5 * h)], lb0,
                              col[index_of_m(0.5 * h)], 0.5 * h);
        acc_curv.add(s);
        acc_curv_half.add(s_half);
        acc_curv_paired.add(s - zeta * zeta);
      }
      if (sink) {
        PathFunctionals fn;
        fn.zeta = zeta;
        fn.xi = col[layout.xi];
        fn.log_b0 = col[layout.log_b0];
        for (std::size_t p = 0; p < config.p_orders.size(); ++p) {
          fn.a_moments[config.p_orders[p]] =
              col[layout.a_base + static_cast<Eigen::Index>(p)];
        }
        for (std::size_t m = 0; m < ctx.ms.size(); ++m) {
          fn.log_beta[ctx.ms[m]] =
              col[layout.m_base + static_cast<Eigen::Index>(m)];
        }
        sink(start + i, fn);
      }
    }
  }

  McSummary summary;
  summary.config = config;
  summary.mean_zeta = acc_zeta.mean();
  summary.se_mean_zeta = acc_zeta.se_of_mean();
  summary.var_zeta = acc_zeta.raw_second_moment();
  summary.se_var_zeta = acc_zeta.se_of_variance();
  summary.var_zeta_centered = acc_zeta.variance();
  summary.var_xi = acc_xi.raw_second_moment();
  summary.se_var_xi = acc_xi.se_of_variance();
  summary.tail_mass_outer = acc_tail.mean();
  for (std::size_t p = 0; p < config.p_orders.size(); ++p) {
    if (config.p_orders[p] == 2.0) {
      summary.mean_a2 = acc_a[p].mean();
      summary.se_mean_a2 = acc_a[p].se_of_mean();
    } else if (config.p_orders[p] == 4.0) {
      summary.mean_a4 = acc_a[p].mean();
      summary.se_mean_a4 = acc_a[p].se_of_mean();
    }
  }
  summary.g_of_m.reserve(ctx.ms.size());
  for (std::size_t m = 0; m < ctx.ms.size(); ++m) {
    summary.g_of_m.push_back(
        {ctx.ms[m], acc_lb[m].mean(), acc_lb[m].se_of_mean()});
  }

  if (config.checks.corollary1) {
    summary.corollary1 = paired_identity_check(acc_c1);
  }
  if (config.checks.theorem2) {
    summary.theorem2_cos = paired_identity_check(acc_cos);
    summary.theorem2_sigmoid = paired_identity_check(acc_sigmoid);
  }
  if (config.checks.corollary2_k4) {
    InequalityResult ineq;
    ineq.margin = acc_c2.mean();
    ineq.se = acc_c2.se_of_mean();
    ineq.c4 = c4;
    ineq.count = acc_c2.count();
    ineq.pass = ineq.margin >= -3.0 * ineq.se;
    summary.corollary2 = ineq;
  }
  if (config.checks.gcurvature) {
    GCurvatureResult curv;
    curv.g_dd = acc_curv.mean();
    curv.se = acc_curv.se_of_mean();
    curv.paired_se = acc_curv_paired.se_of_mean();
    curv.bias_allowance =
        4.0 / 3.0 * std::abs(acc_curv.mean() - acc_curv_half.mean());
    curv.h = h;
    curv.count = acc_curv.count();
    curv.pass = std::abs(curv.g_dd - summary.var_zeta) <=
                3.0 * curv.paired_se + curv.bias_allowance;
    summary.gcurvature = curv;
  }
  if (config.checks.lemma2) {
    summary.lemma2 =
        check_lemma2(config.hurst, 1.0, 1.0, config.n_trajectories,
                     derive_subseed(config.seed, kLemma2Tag));
  }
  return summary;
}

std::vector<StatRecord> records(const McSummary& summary) {
  const std::int64_t n = summary.config.n_trajectories;
  std::vector<StatRecord> out;
  out.push_back({"mean_zeta", summary.mean_zeta, summary.se_mean_zeta, n});
  out.push_back({"var_zeta", summary.var_zeta, summary.se_var_zeta, n});
  out.push_back({"var_xi", summary.var_xi, summary.se_var_xi, n});
  if (summary.mean_a2) {
    out.push_back({"mean_a2", *summary.mean_a2, *summary.se_mean_a2, n});
  }
  if (summary.mean_a4) {
    out.push_back({"mean_a4", *summary.mean_a4, *summary.se_mean_a4, n});
  }
  for (const GEntry& g : summary.g_of_m) {
    out.push_back({"g(" + format_double(g.m) + ")", g.mean, g.se, n});
  }
  if (summary.corollary1) {
    out.push_back({"corollary1_z", summary.corollary1->z,
                   summary.corollary1->se, summary.corollary1->count});
  }
  if (summary.theorem2_cos) {
    out.push_back({"theorem2_cos_z", summary.theorem2_cos->z,
                   summary.theorem2_cos->se, summary.theorem2_cos->count});
  }
  if (summary.theorem2_sigmoid) {
    out.push_back({"theorem2_sigmoid_z", summary.theorem2_sigmoid->z,
                   summary.theorem2_sigmoid->se,
                   summary.theorem2_sigmoid->count});
  }
  return out;
}

namespace {

void check_to_json(JsonWriter& w, const CheckResult& c) {
  w.begin_object();
  w.key("count").value(c.count);
  w.key("exact").value(c.exact);
  w.key("mean").value(c.mean);
  w.key("pass").value(c.pass);
  w.key("se").value(c.se);
  w.key("z").value(c.z);
  w.end_object();
}

}  // namespace

void summary_to_json(const McSummary& summary, std::ostream& out) {
  JsonWriter w(out);
  w.begin_object();

  if (summary.config.checks.any()) {
    w.key("checks").begin_object();
    if (summary.corollary1) {
      w.key("corollary1");
      check_to_json(w, *summary.corollary1);
    }
    if (summary.corollary2) {
      const InequalityResult& c = *summary.corollary2;
      w.key("corollary2_k4").begin_object();
      w.key("c4").value(c.c4);
      w.key("count").value(c.count);
      w.key("margin").value(c.margin);
      w.key("pass").value(c.pass);
      w.key("se").value(c.se);
      w.end_object();
    }
    if (summary.gcurvature) {
      const GCurvatureResult& c = *summary.gcurvature;
      w.key("gcurvature").begin_object();
      w.key("bias_allowance").value(c.bias_allowance);
      w.key("count").value(c.count);
      w.key("g_dd").value(c.g_dd);
      w.key("h").value(c.h);
      w.key("paired_se").value(c.paired_se);
      w.key("pass").value(c.pass);
      w.key("se").value(c.se);
      w.end_object();
    }
    if (summary.lemma2) {
      const Lemma2Result& c = *summary.lemma2;
      w.key("lemma2").begin_object();
      w.key("bound").value(c.bound);
      w.key("count").value(c.count);
      w.key("estimate").value(c.estimate);
      w.key("pass").value(c.pass);
      w.key("r").value(c.r);
      w.key("se").value(c.se);
      w.key("t").value(c.t);
      w.end_object();
    }
    if (summary.theorem2_cos) {
      w.key("theorem2_cos");
      check_to_json(w, *summary.theorem2_cos);
    }
    if (summary.theorem2_sigmoid) {
      w.key("theorem2_sigmoid");
      check_to_json(w, *summary.theorem2_sigmoid);
    }
    w.end_object();
  }

  const RunConfig& config = summary.config;
  w.key("config").begin_object();
  w.key("H").value(config.hurst.value());
  w.key("half_width").value(config.half_width);
  w.key("m_step").value(config.m_step);
  w.key("m_values").begin_array();
  for (const double m : config.m_values()) w.value(m);
  w.end_array();
  w.key("n_points").value(static_cast<std::int64_t>(config.n_points));
  w.key("n_trajectories").value(config.n_trajectories);
  w.key("p_orders").begin_array();
  for (const double p : config.p_orders) w.value(p);
  w.end_array();
  w.key("seed").value(config.seed);
  w.end_object();

  w.key("g_of_m").begin_array();
  for (const GEntry& g : summary.g_of_m) {
    w.begin_object();
    w.key("m").value(g.m);
    w.key("mean").value(g.mean);
    w.key("se").value(g.se);
    w.end_object();
  }
  w.end_array();

  if (summary.mean_a2) w.key("mean_a2").value(*summary.mean_a2);
  if (summary.mean_a4) w.key("mean_a4").value(*summary.mean_a4);
  w.key("mean_zeta").value(summary.mean_zeta);
  w.key("n_trajectories").value(summary.config.n_trajectories);
  if (summary.se_mean_a2) w.key("se_mean_a2").value(*summary.se_mean_a2);
  if (summary.se_mean_a4) w.key("se_mean_a4").value(*summary.se_mean_a4);
  w.key("se_mean_zeta").value(summary.se_mean_zeta);
  w.key("se_var_xi").value(summary.se_var_xi);
  w.key("se_var_zeta").value(summary.se_var_zeta);
  w.key("tail_mass_outer").value(summary.tail_mass_outer);
  w.key("var_xi").value(summary.var_xi);
  w.key("var_zeta").value(summary.var_zeta);
  w.key("var_zeta_centered").value(summary.var_zeta_centered);
  w.end_object();
  out << '\n';
}

}  // namespace fbm
