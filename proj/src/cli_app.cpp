#include "fbm/cli_app.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fbm/closed_form.hpp"
#include "fbm/embedding.hpp"
#include "fbm/errors.hpp"
#include "fbm/functionals.hpp"
#include "fbm/json_writer.hpp"
#include "fbm/montecarlo.hpp"
#include "fbm/rng.hpp"

namespace fbm::cli {

namespace {

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("failed while writing: " + path);
}

struct SimFlags {
  double hurst = 0.5;
  std::int64_t trajectories = 20000;
  double half_width = 1000.0;
  std::int64_t points = (1 << 14) + 1;
  std::uint64_t seed = 1;
  double m_step = 0.02;
  int threads = 0;
  std::string out = "-";
  std::string config;
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("--config: line is not 'key = value': " + line);
    }
    kv[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
  }
  return kv;
}

template <typename T>
void maybe_set_from_config(const CLI::App* cmd,
                           std::map<std::string, std::string>& kv,
                           const std::string& key, T& target) {
  const auto it = kv.find(key);
  if (it == kv.end()) return;
  if (cmd->count("--" + key) == 0) {  // command-line flags win
    std::istringstream ss(it->second);
    ss >> target;
    if (ss.fail() || !ss.eof()) {
      throw ValidationError("--config: bad value for '" + key + "': " +
                            it->second);
    }
  }
  kv.erase(it);
}

// Flat key = value file mirroring the subcommand's flags.
void apply_config(const CLI::App* cmd, SimFlags& flags, bool with_m_step) {
  if (flags.config.empty()) return;
  auto kv = read_config_file(flags.config);
  maybe_set_from_config(cmd, kv, "trajectories", flags.trajectories);
  maybe_set_from_config(cmd, kv, "half-width", flags.half_width);
  maybe_set_from_config(cmd, kv, "points", flags.points);
  maybe_set_from_config(cmd, kv, "seed", flags.seed);
  maybe_set_from_config(cmd, kv, "threads", flags.threads);
  if (with_m_step) maybe_set_from_config(cmd, kv, "m-step", flags.m_step);
  if (!kv.empty()) {
    throw ValidationError("--config: unknown key '" + kv.begin()->first +
                          "'");
  }
}

void add_grid_flags(CLI::App* cmd, SimFlags& flags) {
  cmd->add_option("--H", flags.hurst, "Hurst parameter in (0, 1]")
      ->required();
  cmd->add_option("--trajectories", flags.trajectories,
                  "number of Monte Carlo trajectories")
      ->capture_default_str();
  cmd->add_option("--half-width", flags.half_width,
                  "grid half-width T; nodes span [-T, T]")
      ->capture_default_str();
  cmd->add_option("--points", flags.points, "odd node count of the grid")
      ->capture_default_str();
  cmd->add_option("--seed", flags.seed, "campaign seed")
      ->capture_default_str();
  cmd->add_option("--m-step", flags.m_step,
                  "spacing h of the log-beta parameter grid {-h, 0, h}")
      ->capture_default_str();
  cmd->add_option("--threads", flags.threads,
                  "worker threads (0 = all cores)")
      ->envname("FBM_PITMAN_THREADS")
      ->capture_default_str();
  cmd->add_option("--config", flags.config,
                  "key = value file mirroring the flags; flags win");
}

// Fail fast before any trajectory work; messages name the offending flag.
void validate_sim_flags(const SimFlags& flags) {
  if (!(flags.hurst > 0.0) || !(flags.hurst <= 1.0)) {
    throw ValidationError("--H must lie in (0, 1]");
  }
  if (flags.points < 3 || flags.points % 2 == 0) {
    throw ValidationError("--points must be an odd integer >= 3");
  }
  if (!(flags.half_width > 0.0)) {
    throw ValidationError("--half-width must be positive");
  }
  if (flags.trajectories < 2) {
    throw ValidationError("--trajectories must be >= 2");
  }
  if (!(flags.m_step > 0.0) || !(flags.m_step < kLogBetaWindow)) {
    throw ValidationError("--m-step must lie in (0, 1/8)");
  }
  if (flags.threads < 0) {
    throw ValidationError("--threads must be >= 0");
  }
}

CampaignChecks parse_checks(const std::vector<std::string>& tokens) {
  CampaignChecks checks;
  for (const std::string& token : tokens) {
    if (token == "all") {
      checks.corollary1 = checks.theorem2 = checks.corollary2_k4 = true;
      checks.lemma2 = checks.gcurvature = true;
    } else if (token == "corollary1") {
      checks.corollary1 = true;
    } else if (token == "theorem2") {
      checks.theorem2 = true;
    } else if (token == "corollary2") {
      checks.corollary2_k4 = true;
    } else if (token == "lemma2") {
      checks.lemma2 = true;
    } else if (token == "gcurvature") {
      checks.gcurvature = true;
    } else {
      throw ValidationError("--checks: unknown check '" + token + "'");
    }
  }
  return checks;
}

RunConfig make_config(const SimFlags& flags, const CampaignChecks& checks) {
  validate_sim_flags(flags);
  RunConfig config;
  config.hurst = Hurst(flags.hurst);
  config.half_width = flags.half_width;
  config.n_points = flags.points;
  config.n_trajectories = flags.trajectories;
  config.seed = flags.seed;
  config.m_step = flags.m_step;
  config.checks = checks;
  config.threads = flags.threads;
  validate_config(config);
  return config;
}

void run_simulate(const SimFlags& flags, const CampaignChecks& checks,
                  const std::string& dump_path) {
  const RunConfig config = make_config(flags, checks);

  std::unique_ptr<std::ofstream> dump;
  TrajectorySink sink;
  if (!dump_path.empty()) {
    dump = std::make_unique<std::ofstream>(dump_path, std::ios::binary);
    if (!*dump) throw IoError("cannot open output file: " + dump_path);
    *dump << "trajectory_id,zeta,xi,a1,a2,a4,log_b0,log_beta_mh,log_beta_ph"
          << '\n';
    const double h = config.m_step;
    sink = [&dump, h](std::int64_t index, const PathFunctionals& fn) {
      *dump << index << ',' << format_double(fn.zeta) << ','
            << format_double(fn.xi) << ',' << format_double(fn.a_moments.at(1.0))
            << ',' << format_double(fn.a_moments.at(2.0)) << ','
            << format_double(fn.a_moments.at(4.0)) << ','
            << format_double(fn.log_b0) << ','
            << format_double(fn.log_beta.at(-h)) << ','
            << format_double(fn.log_beta.at(h)) << '\n';
    };
  }

  const McSummary summary = run_campaign(config, sink);
  if (dump && !*dump) throw IoError("failed while writing: " + dump_path);

  std::ostringstream body;
  summary_to_json(summary, body);
  write_text(flags.out, body.str());
}

void run_table1(SimFlags flags, const std::string& figure_out) {
  const std::vector<double> sweep{0.4, 0.5, 0.6, 0.7, 0.81, 0.91};
  std::ostringstream table;
  std::ostringstream figure;
  table << "H,var_zeta,se_var_zeta,var_xi,se_var_xi,n_trajectories,seed"
        << '\n';
  figure << "H,var_zeta,var_xi" << '\n';
  for (const double h : sweep) {
    flags.hurst = h;
    const RunConfig config = make_config(flags, CampaignChecks{});
    const McSummary s = run_campaign(config);
    table << format_double(h) << ',' << format_double(s.var_zeta) << ','
          << format_double(s.se_var_zeta) << ',' << format_double(s.var_xi)
          << ',' << format_double(s.se_var_xi) << ',' << config.n_trajectories
          << ',' << config.seed << '\n';
    figure << format_double(h) << ',' << format_double(s.var_zeta) << ','
           << format_double(s.var_xi) << '\n';
    std::cerr << "table1: H=" << format_double(h)
              << " var_zeta=" << format_double(s.var_zeta)
              << " var_xi=" << format_double(s.var_xi) << '\n';
  }
  write_text(flags.out, table.str());
  write_text(figure_out, figure.str());
}

void run_closed_form(const std::optional<double>& hurst_flag,
                     const std::string& out) {
  std::optional<Hurst> hurst;
  if (hurst_flag) {
    if (!(*hurst_flag > 0.0) || !(*hurst_flag <= 1.0)) {
      throw ValidationError("--H must lie in (0, 1]");
    }
    hurst = Hurst(*hurst_flag);
  }
  const Hurst bound_h = hurst ? *hurst : Hurst(0.5);

  std::ostringstream body;
  JsonWriter w(body);
  w.begin_object();
  w.key("D").value(sinh_one_root());
  w.key("H0").value(crossover_h0());
  if (hurst) {
    w.key("alpha_lower_bound").value(alpha_lower_bound(*hurst));
  }
  w.key("lemma2_bound").begin_object();
  w.key("H").value(bound_h.value());
  w.key("r").value(1.0);
  w.key("t").value(1.0);
  w.key("value").value(lemma2_bound(1.0, 1.0, bound_h));
  w.end_object();
  w.key("var_xi_half").value(yao_variance());
  w.key("var_zeta_half").value(*var_zeta_closed(Hurst(0.5)));
  w.key("zeta3").value(riemann_zeta(3));
  w.end_object();
  body << '\n';
  write_text(out, body.str());
}

void run_ck(std::int64_t k, const std::string& out) {
  if (k < 2 || k % 2 != 0 || k > 10000) {
    throw ValidationError("--k must be an even integer in [2, 10000]");
  }
  const CkSolution solution = ck_root(static_cast<int>(k));
  const double asymptotic = ck_asymptotic(solution.k);

  std::ostringstream body;
  JsonWriter w(body);
  w.begin_object();
  w.key("asymptotic").value(asymptotic);
  w.key("k").value(static_cast<std::int64_t>(solution.k));
  w.key("relative_gap")
      .value(std::abs(solution.root - asymptotic) / solution.root);
  w.key("root").value(solution.root);
  w.end_object();
  body << '\n';
  write_text(out, body.str());
}

void run_sample_path(const SimFlags& flags) {
  validate_sim_flags(flags);
  const Hurst hurst(flags.hurst);
  const TimeGridPtr grid = make_grid(flags.half_width, flags.points);
  RngStream rng = RngStream::for_trajectory(flags.seed, 0);

  const FbmPath path = [&]() -> FbmPath {
    if (hurst.is_degenerate()) return sample_path_degenerate(grid, rng);
    const auto plan = std::make_shared<const EmbeddingPlan>(
        build_embedding(grid->n_points - 1, hurst, grid->spacing));
    return sample_two_sided_path(plan, grid, rng);
  }();
  const LogLikelihoodField field = log_likelihood_field(path);
  const PosteriorDensity density = posterior(field);

  std::ostringstream body;
  body << "t,W,log_z,q" << '\n';
  for (Eigen::Index j = 0; j < grid->n_points; ++j) {
    body << format_double(grid->nodes[j]) << ','
         << format_double(path.values[j]) << ','
         << format_double(field.log_z[j]) << ','
         << format_double(density.q[j]) << '\n';
  }
  write_text(flags.out, body.str());
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "Monte Carlo laboratory for Pitman and argmax estimators driven by "
      "two-sided fractional Brownian motion"};
  app.name("fbm_pitman");
  app.require_subcommand(1);

  const std::vector<std::string> check_names{
      "corollary1", "theorem2", "corollary2", "lemma2", "gcurvature", "all"};

  // simulate
  SimFlags sim;
  std::vector<std::string> sim_checks;
  std::string sim_dump;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run one campaign and emit a JSON summary");
  add_grid_flags(simulate, sim);
  simulate->add_option("--checks", sim_checks, "identity checks to run")
      ->check(CLI::IsMember(check_names));
  simulate
      ->add_option("--dump-trajectories", sim_dump,
                   "write per-trajectory functionals to this CSV file")
      ->expected(1);
  simulate->add_option("--out", sim.out, "output target (- for stdout)")
      ->capture_default_str();
  simulate->callback([&, simulate] {
    apply_config(simulate, sim, true);
    run_simulate(sim, parse_checks(sim_checks), sim_dump);
  });

  // table1
  SimFlags tbl;
  tbl.out = "table1.csv";
  std::string figure_out = "figure1.csv";
  CLI::App* table1 = app.add_subcommand(
      "table1", "sweep H over {0.4, 0.5, 0.6, 0.7, 0.81, 0.91} and emit CSV");
  table1->add_option("--trajectories", tbl.trajectories, "trajectories per H")
      ->capture_default_str();
  table1->add_option("--half-width", tbl.half_width, "grid half-width T")
      ->capture_default_str();
  table1->add_option("--points", tbl.points, "odd node count")
      ->capture_default_str();
  table1->add_option("--seed", tbl.seed, "campaign seed")
      ->capture_default_str();
  table1->add_option("--threads", tbl.threads, "worker threads (0 = all)")
      ->envname("FBM_PITMAN_THREADS")
      ->capture_default_str();
  table1->add_option("--out", tbl.out, "table CSV path")
      ->capture_default_str();
  table1->add_option("--figure-out", figure_out, "companion curve CSV path")
      ->capture_default_str();
  table1->add_option("--config", tbl.config,
                     "key = value file mirroring the flags; flags win");
  table1->callback([&, table1] {
    apply_config(table1, tbl, false);
    tbl.hurst = 0.5;  // placeholder; the sweep sets each row's H
    run_table1(tbl, figure_out);
  });

  // closed-form
  std::optional<double> cf_hurst;
  std::string cf_out = "-";
  CLI::App* closed = app.add_subcommand(
      "closed-form", "print the paper's closed-form constants as JSON");
  closed->add_option("--H", cf_hurst, "evaluate H-dependent bounds here");
  closed->add_option("--out", cf_out, "output target (- for stdout)")
      ->capture_default_str();
  closed->callback([&] { run_closed_form(cf_hurst, cf_out); });

  // ck
  std::int64_t ck_k = 0;
  std::string ck_out = "-";
  CLI::App* ck = app.add_subcommand(
      "ck", "root of the moment-inequality constant equation");
  ck->add_option("--k", ck_k, "even moment order, 2 <= k <= 10000")
      ->required();
  ck->add_option("--out", ck_out, "output target (- for stdout)")
      ->capture_default_str();
  ck->callback([&] { run_ck(ck_k, ck_out); });

  // sample-path
  SimFlags sp;
  sp.half_width = 10.0;
  sp.points = 1025;
  CLI::App* sample = app.add_subcommand(
      "sample-path", "dump one trajectory as CSV (t, W, log_z, q)");
  sample->add_option("--H", sp.hurst, "Hurst parameter in (0, 1]")
      ->required();
  sample->add_option("--half-width", sp.half_width, "grid half-width T")
      ->capture_default_str();
  sample->add_option("--points", sp.points, "odd node count")
      ->capture_default_str();
  sample->add_option("--seed", sp.seed, "stream seed")
      ->capture_default_str();
  sample->add_option("--out", sp.out, "output target (- for stdout)")
      ->capture_default_str();
  sample->callback([&] { run_sample_path(sp); });

  // check
  SimFlags chk;
  std::vector<std::string> chk_which{"all"};
  CLI::App* check = app.add_subcommand(
      "check", "run the identity/inequality checks and emit JSON");
  add_grid_flags(check, chk);
  check->add_option("--which", chk_which, "checks to run")
      ->check(CLI::IsMember(check_names))
      ->capture_default_str();
  check->add_option("--out", chk.out, "output target (- for stdout)")
      ->capture_default_str();
  check->callback([&, check] {
    apply_config(check, chk, true);
    run_simulate(chk, parse_checks(chk_which), "");
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("fbm_pitman");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace fbm::cli
