// drawcouple: command-line front end for the sampling, coupling, oracle,
// bound and verification routines.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "drawcouple/bounds.hpp"
#include "drawcouple/errors.hpp"
#include "drawcouple/oracle.hpp"
#include "drawcouple/samplers.hpp"
#include "drawcouple/serialize.hpp"
#include "suites.hpp"

namespace dc = drawcouple;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFailedCheck = 2;

struct RunConfig {
  std::string pop_path;
  std::size_t n = 0;
  int d = 1;
  std::optional<int> big_d;
  std::string mode = "without";
  std::vector<double> t_values;
  std::optional<double> a;
  std::optional<std::uint64_t> replicates;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out_path;
  double tol = 1e-12;
  bool trace = false;
  std::string grid = "small";
  std::string suite;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

dc::Population load(const RunConfig& cfg) {
  if (cfg.pop_path.empty()) throw UsageError("--pop is required");
  return dc::load_population_file(cfg.pop_path);
}

std::uint64_t require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw UsageError("this command is stochastic and needs --seed");
  return *cfg.seed;
}

dc::McOptions mc_options(const RunConfig& cfg, std::uint64_t default_replicates) {
  dc::McOptions o;
  o.seed = {require_seed(cfg), 0};
  o.replicates = cfg.replicates.value_or(default_replicates);
  o.threads = cfg.threads;
  return o;
}

dc::cli::Grid grid_of(const RunConfig& cfg) {
  return cfg.grid == "full" ? dc::cli::Grid::full : dc::cli::Grid::small;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw dc::InvalidInput("cannot write " + cfg.out_path);
  out << text << '\n';
}

int emit_reports(const RunConfig& cfg, const std::vector<dc::VerificationReport>& reports) {
  emit(cfg, dc::to_json(reports).dump(2));
  std::size_t pass = 0, fail = 0, other = 0;
  for (const auto& r : reports) {
    if (r.verdict == dc::Verdict::pass)
      ++pass;
    else if (r.verdict == dc::Verdict::fail)
      ++fail;
    else
      ++other;
  }
  std::cerr << reports.size() << " checks: " << pass << " pass, " << fail << " fail, " << other
            << " inconclusive\n";
  for (const auto& r : reports)
    if (r.verdict == dc::Verdict::fail)
      std::cerr << "  FAIL " << r.check << " statistic=" << r.statistic
                << " reference=" << r.reference << " ci=" << r.ci_halfwidth << ' '
                << r.params.dump() << '\n';
  return fail > 0 ? kExitFailedCheck : kExitOk;
}

// --- commands ---

int run_sample(const RunConfig& cfg) {
  const auto pop = load(cfg);
  const std::uint64_t seed = require_seed(cfg);
  const std::uint64_t count = cfg.replicates.value_or(1);
  nlohmann::json samples = nlohmann::json::array();
  for (std::uint64_t r = 0; r < count; ++r) {
    const dc::RngStreamSpec spec{seed, r};
    std::vector<dc::ItemId> s;
    if (cfg.mode == "with")
      s = dc::draw_with_replacement(pop, cfg.n, spec);
    else if (cfg.mode == "without")
      s = dc::draw_without_replacement(pop, cfg.n, spec);
    else
      s = dc::draw_polya(pop, cfg.d, cfg.n, spec);
    samples.push_back({{"sample", s}, {"value", dc::cumulative_value(pop, s)}});
  }
  emit(cfg, samples.dump());
  return kExitOk;
}

int run_couple(const RunConfig& cfg) {
  const auto pop = load(cfg);
  const dc::RngStreamSpec spec{require_seed(cfg), 0};
  nlohmann::json j;
  if (cfg.big_d) {
    dc::PolyaCouplingOptions opts;
    opts.record_steps = cfg.trace;
    j = dc::to_json(dc::polya_coupling(pop, cfg.d, *cfg.big_d, cfg.n, spec, opts));
    if (!cfg.trace) j.erase("steps");
  } else {
    j = dc::to_json(dc::screening_coupling(pop, cfg.n, spec));
    if (!cfg.trace) j.erase("stream");
  }
  emit(cfg, j.dump());
  return kExitOk;
}

dc::FiniteDistribution exact_law(const dc::Population& pop, const std::string& mode, std::size_t n,
                                 int d) {
  if (mode == "with") return dc::exact_sample_dist(pop, n, dc::SampleMode::with_replacement);
  if (mode == "without") return dc::exact_sample_dist(pop, n, dc::SampleMode::without_replacement);
  return dc::exact_polya_dist(pop, d, n);
}

int run_exact(const RunConfig& cfg) {
  const auto pop = load(cfg);
  emit(cfg, dc::to_json(exact_law(pop, cfg.mode, cfg.n, cfg.d)).dump());
  return kExitOk;
}

int run_order_check(const RunConfig& cfg) {
  const auto pop = load(cfg);
  const bool polya = cfg.big_d.has_value();
  if (polya && *cfg.big_d <= cfg.d) throw UsageError("--D must exceed --d");
  if (!cfg.replicates) {
    // Exact comparison.
    const auto lower = polya ? dc::exact_polya_dist(pop, cfg.d, cfg.n)
                             : dc::exact_sample_dist(pop, cfg.n, dc::SampleMode::without_replacement);
    const auto upper = polya ? dc::exact_polya_dist(pop, *cfg.big_d, cfg.n)
                             : dc::exact_sample_dist(pop, cfg.n, dc::SampleMode::with_replacement);
    const auto r = polya ? dc::cx_dominates(lower, upper, cfg.tol)
                         : dc::icx_dominates(lower, upper, cfg.tol);
    auto j = dc::to_json(r);
    j["order"] = polya ? "cx" : "icx";
    emit(cfg, j.dump());
    std::cerr << (r.holds ? "order holds\n" : "order FAILS\n");
    return r.holds ? kExitOk : kExitFailedCheck;
  }
  const auto mc = mc_options(cfg, *cfg.replicates);
  const dc::SamplerSpec lower = polya ? dc::SamplerSpec{pop, dc::SamplerKind::polya, cfg.n, cfg.d}
                                      : dc::SamplerSpec{pop, dc::SamplerKind::without_replacement, cfg.n, 1};
  const dc::SamplerSpec upper = polya ? dc::SamplerSpec{pop, dc::SamplerKind::polya, cfg.n, *cfg.big_d}
                                      : dc::SamplerSpec{pop, dc::SamplerKind::with_replacement, cfg.n, 1};
  std::vector<double> as = cfg.t_values;
  if (as.empty()) {
    const auto stats = dc::population_stats(pop);
    for (int c = -2; c <= 2; ++c)
      as.push_back(static_cast<double>(cfg.n) * stats.mean_value +
                   0.5 * c * stats.delta * std::sqrt(static_cast<double>(cfg.n)));
  }
  return emit_reports(cfg, dc::mc_order_check(lower, upper, as, mc));
}

int run_bound(const RunConfig& cfg) {
  const auto pop = load(cfg);
  if (cfg.n > pop.size()) throw dc::InvalidInput("n exceeds N");
  const auto stats = dc::population_stats(pop);
  const bool uniform = stats.alpha >= 1.0;
  const double v = uniform ? NAN : dc::variance_factor(stats, pop.size(), cfg.n);
  nlohmann::ordered_json j;
  j["delta"] = stats.delta;
  j["alpha"] = stats.alpha;
  j["v"] = uniform ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v);
  j["serfling"] = uniform ? nlohmann::ordered_json(dc::serfling_variance(stats.delta, pop.size(), cfg.n))
                          : nlohmann::ordered_json(nullptr);
  if (!cfg.t_values.empty()) {
    const double vv = uniform ? dc::serfling_variance(stats.delta, pop.size(), cfg.n) : v;
    auto& tails = j["tail_bounds"] = nlohmann::ordered_json::array();
    for (double t : cfg.t_values)
      tails.push_back({{"t", t}, {"bound", dc::subgaussian_tail_bound(vv, t)}});
  }
  if (cfg.a) {
    if (cfg.n == 0) throw dc::InvalidInput("the Chernoff bound needs n >= 1");
    const auto c = dc::chernoff_upper_bound(pop, cfg.n, *cfg.a);
    j["chernoff"] = {{"a", *cfg.a},
                     {"bound", c.bound},
                     {"theta_star", std::isfinite(c.theta_star) ? nlohmann::ordered_json(c.theta_star)
                                                                : nlohmann::ordered_json(nullptr)}};
  }
  emit(cfg, j.dump());
  return kExitOk;
}

int run_tail(const RunConfig& cfg) {
  const auto pop = load(cfg);
  const auto mc = mc_options(cfg, 100'000);
  dc::cli::TailSuiteInput input{pop, cfg.n, cfg.t_values};
  return emit_reports(cfg, dc::cli::verify_tail_suite(grid_of(cfg), input, mc));
}

int run_verify(const RunConfig& cfg) {
  const auto grid = grid_of(cfg);
  const std::uint64_t default_reps = grid == dc::cli::Grid::full ? 100'000 : 10'000;
  std::optional<dc::McOptions> mc;
  if (cfg.seed) mc = mc_options(cfg, default_reps);
  std::optional<dc::Population> pop;
  if (!cfg.pop_path.empty()) pop = load(cfg);
  std::optional<std::size_t> n;
  if (cfg.n > 0) n = cfg.n;

  if (cfg.suite == "theorem1") return emit_reports(cfg, dc::cli::verify_order_suite(grid, cfg.tol, mc));
  if (cfg.suite == "theorem3") return emit_reports(cfg, dc::cli::verify_polya_suite(grid, cfg.tol, mc));
  if (cfg.suite == "theorem2") {
    dc::cli::TailSuiteInput input{pop, n, cfg.t_values};
    return emit_reports(cfg, dc::cli::verify_tail_suite(grid, input, mc_options(cfg, default_reps)));
  }
  return emit_reports(cfg, dc::cli::verify_diagnostics(pop, n, mc_options(cfg, default_reps)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted sampling couplings, exact laws and concentration checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_pop = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--pop", cfg.pop_path, "population file (CSV or JSON)");
    if (required) o->required();
  };
  auto add_n = [&](CLI::App* c) { c->add_option("--n", cfg.n, "sample size"); };
  auto add_mc = [&](CLI::App* c) {
    c->add_option("--replicates", cfg.replicates, "Monte Carlo replicates");
    c->add_option("--seed", cfg.seed, "master seed");
    c->add_option("--threads", cfg.threads, "worker threads (never changes results)")
        ->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", cfg.out_path, "write JSON here"); };
  const auto modes = CLI::IsMember({"with", "without", "polya"});

  auto* sample = app.add_subcommand("sample", "draw seeded samples");
  add_pop(sample, true);
  add_n(sample);
  sample->add_option("--mode", cfg.mode)->check(modes);
  sample->add_option("--d", cfg.d, "Polya replacement number");
  add_mc(sample);
  add_out(sample);

  auto* couple = app.add_subcommand("couple", "run one screening or two-urn coupling");
  add_pop(couple, true);
  add_n(couple);
  couple->add_option("--d", cfg.d);
  couple->add_option("--D", cfg.big_d, "upper replacement number; selects the urn coupling");
  couple->add_flag("--trace", cfg.trace, "include the stream or urn steps");
  couple->add_option("--seed", cfg.seed);
  add_out(couple);

  auto* exact = app.add_subcommand("exact", "exact law of the cumulative value");
  add_pop(exact, true);
  add_n(exact);
  exact->add_option("--mode", cfg.mode)->check(modes);
  exact->add_option("--d", cfg.d);
  add_out(exact);

  auto* order = app.add_subcommand("order-check", "compare without/with or d/D Polya laws");
  add_pop(order, true);
  add_n(order);
  order->add_option("--d", cfg.d);
  order->add_option("--D", cfg.big_d);
  order->add_option("--t", cfg.t_values, "hinge points (Monte Carlo mode)");
  order->add_option("--tol", cfg.tol);
  add_mc(order);
  add_out(order);

  auto* bound = app.add_subcommand("bound", "variance factors and tail bounds");
  add_pop(bound, true);
  add_n(bound);
  bound->add_option("--t", cfg.t_values);
  bound->add_option("--a", cfg.a, "Chernoff threshold for the with-replacement sum");
  add_out(bound);

  auto* tail = app.add_subcommand("tail", "Monte Carlo tail check");
  add_pop(tail, true);
  add_n(tail);
  tail->add_option("--t", cfg.t_values);
  add_mc(tail);
  add_out(tail);

  auto* verify = app.add_subcommand("verify", "run a pre-registered verification suite");
  verify->add_option("suite", cfg.suite)
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "theorem3", "diagnostics"}));
  verify->add_option("--grid", cfg.grid)->check(CLI::IsMember({"small", "full"}));
  add_pop(verify, false);
  add_n(verify);
  verify->add_option("--t", cfg.t_values);
  verify->add_option("--tol", cfg.tol);
  add_mc(verify);
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*sample) return run_sample(cfg);
    if (*couple) return run_couple(cfg);
    if (*exact) return run_exact(cfg);
    if (*order) return run_order_check(cfg);
    if (*bound) return run_bound(cfg);
    if (*tail) return run_tail(cfg);
    return run_verify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "drawcouple: " << e.what() << '\n';
    return kExitError;
  }
}
