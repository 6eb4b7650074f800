#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drawcouple/bounds.hpp"
#include "drawcouple/oracle.hpp"
#include "drawcouple/serialize.hpp"

namespace drawcouple::cli {

namespace {

nlohmann::json describe(const Population& pop) {
  const double raw = pop.raw_weight_sum();
  std::vector<double> w;
  for (double x : pop.weights()) w.push_back(x * raw);
  return {{"weights", w}, {"values", pop.values()}};
}

VerificationReport exact_report(std::string check, nlohmann::json params, double statistic,
                                double tol) {
  VerificationReport rep;
  rep.check = std::move(check);
  rep.params = std::move(params);
  rep.statistic = statistic;
  rep.reference = 0.0;
  rep.ci_halfwidth = tol;
  rep.verdict = one_sided_verdict(statistic, 0.0, tol);
  return rep;
}

// Worst violation of the first-draw identity over all non-empty subsets:
// set average minus conditional mean, and probability order against value order.
std::pair<double, nlohmann::json> first_draw_violation(const Population& pop) {
  const std::size_t size = pop.size();
  double worst = -std::numeric_limits<double>::infinity();
  nlohmann::json where;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); ++mask) {
    std::vector<ItemId> set;
    for (std::size_t i = 0; i < size; ++i)
      if (mask >> i & 1) set.push_back(static_cast<ItemId>(i + 1));
    const auto c = conditional_first_draw_given_set(pop, set);
    const double avg = cumulative_value(pop, set) / static_cast<double>(set.size());
    if (avg - c.cond_mean > worst) {
      worst = avg - c.cond_mean;
      where = {{"set", set}, {"kind", "mean"}};
    }
    for (ItemId a : set)
      for (ItemId b : set)
        if (pop.value(a) >= pop.value(b) && c.probs.at(b) - c.probs.at(a) > worst) {
          worst = c.probs.at(b) - c.probs.at(a);
          where = {{"set", set}, {"kind", "monotone"}, {"items", {a, b}}};
        }
  }
  return {worst, where};
}

std::vector<double> default_t_values(const Population& pop, std::size_t n) {
  const double scale = population_stats(pop).delta * std::sqrt(static_cast<double>(n));
  return {0.5 * scale, scale};
}

void append(std::vector<VerificationReport>& out, std::vector<VerificationReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

}  // namespace

std::vector<Population> ranked_weight_grid(std::size_t size) {
  std::vector<Population> out;
  std::vector<double> w(size, 1.0);
  while (true) {
    std::vector<double> v(size);
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t rank = 0;
      for (std::size_t j = 0; j < size; ++j)
        if (w[j] < w[i] || (w[j] == w[i] && j < i)) ++rank;
      v[i] = static_cast<double>(rank);
    }
    out.emplace_back(w, std::move(v));
    std::size_t k = 0;
    while (k < size && w[k] == 3.0) w[k++] = 1.0;
    if (k == size) break;
    w[k] += 1.0;
  }
  return out;
}

Population geometric_tercile_population(std::size_t size) {
  const double ratio = size > 1 ? std::pow(0.5, 1.0 / static_cast<double>(size - 1)) : 1.0;
  std::vector<double> w(size), v(size);
  for (std::size_t i = 0; i < size; ++i) {
    w[i] = std::pow(ratio, static_cast<double>(i));
    v[i] = 3.0 - static_cast<double>(3 * i / size);
  }
  return Population(std::move(w), std::move(v));
}

Population uniform_tercile_population(std::size_t size) {
  std::vector<double> v(size);
  for (std::size_t i = 0; i < size; ++i) v[i] = 3.0 - static_cast<double>(3 * i / size);
  return Population(std::vector<double>(size, 1.0), std::move(v));
}

std::vector<VerificationReport> verify_order_suite(Grid grid, double tol,
                                                const std::optional<McOptions>& mc) {
  std::vector<VerificationReport> out;
  const std::size_t max_n = grid == Grid::full ? 5 : 4;
  for (std::size_t size = 2; size <= max_n; ++size) {
    for (const Population& pop : ranked_weight_grid(size)) {
      for (std::size_t n = 1; n <= size; ++n) {
        const auto r = icx_dominates(exact_sample_dist(pop, n, SampleMode::without_replacement),
                                     exact_sample_dist(pop, n, SampleMode::with_replacement), tol);
        auto params = describe(pop);
        params["n"] = n;
        params["order"] = to_json(r);
        out.push_back(exact_report("icx_exact", std::move(params), r.worst_gap, tol));
      }
      auto [worst, where] = first_draw_violation(pop);
      auto params = describe(pop);
      params["worst"] = where;
      out.push_back(exact_report("first_draw_identity", std::move(params), worst, tol));
    }
  }
  if (mc) {
    out.push_back(mc_submartingale_check(Population({0.2, 0.3, 0.5}, {1.0, 2.0, 3.0}), 2, *mc));
    const std::size_t size = grid == Grid::full ? 100 : 20;
    const Population pop = geometric_tercile_population(size);
    out.push_back(mc_submartingale_check(pop, size / 10, *mc));
    const std::size_t n = size / 2;
    const auto stats = population_stats(pop);
    std::vector<double> as;
    for (int c = -2; c <= 2; ++c)
      as.push_back(static_cast<double>(n) * stats.mean_value +
                   0.5 * c * stats.delta * std::sqrt(static_cast<double>(n)));
    append(out, mc_order_check({pop, SamplerKind::without_replacement, n, 1},
                               {pop, SamplerKind::with_replacement, n, 1}, as, *mc));
  }
  return out;
}

std::vector<VerificationReport> verify_polya_suite(Grid grid, double tol,
                                                const std::optional<McOptions>& mc) {
  std::vector<VerificationReport> out;
  const std::size_t max_size = grid == Grid::full ? 4 : 3;
  const std::size_t max_n = grid == Grid::full ? 4 : 3;
  for (std::size_t size = 2; size <= max_size; ++size) {
    std::vector<double> values(size);
    for (std::size_t i = 0; i < size; ++i) values[i] = static_cast<double>(i);
    const Population pop(std::vector<double>(size, 1.0), values);
    for (std::size_t n = 1; n <= max_n; ++n) {
      const double target = static_cast<double>(n) * static_cast<double>(size - 1) / 2.0;
      for (int big_d = 2; big_d <= 4; ++big_d) {
        for (int d = 1; d < big_d; ++d) {
          const auto w = exact_polya_dist(pop, d, n);
          const auto z = exact_polya_dist(pop, big_d, n);
          const auto r = cx_dominates(w, z, tol);
          const double mean_gap =
              std::max(std::abs(w.mean() - target), std::abs(z.mean() - target));
          nlohmann::json params = {{"N", size}, {"n", n},           {"d", d},
                                   {"D", big_d}, {"order", to_json(r)}, {"mean_w", w.mean()},
                                   {"mean_z", z.mean()}, {"target_mean", target}};
          out.push_back(
              exact_report("cx_exact", std::move(params), std::max(r.worst_gap, mean_gap), tol));
        }
      }
    }
  }
  if (mc) {
    std::vector<double> five(5);
    for (std::size_t i = 0; i < 5; ++i) five[i] = static_cast<double>(i);
    out.push_back(mc_polya_martingale_check(Population(std::vector<double>(5, 1.0), five), 3, 4,
                                            grid == Grid::full ? 3 : 2, *mc));
    out.push_back(mc_polya_martingale_check(Population({1.0, 1.0}, {0.0, 1.0}), 1, 2, 2, *mc));
  }
  return out;
}

std::vector<VerificationReport> verify_tail_suite(Grid grid, const TailSuiteInput& input,
                                                const McOptions& mc) {
  std::vector<VerificationReport> out;
  if (input.pop) {
    const std::size_t n = input.n.value_or(1);
    const auto ts = input.t_values.empty() ? default_t_values(*input.pop, n) : input.t_values;
    return mc_tail_check(*input.pop, n, ts, mc);
  }
  const std::size_t size = grid == Grid::full ? 100 : 20;
  const Population geo = geometric_tercile_population(size);
  for (std::size_t n : {size / 4, size / 2, size * 9 / 10})
    append(out, mc_tail_check(geo, n, default_t_values(geo, n), mc));
  const Population flat = uniform_tercile_population(size);
  const std::size_t n = size - size / 20;
  auto ts = default_t_values(flat, n);
  const double v = serfling_variance(population_stats(flat).delta, size, n);
  ts.push_back(std::sqrt(v));
  ts.push_back(2.0 * std::sqrt(v));
  append(out, mc_tail_check(flat, n, ts, mc));
  return out;
}

std::vector<VerificationReport> verify_diagnostics(const std::optional<Population>& pop,
                                                   std::optional<std::size_t> n,
                                                   const McOptions& mc) {
  std::vector<VerificationReport> out;
  const Population p = pop.value_or(Population({0.2, 0.3, 0.5}, {1.0, 2.0, 3.0}));
  const std::size_t k = n.value_or(2);
  out.push_back(mc_expected_Tn_check(p, k, mc));
  if (k >= 1 && k < p.size()) out.push_back(mc_unique_occurrence_check(p, k, mc));
  const ScreeningRecord record =
      pop ? screening_coupling(p, k, {mc.seed.master_seed, std::numeric_limits<std::uint64_t>::max()})
          : screen_stream(p, std::vector<ItemId>{3, 3, 2}, 2);
  out.push_back(estimate_V(p, record, mc));
  return out;
}

}  // namespace drawcouple::cli
