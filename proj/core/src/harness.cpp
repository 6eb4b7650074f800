#include "drawcouple/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "drawcouple/bounds.hpp"
#include "drawcouple/errors.hpp"
#include "drawcouple/oracle.hpp"
#include "drawcouple/samplers.hpp"

namespace drawcouple {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict one_sided_verdict(double statistic, double reference, double ci) {
  return statistic <= reference + ci ? Verdict::pass : Verdict::fail;
}

Verdict equality_verdict(double statistic, double reference, double ci) {
  return std::abs(statistic - reference) <= ci ? Verdict::pass : Verdict::fail;
}

double SampleMoments::standard_error() const {
  return count == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(count));
}

SampleMoments moments(std::span<const double> xs) {
  SampleMoments m;
  m.count = xs.size();
  if (xs.empty()) return m;
  CompensatedSum sum;
  for (double x : xs) sum.add(x);
  m.mean = sum.value() / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    CompensatedSum sq;
    for (double x : xs) sq.add((x - m.mean) * (x - m.mean));
    m.variance = sq.value() / static_cast<double>(xs.size() - 1);
  }
  return m;
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probs) {
  if (observed.size() != probs.size())
    throw InvalidInput("chi-square: counts and probabilities differ in length");
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  ChiSquareResult out;
  if (total == 0) return out;
  std::size_t categories = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = probs[i] * static_cast<double>(total);
    if (expected <= 0.0) {
      if (observed[i] > 0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        out.degrees_of_freedom = std::max<std::size_t>(observed.size(), 2) - 1;
        return out;
      }
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    out.statistic += diff * diff / expected;
    ++categories;
  }
  if (categories < 2) return out;
  out.degrees_of_freedom = categories - 1;
  const boost::math::chi_squared dist(static_cast<double>(out.degrees_of_freedom));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

ChiSquareResult tuple_gof(const std::map<std::vector<ItemId>, double>& law,
                          std::span<const std::vector<ItemId>> observed) {
  std::map<std::vector<ItemId>, std::size_t> slot;
  std::vector<double> probs;
  for (const auto& [tuple, p] : law) {
    slot.emplace(tuple, probs.size());
    probs.push_back(p);
  }
  // One overflow category for tuples outside the law's support.
  probs.push_back(0.0);
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (const auto& t : observed) {
    const auto it = slot.find(t);
    ++counts[it == slot.end() ? probs.size() - 1 : it->second];
  }
  return chi_square_gof(counts, probs);
}

namespace {

// Exact law only when enumeration is cheap.
constexpr std::uint64_t kCheapEnumeration = 1'000'000;

double population_value_sum(const Population& pop) {
  CompensatedSum s;
  for (double v : pop.values()) s.add(v);
  return s.value();
}

const char* kind_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::with_replacement: return "with";
    case SamplerKind::without_replacement: return "without";
    case SamplerKind::polya: return "polya";
  }
  return "without";
}

// Keeps the check whose margin (how far it is from failing) is worst.
struct WorstCase {
  double margin = -std::numeric_limits<double>::infinity();
  double statistic = 0.0;
  double reference = 0.0;
  double ci = 0.0;
  nlohmann::json where;
  bool any = false;

  void offer(double m, double stat, double ref, double half, nlohmann::json at) {
    if (!any || m > margin) {
      margin = m;
      statistic = stat;
      reference = ref;
      ci = half;
      where = std::move(at);
      any = true;
    }
  }
};

}  // namespace

std::vector<VerificationReport> mc_tail_check(const Population& pop, std::size_t n,
                                              std::span<const double> t_values,
                                              const McOptions& options) {
  if (options.replicates == 0) throw InvalidInput("replicate budget is 0");
  if (options.replicates < 1000) throw InvalidInput("tail checks need at least 1000 replicates");
  if (n > pop.size()) throw InvalidInput("n exceeds N");

  const PopulationStats stats = population_stats(pop);
  const bool uniform = stats.alpha >= 1.0;
  const double v = uniform ? serfling_variance(stats.delta, pop.size(), n)
                           : variance_factor(stats, pop.size(), n);

  const SuccessiveSampler prototype(pop);
  const auto xs = run_replicates(options.replicates, options.threads, [&](std::uint64_t r) {
    SuccessiveSampler sampler = prototype;
    Rng rng(options.stream(r));
    double x = 0.0;
    for (std::size_t k = 0; k < n; ++k) x += pop.value(sampler.draw(rng));
    return x;
  });
  const SampleMoments m = moments(xs);

  std::optional<double> exact_mean;
  if (count_tuples(pop.size(), n, SampleMode::without_replacement) <= kCheapEnumeration)
    exact_mean = exact_sample_dist(pop, n, SampleMode::without_replacement).mean();

  const auto reps = static_cast<double>(options.replicates);
  std::vector<VerificationReport> reports;
  for (double t : t_values) {
    const double bound = subgaussian_tail_bound(v, t);
    std::uint64_t above = 0, below = 0;
    for (double x : xs) {
      if (x - m.mean > t) ++above;
      if (x - m.mean < -t) ++below;
    }
    for (const auto& [side, hits] : {std::pair{"upper", above}, std::pair{"lower", below}}) {
      const double p = static_cast<double>(hits) / reps;
      const double half = kSigmaBand * std::sqrt(p * (1.0 - p) / reps);
      VerificationReport rep;
      rep.check = "tail_bound";
      rep.params = {{"N", pop.size()},
                    {"n", n},
                    {"t", t},
                    {"side", side},
                    {"v", v},
                    {"v_source", uniform ? "serfling" : "weighted"},
                    {"delta", stats.delta},
                    {"alpha", stats.alpha},
                    {"mean_estimate", m.mean},
                    {"exact_mean", exact_mean ? nlohmann::json(*exact_mean) : nlohmann::json(nullptr)},
                    {"mean_note", "tails measured around the plug-in mean of the same replicates"},
                    {"bound_over_empirical", p > 0.0 ? nlohmann::json(bound / p) : nlohmann::json(nullptr)}};
      rep.statistic = p;
      rep.reference = bound;
      rep.ci_halfwidth = half;
      rep.replicates = options.replicates;
      rep.verdict = one_sided_verdict(p, bound, half);
      rep.seed = options.seed;
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

double sample_value(const SamplerSpec& spec, RngStreamSpec rng) {
  std::vector<ItemId> sample;
  switch (spec.kind) {
    case SamplerKind::with_replacement: sample = draw_with_replacement(spec.pop, spec.n, rng); break;
    case SamplerKind::without_replacement:
      sample = draw_without_replacement(spec.pop, spec.n, rng);
      break;
    case SamplerKind::polya: sample = draw_polya(spec.pop, spec.d, spec.n, rng); break;
  }
  return cumulative_value(spec.pop, sample);
}

namespace {

std::optional<FiniteDistribution> exact_law_if_cheap(const SamplerSpec& spec) {
  const auto mode = spec.kind == SamplerKind::without_replacement ? SampleMode::without_replacement
                                                                   : SampleMode::with_replacement;
  if (count_tuples(spec.pop.size(), spec.n, mode) > kCheapEnumeration) return std::nullopt;
  switch (spec.kind) {
    case SamplerKind::with_replacement: return exact_sample_dist(spec.pop, spec.n, mode);
    case SamplerKind::without_replacement: return exact_sample_dist(spec.pop, spec.n, mode);
    case SamplerKind::polya: return exact_polya_dist(spec.pop, spec.d, spec.n);
  }
  return std::nullopt;
}

nlohmann::json describe(const SamplerSpec& s) {
  nlohmann::json j = {{"mode", kind_name(s.kind)}, {"n", s.n}};
  if (s.kind == SamplerKind::polya) j["d"] = s.d;
  return j;
}

}  // namespace

std::vector<VerificationReport> mc_order_check(const SamplerSpec& lower, const SamplerSpec& upper,
                                               std::span<const double> hinge_points,
                                               const McOptions& options) {
  if (!(lower.pop == upper.pop)) throw InvalidInput("order check samplers use different populations");
  if (options.replicates == 0) throw InvalidInput("replicate budget is 0");

  const auto pairs = run_replicates(options.replicates, options.threads, [&](std::uint64_t r) {
    const RngStreamSpec stream = options.stream(r);
    return std::pair{sample_value(lower, stream), sample_value(upper, stream)};
  });
  const auto exact_lower = exact_law_if_cheap(lower);
  const auto exact_upper = exact_law_if_cheap(upper);

  std::vector<VerificationReport> reports;
  std::vector<double> lo(pairs.size()), hi(pairs.size()), diff(pairs.size());
  for (double a : hinge_points) {
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      lo[r] = std::max(pairs[r].first - a, 0.0);
      hi[r] = std::max(pairs[r].second - a, 0.0);
      diff[r] = hi[r] - lo[r];
    }
    const auto ml = moments(lo), mh = moments(hi), md = moments(diff);
    const double half = kSigmaBand * md.standard_error();
    VerificationReport rep;
    rep.check = "hinge_order";
    rep.params = {{"a", a},
                  {"lower", describe(lower)},
                  {"upper", describe(upper)},
                  {"lower_se", ml.standard_error()},
                  {"upper_se", mh.standard_error()}};
    if (exact_lower) rep.params["exact_lower"] = exact_lower->hinge_expectation(a);
    if (exact_upper) rep.params["exact_upper"] = exact_upper->hinge_expectation(a);
    rep.statistic = ml.mean;
    rep.reference = mh.mean;
    rep.ci_halfwidth = half;
    rep.replicates = options.replicates;
    rep.verdict = one_sided_verdict(ml.mean, mh.mean, half);
    rep.seed = options.seed;
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<ConditionalGroup> submartingale_groups(const Population& pop, std::size_t n,
                                                   const McOptions& options) {
  if (options.replicates == 0) throw InvalidInput("replicate budget is 0");
  if (n > pop.size()) throw InvalidInput("n exceeds N");
  struct Draw {
    std::vector<ItemId> set;
    double y;
  };
  const auto draws = run_replicates(options.replicates, options.threads, [&](std::uint64_t r) {
    ScreeningRecord rec = screening_coupling(pop, n, options.stream(r));
    std::sort(rec.i_sample.begin(), rec.i_sample.end());
    return Draw{std::move(rec.i_sample), rec.y};
  });

  std::map<std::vector<ItemId>, std::vector<double>> by_set;
  for (const auto& d : draws) by_set[d.set].push_back(d.y);

  std::vector<ConditionalGroup> groups;
  groups.reserve(by_set.size());
  for (const auto& [set, ys] : by_set) {
    const SampleMoments m = moments(ys);
    ConditionalGroup g;
    g.key = set;
    g.level = cumulative_value(pop, set);
    g.count = m.count;
    g.mean = m.mean;
    g.standard_error = m.standard_error();
    groups.push_back(std::move(g));
  }
  return groups;
}

VerificationReport mc_submartingale_check(const Population& pop, std::size_t n,
                                          const McOptions& options) {
  const auto groups = submartingale_groups(pop, n, options);
  const bool assumption = values_follow_weights(pop);

  WorstCase worst;
  std::uint64_t tested = 0, pooled = 0;
  CompensatedSum x_total, y_total;
  for (const auto& g : groups) {
    x_total.add(g.level * static_cast<double>(g.count));
    y_total.add(g.mean * static_cast<double>(g.count));
    if (g.count < kMinGroupSize) {
      pooled += g.count;
      continue;
    }
    ++tested;
    const double half = kSigmaBand * g.standard_error;
    worst.offer(g.level - g.mean - half, g.level, g.mean, half,
                {{"set", g.key}, {"count", g.count}});
  }

  VerificationReport rep;
  rep.check = "submartingale";
  rep.replicates = options.replicates;
  rep.seed = options.seed;
  const auto reps = static_cast<double>(options.replicates);
  rep.params = {{"N", pop.size()},
                {"n", n},
                {"condition1", assumption},
                {"groups_total", groups.size()},
                {"groups_tested", tested},
                {"pooled_replicates", pooled},
                {"mean_x", x_total.value() / reps},
                {"mean_y", y_total.value() / reps}};
  if (!assumption) rep.params["note"] = "assumption violated, informational";
  if (!worst.any) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  rep.params["worst_group"] = worst.where;
  rep.params["worst_margin"] = worst.margin;
  rep.statistic = worst.statistic;
  rep.reference = worst.reference;
  // Values are sums of the same doubles in different orders.
  rep.ci_halfwidth = worst.ci + 1e-9 * std::max(1.0, std::abs(worst.reference));
  rep.verdict = one_sided_verdict(rep.statistic, rep.reference, rep.ci_halfwidth);
  if (!assumption) rep.verdict = Verdict::inconclusive;
  return rep;
}

namespace {

// Conditional stream given the ordered I-sample: T's from independent
// geometric gaps, fillers i.i.d. from the items already seen, then a fresh
// i.i.d. continuation generated on demand.
class ConditionalStream {
 public:
  ConditionalStream(const Population& pop, std::span<const ItemId> i_sample,
                    const WithReplacementSampler& fresh, Rng& rng)
      : fresh_(fresh), rng_(rng) {
    std::vector<double> cumulative;
    double sigma = 0.0;
    for (std::size_t k = 0; k < i_sample.size(); ++k) {
      if (k > 0) {
        // tau_k ~ Geometric(1 - sigma_{k-1}); tau_k - 1 fillers precede I_k.
        const double u = rng.uniform01_open_low();
        const auto fillers = static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(sigma)));
        for (std::uint64_t f = 0; f < fillers; ++f) {
          const double target = rng.uniform01() * sigma;
          auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
          if (it == cumulative.end()) --it;
          entries_.push_back(i_sample[static_cast<std::size_t>(it - cumulative.begin())]);
        }
      }
      entries_.push_back(i_sample[k]);
      sigma += pop.weight(i_sample[k]);
      cumulative.push_back(sigma);
    }
    prefix_length_ = entries_.size();
  }

  std::size_t prefix_length() const { return prefix_length_; }
  ItemId at(std::size_t index) {
    while (entries_.size() <= index) entries_.push_back(fresh_.draw(rng_));
    return entries_[index];
  }

 private:
  const WithReplacementSampler& fresh_;
  Rng& rng_;
  std::vector<ItemId> entries_;
  std::size_t prefix_length_ = 0;
};

double rescreen(const Population& pop, ConditionalStream& stream, std::size_t n,
                std::size_t position, ItemId replacement, std::vector<char>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  std::size_t distinct = 0;
  double x = 0.0;
  for (std::size_t index = 0; distinct < n; ++index) {
    const ItemId id = index == position ? replacement : stream.at(index);
    if (seen[static_cast<std::size_t>(id)]) continue;
    seen[static_cast<std::size_t>(id)] = 1;
    ++distinct;
    x += pop.value(id);
  }
  return x;
}

}  // namespace

VerificationReport estimate_V(const Population& pop, const ScreeningRecord& record,
                              const McOptions& options) {
  if (options.replicates == 0) throw InvalidInput("inner replicate budget is 0");
  const std::span<const ItemId> i_sample = record.i_sample;
  const std::size_t n = i_sample.size();
  const PopulationStats stats = population_stats(pop);
  const bool uniform = stats.alpha >= 1.0;
  const double v = uniform ? serfling_variance(stats.delta, pop.size(), n)
                           : variance_factor(stats, pop.size(), n);

  VerificationReport rep;
  rep.check = "entropy_V";
  rep.replicates = options.replicates;
  rep.seed = options.seed;
  rep.params = {{"N", pop.size()}, {"n", n}, {"i_sample", record.i_sample}, {"v", v},
                {"v_source", uniform ? "serfling" : "weighted"}};
  rep.reference = v / 2.0;
  if (n == 0) {
    rep.params["ab_reference"] = 0.0;
    rep.params["ab_verdict"] = "pass";
    rep.verdict = Verdict::pass;
    return rep;
  }
  const EntropyDiagnostics diag = entropy_diagnostics(pop, i_sample);
  const double x = cumulative_value(pop, i_sample);
  const WithReplacementSampler fresh(pop);

  const auto sums = run_replicates(options.replicates, options.threads, [&](std::uint64_t r) {
    Rng rng(options.stream(r));
    ConditionalStream stream(pop, i_sample, fresh, rng);
    const std::size_t tn = stream.prefix_length();
    std::vector<ItemId> replacements(tn);
    for (auto& j : replacements) j = fresh.draw(rng);
    std::vector<char> seen(pop.size() + 1, 0);
    double total = 0.0;
    for (std::size_t i = 0; i < tn; ++i) {
      if (replacements[i] == stream.at(i)) continue;
      const double gap = x - rescreen(pop, stream, n, i, replacements[i], seen);
      if (gap > 0.0) total += gap * gap;
    }
    return total;
  });
  const SampleMoments m = moments(sums);
  const double half = kSigmaBand * m.standard_error();
  const double ab = stats.delta * stats.delta * (diag.a_diag + diag.b_diag);

  rep.statistic = m.mean;
  rep.ci_halfwidth = half;
  rep.verdict = one_sided_verdict(m.mean, rep.reference, half);
  rep.params["a_diag"] = diag.a_diag;
  rep.params["b_diag"] = diag.b_diag;
  rep.params["ab_reference"] = ab;
  rep.params["ab_verdict"] = to_string(one_sided_verdict(m.mean, ab, half));
  return rep;
}

std::vector<ConditionalGroup> polya_groups(const Population& pop, int d, int big_d, std::size_t n,
                                           const McOptions& options) {
  if (options.replicates == 0) throw InvalidInput("replicate budget is 0");
  PolyaCouplingOptions quiet;
  quiet.record_steps = false;
  const auto draws = run_replicates(options.replicates, options.threads, [&](std::uint64_t r) {
    UrnTrace trace = polya_coupling(pop, d, big_d, n, options.stream(r), quiet);
    std::sort(trace.k_sample.begin(), trace.k_sample.end());
    return std::pair{cumulative_value(pop, trace.k_sample), trace.z};
  });

  std::vector<std::size_t> order(draws.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return draws[a].first < draws[b].first; });

  std::vector<ConditionalGroup> groups;
  std::vector<double> zs;
  const auto flush = [&](double level) {
    if (zs.empty()) return;
    const SampleMoments m = moments(zs);
    groups.push_back({{}, level, m.count, m.mean, m.standard_error()});
    zs.clear();
  };
  double level = 0.0;
  for (std::size_t idx : order) {
    const double w = draws[idx].first;
    if (!zs.empty() && !points_coincide(level, w)) flush(level);
    if (zs.empty()) level = w;
    zs.push_back(draws[idx].second);
  }
  flush(level);
  return groups;
}

VerificationReport mc_polya_martingale_check(const Population& pop, int d, int big_d,
                                             std::size_t n, const McOptions& options) {
  const auto groups = polya_groups(pop, d, big_d, n, options);
  const double target = static_cast<double>(n) * population_value_sum(pop) /
                        static_cast<double>(pop.size());
  const double slack = 1e-9 * std::max(1.0, std::abs(target));

  WorstCase worst;
  std::uint64_t tested = 0, pooled = 0;
  std::vector<double> ws, zs;
  ws.reserve(options.replicates);
  for (const auto& g : groups) {
    if (g.count < kMinGroupSize) {
      pooled += g.count;
      continue;
    }
    ++tested;
    const double half = kSigmaBand * g.standard_error + slack;
    worst.offer(std::abs(g.mean - g.level) - half, g.mean, g.level, half,
                {{"check", "conditional"}, {"w", g.level}, {"count", g.count}});
  }

  // Unconditional means, recomputed from the grouped draws.
  CompensatedSum w_sum, z_sum;
  for (const auto& g : groups) {
    w_sum.add(g.level * static_cast<double>(g.count));
    z_sum.add(g.mean * static_cast<double>(g.count));
  }
  const auto reps = static_cast<double>(options.replicates);
  const double mean_w = w_sum.value() / reps;
  const double mean_z = z_sum.value() / reps;
  CompensatedSum w_sq, z_sq;
  for (const auto& g : groups) {
    const auto c = static_cast<double>(g.count);
    w_sq.add(c * (g.level - mean_w) * (g.level - mean_w));
    // Within-group variance plus between-group spread.
    const double within = g.standard_error * g.standard_error * c * std::max(c - 1.0, 0.0);
    z_sq.add(within + c * (g.mean - mean_z) * (g.mean - mean_z));
  }
  const double se_w = reps > 1 ? std::sqrt(w_sq.value() / (reps - 1) / reps) : 0.0;
  const double se_z = reps > 1 ? std::sqrt(z_sq.value() / (reps - 1) / reps) : 0.0;
  const double half_w = kSigmaBand * se_w + slack;
  const double half_z = kSigmaBand * se_z + slack;
  worst.offer(std::abs(mean_w - target) - half_w, mean_w, target, half_w, {{"check", "mean_w"}});
  worst.offer(std::abs(mean_z - target) - half_z, mean_z, target, half_z, {{"check", "mean_z"}});

  VerificationReport rep;
  rep.check = "polya_martingale";
  rep.replicates = options.replicates;
  rep.seed = options.seed;
  rep.params = {{"N", pop.size()},     {"n", n},           {"d", d},
                {"D", big_d},          {"levels", groups.size()},
                {"levels_tested", tested}, {"pooled_replicates", pooled},
                {"mean_w", mean_w},    {"mean_z", mean_z}, {"target_mean", target},
                {"worst", worst.where}, {"worst_margin", worst.margin}};
  rep.statistic = worst.statistic;
  rep.reference = worst.reference;
  rep.ci_halfwidth = worst.ci;
  rep.verdict = equality_verdict(rep.statistic, rep.reference, rep.ci_halfwidth);
  return rep;
}

VerificationReport mc_expected_Tn_check(const Population& pop, std::size_t n,
                                        const McOptions& options) {
  if (options.replicates == 0) throw InvalidInput("replicate budget is 0");
  const double exact = exact_expected_Tn(pop, n);
  const auto ts = run_replicates(options.replicates, options.threads, [&](std::uint64_t r) {
    return static_cast<double>(screening_coupling(pop, n, options.stream(r)).stream.size());
  });
  const SampleMoments m = moments(ts);
  VerificationReport rep;
  rep.check = "expected_Tn";
  rep.params = {{"N", pop.size()}, {"n", n}, {"standard_error", m.standard_error()}};
  rep.statistic = m.mean;
  rep.reference = exact;
  rep.ci_halfwidth = kSigmaBand * m.standard_error();
  rep.replicates = options.replicates;
  rep.verdict = equality_verdict(m.mean, exact, rep.ci_halfwidth);
  rep.seed = options.seed;
  return rep;
}

VerificationReport mc_unique_occurrence_check(const Population& pop, std::size_t n,
                                              const McOptions& options) {
  if (options.replicates == 0) throw InvalidInput("replicate budget is 0");
  if (n == 0 || n >= pop.size()) throw InvalidInput("unique-occurrence check needs 1 <= n < N");

  CompensatedSum exact_sum;
  for_each_tuple(pop, n, SampleMode::without_replacement,
                 [&](std::span<const ItemId> tuple, double prob) {
                   exact_sum.add(prob * entropy_diagnostics(pop, tuple).b_diag);
                 });
  const double exact = exact_sum.value();

  const WithReplacementSampler sampler(pop);
  const auto counts = run_replicates(options.replicates, options.threads, [&](std::uint64_t r) {
    Rng rng(options.stream(r));
    // Appearances of each item before the (n+1)-th distinct one.
    std::vector<std::uint64_t> occurrences(pop.size() + 1, 0);
    std::size_t distinct = 0;
    while (true) {
      const ItemId id = sampler.draw(rng);
      auto& c = occurrences[static_cast<std::size_t>(id)];
      if (c == 0) {
        if (distinct == n) break;  // T_{n+1}
        ++distinct;
      }
      ++c;
    }
    double singles = 0.0;
    for (auto c : occurrences)
      if (c == 1) singles += 1.0;
    return singles;
  });
  const SampleMoments m = moments(counts);
  VerificationReport rep;
  rep.check = "unique_occurrences";
  rep.params = {{"N", pop.size()}, {"n", n}, {"standard_error", m.standard_error()}};
  rep.statistic = m.mean;
  rep.reference = exact;
  rep.ci_halfwidth = kSigmaBand * m.standard_error();
  rep.replicates = options.replicates;
  rep.verdict = equality_verdict(m.mean, exact, rep.ci_halfwidth);
  rep.seed = options.seed;
  return rep;
}

}  // namespace drawcouple
