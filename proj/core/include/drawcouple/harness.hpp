#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "drawcouple/compensated_sum.hpp"
#include "drawcouple/coupling.hpp"
#include "drawcouple/population.hpp"
#include "drawcouple/rng.hpp"

namespace drawcouple {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

struct VerificationReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  double statistic = 0.0;
  double reference = 0.0;
  double ci_halfwidth = 0.0;
  std::uint64_t replicates = 0;
  Verdict verdict = Verdict::inconclusive;
  /// Absent for exact (enumeration) checks.
  std::optional<RngStreamSpec> seed;
};

/// pass iff statistic <= reference + ci.
Verdict one_sided_verdict(double statistic, double reference, double ci);
/// pass iff |statistic - reference| <= ci.
Verdict equality_verdict(double statistic, double reference, double ci);

/// Replicate r uses stream (seed.master_seed, seed.stream_index + r). The
/// thread count never changes any result.
struct McOptions {
  std::uint64_t replicates = 100'000;
  RngStreamSpec seed{};
  unsigned threads = 1;

  RngStreamSpec stream(std::uint64_t replicate) const {
    return {seed.master_seed, seed.stream_index + replicate};
  }
};

/// Width multiplier for every confidence band.
inline constexpr double kSigmaBand = 3.0;
/// Conditional checks need this many observations in a group.
inline constexpr std::uint64_t kMinGroupSize = 30;

/// Mean and standard error from per-replicate values, reduced in index order.
struct SampleMoments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 when count < 2
  double standard_error() const;
};
SampleMoments moments(std::span<const double> xs);

/// Evaluates fn(r) for r in [0, count) on `threads` workers; result order
/// is by r regardless of scheduling.
template <typename Fn>
auto run_replicates(std::uint64_t count, unsigned threads, Fn&& fn) {
  using Result = decltype(fn(std::uint64_t{0}));
  std::vector<Result> results(count);
  if (threads <= 1 || count < 2) {
    for (std::uint64_t r = 0; r < count; ++r) results[r] = fn(r);
    return results;
  }
  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t r = w; r < count; r += workers) results[r] = fn(r);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of observed counts against exact probabilities.
/// Categories with zero probability must have zero counts (else p = 0).
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probs);

/// Chi-square of observed tuples against an exact tuple law.
ChiSquareResult tuple_gof(const std::map<std::vector<ItemId>, double>& law,
                          std::span<const std::vector<ItemId>> observed);

// ---------------------------------------------------------------------------
// Monte Carlo checks

/// Both tails of X - mean(X) against the sub-Gaussian bound, one report per
/// (t, side). Uses the Serfling factor when all weights are equal. Throws
/// InvalidInput if replicates < 1000 or n > N.
std::vector<VerificationReport> mc_tail_check(const Population& pop, std::size_t n,
                                              std::span<const double> t_values,
                                              const McOptions& options);

enum class SamplerKind { with_replacement, without_replacement, polya };

struct SamplerSpec {
  Population pop;
  SamplerKind kind = SamplerKind::without_replacement;
  std::size_t n = 0;
  int d = 1;  // Polya only
};

/// Draws one cumulative value from the spec's sampler.
double sample_value(const SamplerSpec& spec, RngStreamSpec rng);

/// Paired hinge comparison E[(lower - a)_+] <= E[(upper - a)_+] for every a.
/// Replicate r feeds the same stream to both samplers.
std::vector<VerificationReport> mc_order_check(const SamplerSpec& lower, const SamplerSpec& upper,
                                               std::span<const double> hinge_points,
                                               const McOptions& options);

struct ConditionalGroup {
  std::vector<ItemId> key;  // sorted item set, or sorted multiset for Polya
  double level = 0.0;       // X(set) or W
  std::uint64_t count = 0;
  double mean = 0.0;        // conditional mean of Y (or Z)
  double standard_error = 0.0;
};

/// Screening-coupling replicates grouped by unordered I-set.
std::vector<ConditionalGroup> submartingale_groups(const Population& pop, std::size_t n,
                                                   const McOptions& options);

/// X(set) <= E[Y | set] within 3 SE for every set seen >= 30 times.
VerificationReport mc_submartingale_check(const Population& pop, std::size_t n,
                                          const McOptions& options);

/// Monte Carlo estimate of V = E[sum_i (X - X^i)_+^2 | I] for the record's
/// I-sample; compared with v/2 and, in params, with D^2 (A + B).
VerificationReport estimate_V(const Population& pop, const ScreeningRecord& record,
                              const McOptions& options);

/// Polya-coupling replicates grouped by W level.
std::vector<ConditionalGroup> polya_groups(const Population& pop, int d, int big_d, std::size_t n,
                                           const McOptions& options);

/// E[Z | W] = W within 3 SE per level, plus E[Z] = E[W] = n * sum(v) / N.
VerificationReport mc_polya_martingale_check(const Population& pop, int d, int big_d,
                                             std::size_t n, const McOptions& options);

/// Mean of T_n over screening couplings against the exact E[T_n].
VerificationReport mc_expected_Tn_check(const Population& pop, std::size_t n,
                                        const McOptions& options);

/// Sum over k of P(I_k occurs exactly once before T_{n+1}) against the exact
/// mean of the closed-form B. Requires n < N.
VerificationReport mc_unique_occurrence_check(const Population& pop, std::size_t n,
                                              const McOptions& options);

}  // namespace drawcouple
