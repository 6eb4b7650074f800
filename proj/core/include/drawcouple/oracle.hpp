#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "drawcouple/distribution.hpp"
#include "drawcouple/population.hpp"

namespace drawcouple {

// Exact, enumeration-based laws for small instances. Every enumeration is
// capped at kEnumerationLimit tuples and throws InstanceTooLarge beyond it.

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

enum class SampleMode { with_replacement, without_replacement };

/// Number of ordered tuples an enumeration would visit, saturating at
/// UINT64_MAX.
std::uint64_t count_tuples(std::size_t labels, std::size_t n, SampleMode mode);

using TupleVisitor = std::function<void(std::span<const ItemId> tuple, double prob)>;

/// Visits every ordered sample of length n with its exact probability:
/// the successive-sampling product law or the i.i.d. product law.
void for_each_tuple(const Population& pop, std::size_t n, SampleMode mode,
                    const TupleVisitor& visit);

/// Visits every label sequence of a d-Polya sample with its probability.
void for_each_polya_tuple(const Population& pop, int d, std::size_t n, const TupleVisitor& visit);

/// Ordered-tuple law as a map (for goodness-of-fit tests).
std::map<std::vector<ItemId>, double> exact_tuple_law(const Population& pop, std::size_t n,
                                                      SampleMode mode);
std::map<std::vector<ItemId>, double> exact_polya_tuple_law(const Population& pop, int d,
                                                            std::size_t n);

/// Law of the cumulative value of a weighted sample (X without, Y with).
FiniteDistribution exact_sample_dist(const Population& pop, std::size_t n, SampleMode mode);

/// Law of the cumulative value of a d-Polya sample.
FiniteDistribution exact_polya_dist(const Population& pop, int d, std::size_t n);

/// A threshold where the hinge expectation of the lower law exceeds the
/// upper one. For a convex-order failure caused by lower's mean being too
/// small the hinge is (threshold - x)_+ instead of (x - threshold)_+.
struct OrderWitness {
  double threshold;
  double lhs;
  double rhs;
};

struct OrderCheckResult {
  bool holds = true;
  std::optional<OrderWitness> witness;
  /// Largest lhs - rhs over the tested thresholds (or the mean gap for a
  /// failed convex-order mean test).
  double worst_gap = 0.0;
};

/// lower <=_icx upper, tested on hinge functions (x - a)_+ at every support
/// point of either law and one point below both.
OrderCheckResult icx_dominates(const FiniteDistribution& lower, const FiniteDistribution& upper,
                               double tol);

/// lower <=_cx upper: equal means (within tol) and icx dominance.
OrderCheckResult cx_dominates(const FiniteDistribution& lower, const FiniteDistribution& upper,
                              double tol);

struct FirstDrawConditional {
  std::map<ItemId, double> probs;  // P(J_1 = i | {I_1..I_n} = set)
  double cond_mean = 0.0;          // E[v(J_1) | set]
  double set_probability = 0.0;    // P({I_1..I_n} = set)
};

/// Sums the product law over all orderings of the set. Throws InvalidInput
/// on duplicates/unknown ids or a set larger than N.
FirstDrawConditional conditional_first_draw_given_set(const Population& pop,
                                                      std::span<const ItemId> item_set);

/// E[T_n] for the screening coupling, averaging sum_k 1/(1 - sigma_{k-1})
/// over the exact law of (I_1..I_n).
double exact_expected_Tn(const Population& pop, std::size_t n);

}  // namespace drawcouple
