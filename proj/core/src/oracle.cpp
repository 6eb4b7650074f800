#include "drawcouple/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drawcouple/compensated_sum.hpp"
#include "drawcouple/errors.hpp"

namespace drawcouple {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

void guard(std::uint64_t tuples, const char* what) {
  if (tuples > kEnumerationLimit)
    throw InstanceTooLarge(std::string(what) + " would enumerate " +
                           (tuples == std::numeric_limits<std::uint64_t>::max()
                                ? std::string("more than 2^64")
                                : std::to_string(tuples)) +
                           " tuples (limit " + std::to_string(kEnumerationLimit) + ")");
}

struct WithoutReplacementWalk {
  const Population& pop;
  std::size_t n;
  const TupleVisitor& visit;
  std::vector<ItemId> tuple;
  std::vector<bool> used;

  void run(double prob) {
    if (tuple.size() == n) {
      visit(tuple, prob);
      return;
    }
    // Summed directly rather than 1 - drawn, so the last item left gets
    // conditional probability exactly 1.
    double remaining = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i)
      if (!used[i]) remaining += pop.weights()[i];
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (used[i]) continue;
      const auto id = static_cast<ItemId>(i + 1);
      const double w = pop.weight(id);
      used[i] = true;
      tuple.push_back(id);
      run(prob * (w / remaining));
      tuple.pop_back();
      used[i] = false;
    }
  }
};

struct WithReplacementWalk {
  const Population& pop;
  std::size_t n;
  const TupleVisitor& visit;
  std::vector<ItemId> tuple;

  void run(double prob) {
    if (tuple.size() == n) {
      visit(tuple, prob);
      return;
    }
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const auto id = static_cast<ItemId>(i + 1);
      tuple.push_back(id);
      run(prob * pop.weight(id));
      tuple.pop_back();
    }
  }
};

struct PolyaWalk {
  std::size_t labels;
  int d;
  std::size_t n;
  const TupleVisitor& visit;
  std::vector<ItemId> tuple;
  std::vector<std::uint64_t> drawn;

  void run(double prob) {
    const std::size_t t = tuple.size();
    if (t == n) {
      visit(tuple, prob);
      return;
    }
    const double total = static_cast<double>(labels) + static_cast<double>(t) * (d - 1);
    for (std::size_t i = 0; i < labels; ++i) {
      const double balls = 1.0 + static_cast<double>(drawn[i]) * (d - 1);
      ++drawn[i];
      tuple.push_back(static_cast<ItemId>(i + 1));
      run(prob * (balls / total));
      tuple.pop_back();
      --drawn[i];
    }
  }
};

FiniteDistribution value_law(const Population& pop, const auto& enumerate) {
  std::vector<Atom> atoms;
  enumerate([&](std::span<const ItemId> tuple, double prob) {
    double value = 0.0;
    for (ItemId id : tuple) value += pop.value(id);
    atoms.push_back({value, prob});
  });
  return FiniteDistribution::from_atoms(std::move(atoms));
}

}  // namespace

std::uint64_t count_tuples(std::size_t labels, std::size_t n, SampleMode mode) {
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (mode == SampleMode::without_replacement) {
      if (k >= labels) return 0;
      count = saturating_mul(count, labels - k);
    } else {
      count = saturating_mul(count, labels);
    }
  }
  return count;
}

void for_each_tuple(const Population& pop, std::size_t n, SampleMode mode,
                    const TupleVisitor& visit) {
  if (mode == SampleMode::without_replacement) {
    if (n > pop.size()) throw InvalidInput("n exceeds N for sampling without replacement");
    guard(count_tuples(pop.size(), n, mode), "without-replacement law");
    WithoutReplacementWalk walk{pop, n, visit, {}, std::vector<bool>(pop.size(), false)};
    walk.tuple.reserve(n);
    walk.run(1.0);
  } else {
    guard(count_tuples(pop.size(), n, mode), "with-replacement law");
    WithReplacementWalk walk{pop, n, visit, {}};
    walk.tuple.reserve(n);
    walk.run(1.0);
  }
}

void for_each_polya_tuple(const Population& pop, int d, std::size_t n, const TupleVisitor& visit) {
  if (d < 1) throw InvalidInput("Polya replacement number must be >= 1");
  guard(count_tuples(pop.size(), n, SampleMode::with_replacement), "Polya law");
  PolyaWalk walk{pop.size(), d, n, visit, {}, std::vector<std::uint64_t>(pop.size(), 0)};
  walk.tuple.reserve(n);
  walk.run(1.0);
}

std::map<std::vector<ItemId>, double> exact_tuple_law(const Population& pop, std::size_t n,
                                                      SampleMode mode) {
  std::map<std::vector<ItemId>, double> law;
  for_each_tuple(pop, n, mode, [&](std::span<const ItemId> t, double p) {
    law.emplace(std::vector<ItemId>(t.begin(), t.end()), p);
  });
  return law;
}

std::map<std::vector<ItemId>, double> exact_polya_tuple_law(const Population& pop, int d,
                                                            std::size_t n) {
  std::map<std::vector<ItemId>, double> law;
  for_each_polya_tuple(pop, d, n, [&](std::span<const ItemId> t, double p) {
    law.emplace(std::vector<ItemId>(t.begin(), t.end()), p);
  });
  return law;
}

FiniteDistribution exact_sample_dist(const Population& pop, std::size_t n, SampleMode mode) {
  return value_law(pop, [&](const TupleVisitor& v) { for_each_tuple(pop, n, mode, v); });
}

FiniteDistribution exact_polya_dist(const Population& pop, int d, std::size_t n) {
  return value_law(pop, [&](const TupleVisitor& v) { for_each_polya_tuple(pop, d, n, v); });
}

OrderCheckResult icx_dominates(const FiniteDistribution& lower, const FiniteDistribution& upper,
                               double tol) {
  // E[(X - a)_+] is piecewise linear in a with kinks only at support points,
  // and both sides are linear with slope -1 below the joint minimum.
  std::vector<double> thresholds;
  thresholds.reserve(lower.size() + upper.size() + 1);
  for (const Atom& a : lower.atoms()) thresholds.push_back(a.point);
  for (const Atom& a : upper.atoms()) thresholds.push_back(a.point);
  std::sort(thresholds.begin(), thresholds.end());
  // Tested last so a witness is reported at a support point when one exists.
  const double floor = std::min(lower.min_point(), upper.min_point());
  thresholds.push_back(floor - std::max(1.0, std::abs(floor)));

  OrderCheckResult result;
  result.worst_gap = -std::numeric_limits<double>::infinity();
  for (double a : thresholds) {
    const double lhs = lower.hinge_expectation(a);
    const double rhs = upper.hinge_expectation(a);
    const double gap = lhs - rhs;
    if (gap > result.worst_gap) result.worst_gap = gap;
    if (result.holds && gap > tol) {
      result.holds = false;
      result.witness = OrderWitness{a, lhs, rhs};
    }
  }
  return result;
}

OrderCheckResult cx_dominates(const FiniteDistribution& lower, const FiniteDistribution& upper,
                              double tol) {
  const double lm = lower.mean();
  const double um = upper.mean();
  OrderCheckResult result = icx_dominates(lower, upper, tol);
  if (std::abs(lm - um) > tol) {
    result.worst_gap = std::max(result.worst_gap, std::abs(lm - um));
    if (result.holds) {
      // icx already covers lm > um (threshold below both supports), so the
      // lower mean is too small. Witness with the decreasing hinge (b - x)_+.
      result.holds = false;
      const double b = std::max(lower.max_point(), upper.max_point()) + 1.0;
      result.witness = OrderWitness{b, b - lm, b - um};
    }
  }
  return result;
}

FirstDrawConditional conditional_first_draw_given_set(const Population& pop,
                                                      std::span<const ItemId> item_set) {
  const std::size_t n = item_set.size();
  if (n == 0 || n > pop.size()) throw InvalidInput("item set size must be in 1..N");
  std::vector<ItemId> items(item_set.begin(), item_set.end());
  std::sort(items.begin(), items.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (!pop.contains(items[i])) throw InvalidInput("unknown item id " + std::to_string(items[i]));
    if (i > 0 && items[i] == items[i - 1])
      throw InvalidInput("duplicate item id " + std::to_string(items[i]));
  }
  std::uint64_t perms = 1;
  for (std::size_t k = 2; k <= n; ++k) perms = saturating_mul(perms, k);
  guard(perms, "permutation sum");

  std::map<ItemId, CompensatedSum> first_mass;
  CompensatedSum total;
  do {
    double p = 1.0;
    double drawn = 0.0;
    for (ItemId id : items) {
      const double w = pop.weight(id);
      p *= w / (1.0 - drawn);
      drawn += w;
    }
    first_mass[items.front()].add(p);
    total.add(p);
  } while (std::next_permutation(items.begin(), items.end()));

  FirstDrawConditional out;
  out.set_probability = total.value();
  for (auto& [id, mass] : first_mass) {
    out.probs[id] = mass.value() / out.set_probability;
    out.cond_mean += out.probs[id] * pop.value(id);
  }
  return out;
}

double exact_expected_Tn(const Population& pop, std::size_t n) {
  CompensatedSum expectation;
  for_each_tuple(pop, n, SampleMode::without_replacement,
                 [&](std::span<const ItemId> tuple, double prob) {
                   double t = 0.0;
                   double sigma = 0.0;
                   for (ItemId id : tuple) {
                     t += 1.0 / (1.0 - sigma);
                     sigma += pop.weight(id);
                   }
                   expectation.add(prob * t);
                 });
  return expectation.value();
}

}  // namespace drawcouple
