#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drawcouple {

/// Item identifier, 1-based. Valid ids of a population are exactly 1..N.
using ItemId = int;

struct Item {
  ItemId id;
  double weight;
  double value;
};

/// A finite population of weighted, valued items.
///
/// Weights are normalized to sum to one on construction; the sum of the raw
/// weights is kept in raw_weight_sum() for reporting. Immutable after
/// construction.
class Population {
 public:
  /// weights[i] and values[i] belong to item i+1. Throws InvalidInput on an
  /// empty population, a non-positive or non-finite weight, or a non-finite
  /// value.
  Population(std::vector<double> weights, std::vector<double> values);

  /// Items in any order; ids must be exactly {1..N}.
  static Population from_items(std::span<const Item> items);

  std::size_t size() const { return weights_.size(); }

  double weight(ItemId id) const { return weights_[index_of(id)]; }
  double value(ItemId id) const { return values_[index_of(id)]; }

  /// Normalized weights/values indexed by id-1.
  std::span<const double> weights() const { return weights_; }
  std::span<const double> values() const { return values_; }

  double raw_weight_sum() const { return raw_weight_sum_; }

  bool contains(ItemId id) const { return id >= 1 && static_cast<std::size_t>(id) <= size(); }

  friend bool operator==(const Population&, const Population&) = default;

 private:
  std::size_t index_of(ItemId id) const { return static_cast<std::size_t>(id - 1); }

  std::vector<double> weights_;
  std::vector<double> values_;
  double raw_weight_sum_ = 1.0;
};

struct PopulationStats {
  double delta = 0.0;       // max value - min value
  double alpha = 1.0;       // min weight / max weight
  double mean_value = 0.0;  // sum_i w(i) v(i)
};

PopulationStats population_stats(const Population& pop);

/// Sum of values over the sample; repeats allowed. Throws InvalidInput on an
/// unknown id.
double cumulative_value(const Population& pop, std::span<const ItemId> sample);

/// True when w(i) > w(j) implies v(i) >= v(j) for all pairs.
bool values_follow_weights(const Population& pop);

/// Parse `id,weight,value` CSV.
Population parse_population_csv(std::string_view text);
/// Parse a JSON array of {"id","weight","value"} objects.
Population parse_population_json(std::string_view text);
/// Dispatches on the first non-blank character: '[' means JSON, else CSV.
Population load_population(std::string_view source);
/// Reads a file and calls load_population.
Population load_population_file(const std::string& path);

}  // namespace drawcouple
