#pragma once

#include <cstdint>
#include <vector>

#include "drawcouple/population.hpp"
#include "drawcouple/rng.hpp"
#include "drawcouple/sum_tree.hpp"

namespace drawcouple {

/// Walker/Vose alias table over a probability vector: O(N) build, O(1) draw.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> probs);

  /// Returns a slot in [0, size()).
  std::size_t draw(Rng& rng) const;
  std::size_t size() const { return threshold_.size(); }

  /// Per-slot probability implied by the table; equals the input up to
  /// construction rounding.
  std::vector<double> implied_probabilities() const;

 private:
  std::vector<double> threshold_;
  std::vector<std::uint32_t> alias_;
};

/// I.i.d. draws from the population's weights.
class WithReplacementSampler {
 public:
  explicit WithReplacementSampler(const Population& pop) : table_(pop.weights()) {}

  ItemId draw(Rng& rng) const { return static_cast<ItemId>(table_.draw(rng)) + 1; }
  const AliasTable& table() const { return table_; }

 private:
  AliasTable table_;
};

/// Successive sampling: each draw is proportional to the weights of the items
/// not yet drawn. O(log N) per draw.
class SuccessiveSampler {
 public:
  explicit SuccessiveSampler(const Population& pop);

  /// Throws InvalidInput once every item has been drawn.
  ItemId draw(Rng& rng);
  std::size_t remaining() const { return remaining_; }
  /// Weight of the items still in the pool (normalized units).
  double remaining_mass() const { return tree_.total(); }

 private:
  SumTree<double> tree_;
  std::size_t remaining_;
};

/// Polya urn started with one ball per label 1..N; each drawn label is
/// returned together with d-1 extra copies.
class PolyaUrn {
 public:
  PolyaUrn(std::size_t labels, int replacement);

  ItemId draw(Rng& rng);

  std::uint64_t count(ItemId label) const { return tree_.mass(static_cast<std::size_t>(label - 1)); }
  std::uint64_t total() const { return tree_.total(); }
  int replacement() const { return replacement_; }

 private:
  SumTree<std::uint64_t> tree_;
  int replacement_;
};

std::vector<ItemId> draw_with_replacement(const Population& pop, std::size_t n, RngStreamSpec rng);

/// Throws InvalidInput if n > N.
std::vector<ItemId> draw_without_replacement(const Population& pop, std::size_t n,
                                             RngStreamSpec rng);

/// Population weights are ignored; only the label count N matters. Throws
/// InvalidInput if d < 1.
std::vector<ItemId> draw_polya(const Population& pop, int d, std::size_t n, RngStreamSpec rng);

}  // namespace drawcouple
