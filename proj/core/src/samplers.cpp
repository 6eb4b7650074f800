#include "drawcouple/samplers.hpp"

#include <limits>

#include "drawcouple/errors.hpp"

namespace drawcouple {

AliasTable::AliasTable(std::span<const double> probs)
    : threshold_(probs.size()), alias_(probs.size()) {
  const std::size_t n = probs.size();
  if (n == 0) throw InvalidInput("alias table needs at least one slot");
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw InvalidInput("alias table too large");

  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = probs[i] * static_cast<double>(n);
    alias_[i] = static_cast<std::uint32_t>(i);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    threshold_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto i : large) threshold_[i] = 1.0;
  for (auto i : small) threshold_[i] = 1.0;
}

std::size_t AliasTable::draw(Rng& rng) const {
  const auto slot = static_cast<std::size_t>(rng.uniform_index(threshold_.size()));
  return rng.uniform01() < threshold_[slot] ? slot : alias_[slot];
}

std::vector<double> AliasTable::implied_probabilities() const {
  const std::size_t n = threshold_.size();
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] += threshold_[i];
    p[alias_[i]] += 1.0 - threshold_[i];
  }
  for (double& x : p) x /= static_cast<double>(n);
  return p;
}

SuccessiveSampler::SuccessiveSampler(const Population& pop)
    : tree_(pop.weights()), remaining_(pop.size()) {}

ItemId SuccessiveSampler::draw(Rng& rng) {
  if (remaining_ == 0) throw InvalidInput("successive sampler exhausted");
  const double target = rng.uniform01() * tree_.total();
  const std::size_t slot = tree_.find(target);
  tree_.set(slot, 0.0);
  --remaining_;
  return static_cast<ItemId>(slot) + 1;
}

namespace {

std::vector<std::uint64_t> ones(std::size_t n) { return std::vector<std::uint64_t>(n, 1); }

}  // namespace

PolyaUrn::PolyaUrn(std::size_t labels, int replacement) : replacement_(replacement) {
  if (replacement < 1) throw InvalidInput("Polya replacement number must be >= 1");
  if (labels == 0) throw InvalidInput("Polya urn needs at least one label");
  const auto init = ones(labels);
  tree_ = SumTree<std::uint64_t>(std::span<const std::uint64_t>(init));
}

ItemId PolyaUrn::draw(Rng& rng) {
  const std::size_t slot = tree_.find(rng.uniform_index(tree_.total()));
  if (replacement_ > 1) tree_.add(slot, static_cast<std::uint64_t>(replacement_ - 1));
  return static_cast<ItemId>(slot) + 1;
}

std::vector<ItemId> draw_with_replacement(const Population& pop, std::size_t n,
                                          RngStreamSpec spec) {
  const WithReplacementSampler sampler(pop);
  Rng rng(spec);
  std::vector<ItemId> out(n);
  for (auto& id : out) id = sampler.draw(rng);
  return out;
}

std::vector<ItemId> draw_without_replacement(const Population& pop, std::size_t n,
                                             RngStreamSpec spec) {
  if (n > pop.size())
    throw InvalidInput("cannot draw " + std::to_string(n) + " items without replacement from " +
                       std::to_string(pop.size()));
  SuccessiveSampler sampler(pop);
  Rng rng(spec);
  std::vector<ItemId> out(n);
  for (auto& id : out) id = sampler.draw(rng);
  return out;
}

std::vector<ItemId> draw_polya(const Population& pop, int d, std::size_t n, RngStreamSpec spec) {
  PolyaUrn urn(pop.size(), d);
  Rng rng(spec);
  std::vector<ItemId> out(n);
  for (auto& id : out) id = urn.draw(rng);
  return out;
}

}  // namespace drawcouple
