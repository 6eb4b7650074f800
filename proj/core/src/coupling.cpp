#include "drawcouple/coupling.hpp"

#include <string>

#include "drawcouple/errors.hpp"
#include "drawcouple/samplers.hpp"

namespace drawcouple {

namespace {

void check_screen_count(const Population& pop, std::size_t n) {
  if (n > pop.size())
    throw InvalidInput("screening needs n <= N (n=" + std::to_string(n) +
                       ", N=" + std::to_string(pop.size()) + ")");
}

// Tracks first occurrences while a stream is read.
class Screener {
 public:
  Screener(const Population& pop, std::size_t n) : pop_(pop), n_(n), seen_(pop.size() + 1, false) {}

  bool done() const { return times_.size() == n_; }

  void push(ItemId id, std::size_t position) {
    if (!pop_.contains(id)) throw InvalidInput("unknown item id " + std::to_string(id));
    if (seen_[static_cast<std::size_t>(id)]) return;
    seen_[static_cast<std::size_t>(id)] = true;
    times_.push_back(position);
    items_.push_back(id);
    x_ += pop_.value(id);
  }

  std::vector<std::size_t>& times() { return times_; }
  std::vector<ItemId>& items() { return items_; }
  double x() const { return x_; }

 private:
  const Population& pop_;
  std::size_t n_;
  std::vector<bool> seen_;
  std::vector<std::size_t> times_;
  std::vector<ItemId> items_;
  double x_ = 0.0;
};

ScreeningRecord finish(const Population& pop, Screener& screener, std::vector<ItemId> stream,
                       std::size_t n) {
  ScreeningRecord record;
  record.stream = std::move(stream);
  record.screen_times = std::move(screener.times());
  record.i_sample = std::move(screener.items());
  record.x = screener.x();
  record.y = cumulative_value(pop, std::span<const ItemId>(record.stream).first(n));
  return record;
}

}  // namespace

ScreeningRecord screen_stream(const Population& pop, std::span<const ItemId> stream,
                              std::size_t n) {
  check_screen_count(pop, n);
  Screener screener(pop, n);
  std::size_t length = 0;
  while (!screener.done()) {
    if (length == stream.size())
      throw InvalidInput("stream has fewer than " + std::to_string(n) + " distinct items");
    screener.push(stream[length], length + 1);
    ++length;
  }
  return finish(pop, screener, std::vector<ItemId>(stream.begin(), stream.begin() + length), n);
}

ScreeningRecord screening_coupling(const Population& pop, std::size_t n, RngStreamSpec spec) {
  check_screen_count(pop, n);
  const WithReplacementSampler sampler(pop);
  Rng rng(spec);
  Screener screener(pop, n);
  std::vector<ItemId> stream;
  while (!screener.done()) {
    stream.push_back(sampler.draw(rng));
    screener.push(stream.back(), stream.size());
  }
  auto record = finish(pop, screener, std::move(stream), n);
  record.continuation = rng;
  return record;
}

double perturbed_value(const ScreeningRecord& record, std::size_t position, ItemId replacement,
                       const Population& pop, std::size_t n) {
  if (position < 1 || position > record.stream.size())
    throw InvalidInput("perturbed position " + std::to_string(position) + " outside 1.." +
                       std::to_string(record.stream.size()));
  if (!pop.contains(replacement))
    throw InvalidInput("unknown item id " + std::to_string(replacement));
  check_screen_count(pop, n);

  Screener screener(pop, n);
  std::size_t index = 0;
  for (; index < record.stream.size() && !screener.done(); ++index) {
    const ItemId id = index + 1 == position ? replacement : record.stream[index];
    screener.push(id, index + 1);
  }
  if (!screener.done()) {
    if (!record.continuation)
      throw InvalidInput("re-screening needs entries beyond the stored stream prefix");
    Rng rng = *record.continuation;
    const WithReplacementSampler sampler(pop);
    while (!screener.done()) screener.push(sampler.draw(rng), ++index);
  }
  return screener.x();
}

UrnTrace polya_coupling(const Population& pop, int d, int big_d, std::size_t n,
                        RngStreamSpec spec, const PolyaCouplingOptions& options) {
  if (d < 1 || big_d <= d) throw InvalidInput("Polya coupling needs 1 <= d < D");
  if (n < 1) throw InvalidInput("Polya coupling needs n >= 1");

  const std::size_t labels = pop.size();
  std::vector<ItemId> upper(labels), lower(labels);
  for (std::size_t i = 0; i < labels; ++i) upper[i] = lower[i] = static_cast<ItemId>(i + 1);

  UrnTrace trace;
  trace.d = d;
  trace.big_d = big_d;
  trace.k_sample.reserve(n);
  trace.l_sample.reserve(n);
  Rng rng(spec);

  const auto copies_upper = static_cast<std::size_t>(big_d - 1);
  const auto copies_lower = static_cast<std::size_t>(d - 1);
  const auto unlabelled_lower = static_cast<std::size_t>(big_d - d);

  std::size_t steps = 0;
  while (trace.k_sample.size() < n) {
    if (++steps > options.max_steps)
      throw InvalidInput("Polya coupling exceeded " + std::to_string(options.max_steps) +
                         " steps");
    const std::size_t size = upper.size();
    const auto pos = static_cast<std::size_t>(rng.uniform_index(size));
    const ItemId label = upper[pos];
    const ItemId below = lower[pos];
    if (options.record_steps) trace.steps.push_back({pos, label, below, size});
    if (trace.l_sample.size() < n) trace.l_sample.push_back(label);

    upper.insert(upper.end(), copies_upper, label);
    if (below == kUnlabelled) {
      lower.insert(lower.end(), copies_upper, kUnlabelled);
    } else {
      // Labelled balls in U_d always sit under a ball of the same label.
      trace.k_sample.push_back(below);
      lower.insert(lower.end(), copies_lower, below);
      lower.insert(lower.end(), unlabelled_lower, kUnlabelled);
    }
  }
  trace.w = cumulative_value(pop, trace.k_sample);
  trace.z = cumulative_value(pop, trace.l_sample);
  if (options.keep_urns) {
    trace.upper_urn = std::move(upper);
    trace.lower_urn = std::move(lower);
  }
  return trace;
}

}  // namespace drawcouple
