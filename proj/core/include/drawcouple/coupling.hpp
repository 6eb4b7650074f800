#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "drawcouple/population.hpp"
#include "drawcouple/rng.hpp"

namespace drawcouple {

/// One realization of the screening coupling: an i.i.d. weighted stream read
/// until its n-th distinct item, the without-replacement sample it induces,
/// and both cumulative values.
struct ScreeningRecord {
  std::vector<ItemId> stream;              // J_1..J_{T_n}
  std::vector<std::size_t> screen_times;   // T_1..T_n, 1-based
  std::vector<ItemId> i_sample;            // I_k = J_{T_k}
  double x = 0.0;                          // sum of v(I_k)
  double y = 0.0;                          // sum of v(J_k), k <= n
  /// Generator positioned just after J_{T_n}; continues the same stream.
  /// Empty for records screened from a caller-supplied stream.
  std::optional<Rng> continuation;
};

/// Screens a given stream. Throws InvalidInput if it holds fewer than n
/// distinct items or contains unknown ids. Entries past T_n are dropped.
ScreeningRecord screen_stream(const Population& pop, std::span<const ItemId> stream, std::size_t n);

/// Throws InvalidInput if n > N.
ScreeningRecord screening_coupling(const Population& pop, std::size_t n, RngStreamSpec rng);

/// Cumulative value of the first n distinct items of the stream obtained by
/// replacing position `position` (1-based) with `replacement`. Stream entries
/// past the stored prefix come from the record's continuation; a record
/// without one throws InvalidInput if more entries are needed.
double perturbed_value(const ScreeningRecord& record, std::size_t position, ItemId replacement,
                       const Population& pop, std::size_t n);

/// Marks an unlabelled ball in the d-urn.
inline constexpr ItemId kUnlabelled = 0;

struct UrnStep {
  std::size_t position;    // 0-based slot drawn in both urns
  ItemId label_upper;      // label in U_D
  ItemId label_lower;      // label in U_d, or kUnlabelled
  std::size_t size_before; // common urn size before the draw
};

/// Trace of the two-urn martingale coupling.
struct UrnTrace {
  int d = 1;
  int big_d = 2;
  std::vector<UrnStep> steps;
  std::vector<ItemId> k_sample;  // first n labelled draws in U_d
  std::vector<ItemId> l_sample;  // first n draws in U_D
  double w = 0.0;
  double z = 0.0;
  /// Final urns, left to right. Only filled when keep_urns is requested.
  std::vector<ItemId> upper_urn;
  std::vector<ItemId> lower_urn;
};

struct PolyaCouplingOptions {
  bool record_steps = true;
  bool keep_urns = false;
  /// Guard against runs that would take too long (d = 1 needs a number of
  /// steps exponential in n/N).
  std::size_t max_steps = 100'000'000;
};

/// Runs steps until n labelled balls have been drawn in U_d. Throws
/// InvalidInput unless 1 <= d < D and n >= 1.
UrnTrace polya_coupling(const Population& pop, int d, int big_d, std::size_t n, RngStreamSpec rng,
                        const PolyaCouplingOptions& options = {});

}  // namespace drawcouple
