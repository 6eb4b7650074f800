#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace drawcouple {

/// Identifies one pseudo-random stream. Distinct stream indices under the
/// same master seed are statistically independent streams.
struct RngStreamSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const RngStreamSpec&, const RngStreamSpec&) = default;
};

/// Philox4x32-10 in counter mode. The key is the master seed; the upper half
/// of the counter is the stream index and the lower half counts blocks, so a
/// stream never overlaps another one and any stream is addressable in O(1).
///
/// Models UniformRandomBitGenerator, but callers inside the library use
/// uniform01()/uniform_index() so results do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngStreamSpec spec);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on (0, 1].
  double uniform01_open_low();
  /// Uniform on {0, ..., bound-1}; bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  const RngStreamSpec& spec() const { return spec_; }
  /// One Philox4x32-10 block; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> counter,
                                                   std::array<std::uint32_t, 2> key);

 private:
  void refill();

  RngStreamSpec spec_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned used_ = 2;
};

}  // namespace drawcouple
