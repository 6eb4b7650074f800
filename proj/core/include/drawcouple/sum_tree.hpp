#pragma once

#include <cassert>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

namespace drawcouple {

/// Complete binary tree of partial sums over a fixed number of slots.
///
/// Internal nodes are always recomputed as left + right, so a slot set to
/// zero contributes exactly zero and repeated updates do not drift. find()
/// never returns a zero-mass slot while the total is positive.
template <typename T>
class SumTree {
 public:
  SumTree() = default;

  explicit SumTree(std::span<const T> masses) {
    leaves_ = 1;
    while (leaves_ < masses.size()) leaves_ *= 2;
    size_ = masses.size();
    nodes_.assign(2 * leaves_, T{});
    for (std::size_t i = 0; i < masses.size(); ++i) nodes_[leaves_ + i] = masses[i];
    for (std::size_t node = leaves_ - 1; node >= 1; --node)
      nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
  }

  std::size_t size() const { return size_; }
  T total() const { return nodes_.empty() ? T{} : nodes_[1]; }
  T mass(std::size_t slot) const { return nodes_[leaves_ + slot]; }

  void set(std::size_t slot, T mass) {
    assert(slot < size_);
    std::size_t node = leaves_ + slot;
    nodes_[node] = mass;
    for (node /= 2; node >= 1; node /= 2) nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
  }

  void add(std::size_t slot, T delta) { set(slot, mass(slot) + delta); }

  /// Slot s such that the cumulative mass before s is <= target and the
  /// cumulative mass through s is > target; target in [0, total()).
  std::size_t find(T target) const {
    assert(total() > T{});
    std::size_t node = 1;
    while (node < leaves_) {
      const std::size_t left = 2 * node;
      const T left_mass = nodes_[left];
      if (target < left_mass) {
        node = left;
      } else if (nodes_[left + 1] > T{}) {
        target -= left_mass;
        node = left + 1;
      } else {
        // Rounding pushed target past the last positive mass on this side.
        node = left;
        target = left_mass;
        if (target > T{}) target = prev_below(target);
      }
    }
    return node - leaves_;
  }

 private:
  static T prev_below(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      return x * (1 - std::numeric_limits<T>::epsilon());
    } else {
      return x - 1;
    }
  }

  std::size_t leaves_ = 0;
  std::size_t size_ = 0;
  std::vector<T> nodes_;
};

}  // namespace drawcouple
