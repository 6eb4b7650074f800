#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "drawcouple/population.hpp"
#include "drawcouple/rng.hpp"

namespace drawcouple::testing {

// w = (0.3, 0.7), v = (0, 1)
inline Population p1() { return Population({0.3, 0.7}, {0.0, 1.0}); }

// w = (0.2, 0.3, 0.5), v = (1, 2, 3)
inline Population p2() { return Population({0.2, 0.3, 0.5}, {1.0, 2.0, 3.0}); }

inline Population uniform(std::size_t n, std::vector<double> values) {
  return Population(std::vector<double>(n, 1.0), std::move(values));
}

inline std::vector<double> iota_values(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  return v;
}

/// Random population for property tests: weights in [0.05, 1), values in
/// [-5, 5).
inline Population random_population(Rng& rng, std::size_t n) {
  std::vector<double> w(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.05 + 0.95 * rng.uniform01();
    v[i] = std::floor(rng.uniform01() * 10.0) - 5.0;
  }
  return Population(std::move(w), std::move(v));
}

/// Random population satisfying "heavier implies at least as valuable":
/// sorted random values handed out by weight rank.
inline Population random_monotone_population(Rng& rng, std::size_t n) {
  std::vector<double> w(n), sorted(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 1.0 + std::floor(rng.uniform01() * 4.0);
    sorted[i] = std::floor(rng.uniform01() * 10.0);
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rank = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] < w[i] || (w[j] == w[i] && j < i)) ++rank;
    v[i] = sorted[rank];
  }
  return Population(std::move(w), std::move(v));
}

/// Values 0..N-1 handed out by weight rank (ties broken by id), so heavier
/// items are never less valuable.
inline Population ranked_population(const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rank = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (weights[j] < weights[i] || (weights[j] == weights[i] && j < i)) ++rank;
    v[i] = static_cast<double>(rank);
  }
  return Population(weights, std::move(v));
}

/// Every weight vector in {1,2,3}^N, as ranked populations.
inline std::vector<Population> weight_grid(std::size_t n) {
  std::vector<Population> out;
  std::vector<double> w(n, 1.0);
  while (true) {
    out.push_back(ranked_population(w));
    std::size_t k = 0;
    while (k < n && w[k] == 3.0) w[k++] = 1.0;
    if (k == n) break;
    w[k] += 1.0;
  }
  return out;
}

}  // namespace drawcouple::testing
