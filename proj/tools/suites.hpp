#pragma once

#include <optional>
#include <vector>

#include "drawcouple/harness.hpp"
#include "drawcouple/population.hpp"

namespace drawcouple::cli {

enum class Grid { small, full };

// Pre-registered verification grids behind `drawcouple verify`.

/// Exact increasing-convex checks and first-draw identities over every
/// population with weights in {1,2,3}^N, N = 2..5 (N = 2..4 on the small grid),
/// values 0..N-1 handed out by weight rank. When seeded, adds the Monte Carlo
/// submartingale and hinge-order checks.
std::vector<VerificationReport> verify_order_suite(Grid grid, double tol,
                                                const std::optional<McOptions>& mc);

/// Exact convex-order checks for Polya samples, N = 2..4, n = 1..4,
/// 1 <= d < D <= 4, plus Monte Carlo martingale checks when seeded.
std::vector<VerificationReport> verify_polya_suite(Grid grid, double tol,
                                                const std::optional<McOptions>& mc);

/// Monte Carlo tail checks. With a population, runs it at n and t values;
/// otherwise the pre-registered populations.
struct TailSuiteInput {
  std::optional<Population> pop;
  std::optional<std::size_t> n;
  std::vector<double> t_values;
};
std::vector<VerificationReport> verify_tail_suite(Grid grid, const TailSuiteInput& input,
                                                const McOptions& mc);

/// E[T_n], unique-occurrence and V checks on the given population (P2 with
/// n = 2 and I = (3, 2) by default).
std::vector<VerificationReport> verify_diagnostics(const std::optional<Population>& pop,
                                                   std::optional<std::size_t> n,
                                                   const McOptions& mc);

/// Geometric weights with min/max ratio 1/2, values 1, 2, 3 by weight tercile.
Population geometric_tercile_population(std::size_t size);
/// Same values on uniform weights.
Population uniform_tercile_population(std::size_t size);

/// Every weight vector in {1,2,3}^N with rank-ordered values.
std::vector<Population> ranked_weight_grid(std::size_t size);

}  // namespace drawcouple::cli
