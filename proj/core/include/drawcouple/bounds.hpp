#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "drawcouple/population.hpp"

namespace drawcouple {

/// Sub-Gaussian variance factor for the without-replacement sum X when
/// weights are not all equal:
///
///   v = min(4 D^2 n, (1 + 4a) / (a (1 - a)) * D^2 * N * ((N - n) / N)^a)
///
/// with D the value range and a the min/max weight ratio. Returns 0 when
/// D = 0. Throws InvalidInput when a = 1 (use serfling_variance) or n > N.
double variance_factor(const PopulationStats& stats, std::size_t population_size, std::size_t n);

/// Serfling's factor for uniform weights: D^2 n (N - n + 1) / (4N).
double serfling_variance(double delta, std::size_t population_size, std::size_t n);

/// exp(-t^2 / (2v)). v = 0 gives 0, v = +inf gives 1. Throws on t <= 0.
double subgaussian_tail_bound(double v, double t);

struct ChernoffBound {
  double bound;
  /// Minimizing theta; +inf when the infimum is only approached as
  /// theta -> inf (a >= n * max value).
  double theta_star;
};

/// inf_{theta >= 0} exp(n L(theta) - theta a), L the log-Laplace transform of
/// one weighted draw's value. Throws InvalidInput if n = 0.
ChernoffBound chernoff_upper_bound(const Population& pop, std::size_t n, double a);

/// Log-Laplace transform ln E[exp(theta v(J_1))], computed with a max shift.
double log_laplace(const Population& pop, double theta);

/// Total-variation distance between the next without-replacement draw after
/// `drawn` and a fresh weighted draw: the drawn weight. Throws InvalidInput
/// on duplicate or unknown ids.
double tv_next_draw(const Population& pop, std::span<const ItemId> drawn);

struct EntropyDiagnostics {
  std::vector<double> sigma;  // cumulative sampled weight sigma_1..sigma_n
  double expected_Tn_given_I = 0.0;
  double a_diag = 0.0;  // (1 - sigma_n) E[T_n | I]
  double b_diag = 0.0;  // expected number of sampled items seen once before T_{n+1}
};

/// Closed forms given the ordered without-replacement sample. A factor with
/// 1 - sigma_j = 0 (only when the sample exhausts the population) is 0.
EntropyDiagnostics entropy_diagnostics(const Population& pop, std::span<const ItemId> i_sample);

}  // namespace drawcouple
