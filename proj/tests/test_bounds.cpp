#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "drawcouple/bounds.hpp"
#include "drawcouple/errors.hpp"
#include "drawcouple/oracle.hpp"
#include "fixtures.hpp"

namespace drawcouple {
namespace {

using testing::p1;
using testing::p2;

double second_branch(double delta, double alpha, double big_n, double n) {
  return (1 + 4 * alpha) / (alpha * (1 - alpha)) * delta * delta * big_n *
         std::pow((big_n - n) / big_n, alpha);
}

TEST(VarianceFactor, Examples) {
  const auto stats = population_stats(p2());
  EXPECT_NEAR(variance_factor(stats, 3, 2), 32.0, 1e-12);
  EXPECT_NEAR(second_branch(2.0, 0.4, 3.0, 2.0), 83.77122194704305, 1e-9);
  EXPECT_EQ(variance_factor(stats, 3, 3), 0.0);
  EXPECT_EQ(variance_factor(stats, 3, 0), 0.0);
  const Population flat_values({0.2, 0.3, 0.5}, {4.0, 4.0, 4.0});
  EXPECT_EQ(variance_factor(population_stats(flat_values), 3, 2), 0.0);
}

TEST(VarianceFactor, Rejections) {
  const auto uniform_stats = population_stats(testing::uniform(3, {1, 2, 3}));
  EXPECT_THROW(variance_factor(uniform_stats, 3, 2), InvalidInput);
  EXPECT_THROW(variance_factor(population_stats(p2()), 3, 4), InvalidInput);
}

TEST(VarianceFactor, SecondBranchWinsForLargeN) {
  // N = 100, alpha = 0.5, delta = 1: second branch is 1200 (1 - n/100)^0.5.
  PopulationStats stats{1.0, 0.5, 0.0};
  EXPECT_NEAR(variance_factor(stats, 100, 99), 120.0, 1e-9);
  EXPECT_NEAR(variance_factor(stats, 100, 10), 40.0, 1e-12);
}

TEST(VarianceFactorProperty, MonotoneAndCapped) {
  Rng meta({8, 8});
  for (int trial = 0; trial < 200; ++trial) {
    PopulationStats stats{0.1 + 5 * meta.uniform01(), 0.01 + 0.98 * meta.uniform01(), 0.0};
    const std::size_t big_n = 1 + meta.uniform_index(300);
    double prev_second = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n <= big_n; ++n) {
      const double v = variance_factor(stats, big_n, n);
      const double cap = 4 * stats.delta * stats.delta * static_cast<double>(n);
      const double second = second_branch(stats.delta, stats.alpha, static_cast<double>(big_n),
                                          static_cast<double>(n));
      EXPECT_LE(v, cap * (1 + 1e-12));
      EXPECT_NEAR(v, std::min(cap, second), 1e-9 * std::max(1.0, v));
      EXPECT_LE(second, prev_second);
      prev_second = second;
    }
  }
}

TEST(SerflingVariance, Examples) {
  EXPECT_NEAR(serfling_variance(1.0, 10, 9), 0.45, 1e-15);
  EXPECT_EQ(serfling_variance(1.0, 10, 0), 0.0);
  EXPECT_EQ(serfling_variance(0.0, 10, 5), 0.0);
  EXPECT_NEAR(serfling_variance(2.0, 100, 95), 4.0 * 95 * 6 / 400, 1e-12);
}

TEST(SerflingVarianceProperty, BelowHoeffdingFactorUpToHalf) {
  for (std::size_t big_n = 1; big_n <= 200; ++big_n)
    for (std::size_t n = 0; 2 * n <= big_n; ++n)
      EXPECT_LE(serfling_variance(1.5, big_n, n), 1.5 * 1.5 * static_cast<double>(n) / 4 + 1e-12);
}

TEST(SubgaussianTailBound, Examples) {
  EXPECT_NEAR(subgaussian_tail_bound(2.0, 2.0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(subgaussian_tail_bound(0.0, 1.0), 0.0);
  EXPECT_EQ(subgaussian_tail_bound(std::numeric_limits<double>::infinity(), 1.0), 1.0);
  EXPECT_NEAR(subgaussian_tail_bound(1e300, 1.0), 1.0, 1e-15);
  EXPECT_THROW(subgaussian_tail_bound(1.0, 0.0), InvalidInput);
  EXPECT_THROW(subgaussian_tail_bound(1.0, -1.0), InvalidInput);
}

TEST(LogLaplace, Basics) {
  EXPECT_NEAR(log_laplace(p1(), 0.0), 0.0, 1e-15);
  EXPECT_NEAR(log_laplace(p1(), 1.0), std::log(0.3 + 0.7 * std::exp(1.0)), 1e-14);
  // Max shift keeps huge arguments finite.
  EXPECT_NEAR(log_laplace(p1(), 5000.0), 5000.0 + std::log(0.7), 1e-9);
  EXPECT_NEAR(log_laplace(p2(), -3.0), std::log(0.2 * std::exp(-3.0) + 0.3 * std::exp(-6.0) +
                                                 0.5 * std::exp(-9.0)),
              1e-14);
}

TEST(ChernoffUpperBound, Examples) {
  const auto below = chernoff_upper_bound(p2(), 2, 4.0);  // n * mean = 4.6
  EXPECT_EQ(below.bound, 1.0);
  EXPECT_EQ(below.theta_star, 0.0);
  const auto at_mean = chernoff_upper_bound(p2(), 2, 4.6);
  EXPECT_EQ(at_mean.bound, 1.0);

  const auto edge = chernoff_upper_bound(p1(), 2, 2.0);
  EXPECT_NEAR(edge.bound, 0.49, 1e-6);
  const auto exact_y = exact_sample_dist(p1(), 2, SampleMode::with_replacement);
  EXPECT_NEAR(edge.bound, exact_y.prob_at_least(2.0), 1e-6);

  const auto impossible = chernoff_upper_bound(p1(), 2, 2.5);
  EXPECT_EQ(impossible.bound, 0.0);
  EXPECT_THROW(chernoff_upper_bound(p1(), 0, 1.0), InvalidInput);
}

TEST(ChernoffUpperBound, BernoulliRateFunction) {
  // Y ~ Bin(n, p): bound = exp(-n KL(a/n || p)) for n p < a < n.
  const double p = 0.7;
  for (std::size_t n : {1u, 2u, 5u, 20u}) {
    for (double frac : {0.75, 0.8, 0.9, 0.99}) {
      const double a = frac * static_cast<double>(n);
      const double kl = frac * std::log(frac / p) + (1 - frac) * std::log((1 - frac) / (1 - p));
      const auto b = chernoff_upper_bound(p1(), n, a);
      EXPECT_NEAR(b.bound, std::exp(-static_cast<double>(n) * kl), 1e-8) << n << " " << frac;
      // theta* = ln(frac (1-p) / ((1-frac) p))
      EXPECT_NEAR(b.theta_star, std::log(frac * (1 - p) / ((1 - frac) * p)), 1e-4);
    }
  }
}

TEST(ChernoffUpperBoundProperty, DominatesExactTailOnSmallGrid) {
  Rng meta({99, 1});
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t big_n = 1 + meta.uniform_index(4);
    const Population pop = testing::random_population(meta, big_n);
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto y = exact_sample_dist(pop, n, SampleMode::with_replacement);
      std::vector<double> as;
      for (const Atom& atom : y.atoms()) {
        as.push_back(atom.point);
        as.push_back(atom.point + 0.5);
        as.push_back(atom.point - 0.25);
      }
      for (double a : as) {
        const auto b = chernoff_upper_bound(pop, n, a);
        EXPECT_GE(b.bound, y.prob_at_least(a) - 1e-12) << "a=" << a;
        EXPECT_LE(b.bound, 1.0);
        // No theta on a coarse scan beats the optimizer by more than the tolerance.
        if (std::isfinite(b.theta_star) && b.theta_star > 0.0) {
          for (double theta = 0.0; theta <= 20.0; theta += 0.01) {
            const double scan = std::exp(static_cast<double>(n) * log_laplace(pop, theta) - theta * a);
            EXPECT_LE(b.bound, scan * (1 + 1e-8));
          }
        }
      }
    }
  }
}

TEST(TvNextDraw, Examples) {
  EXPECT_EQ(tv_next_draw(p2(), std::vector<ItemId>{}), 0.0);
  EXPECT_NEAR(tv_next_draw(p2(), std::vector<ItemId>{3, 2}), 0.8, 1e-15);
  EXPECT_EQ(tv_next_draw(p2(), std::vector<ItemId>{1, 2, 3}), 1.0);
  EXPECT_THROW(tv_next_draw(p2(), std::vector<ItemId>{2, 2}), InvalidInput);
  EXPECT_THROW(tv_next_draw(p2(), std::vector<ItemId>{5}), InvalidInput);
}

TEST(EntropyDiagnostics, Examples) {
  const auto e = entropy_diagnostics(p2(), std::vector<ItemId>{3, 2});
  ASSERT_EQ(e.sigma.size(), 2u);
  EXPECT_NEAR(e.sigma[0], 0.5, 1e-15);
  EXPECT_NEAR(e.sigma[1], 0.8, 1e-15);
  EXPECT_NEAR(e.expected_Tn_given_I, 3.0, 1e-12);
  EXPECT_NEAR(e.a_diag, 0.6, 1e-12);
  EXPECT_NEAR(e.b_diag, 0.5 / 3.5 + 1 / 2.5, 1e-12);
  EXPECT_NEAR(e.b_diag, 0.5428571428571428, 1e-12);

  const auto one = entropy_diagnostics(p2(), std::vector<ItemId>{2});
  EXPECT_EQ(one.expected_Tn_given_I, 1.0);
  EXPECT_NEAR(one.a_diag, 0.7, 1e-15);
  EXPECT_NEAR(one.b_diag, 0.7, 1e-15);

  const auto all = entropy_diagnostics(p2(), std::vector<ItemId>{2, 3, 1});
  EXPECT_EQ(all.sigma.back(), 1.0);
  EXPECT_EQ(all.a_diag, 0.0);
  EXPECT_EQ(all.b_diag, 0.0);
  EXPECT_NEAR(all.expected_Tn_given_I, 1 + 1 / 0.7 + 1 / 0.2, 1e-12);

  EXPECT_THROW(entropy_diagnostics(p2(), std::vector<ItemId>{1, 1}), InvalidInput);
  EXPECT_THROW(entropy_diagnostics(p2(), std::vector<ItemId>{}), InvalidInput);
}

TEST(EntropyDiagnosticsProperty, BoundedByN) {
  Rng meta({3, 14});
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t big_n = 1 + meta.uniform_index(30);
    const Population pop = testing::random_population(meta, big_n);
    const std::size_t n = 1 + meta.uniform_index(big_n);
    std::vector<ItemId> ids(big_n);
    for (std::size_t i = 0; i < big_n; ++i) ids[i] = static_cast<ItemId>(i + 1);
    for (std::size_t k = 0; k < big_n; ++k)
      std::swap(ids[k], ids[k + meta.uniform_index(big_n - k)]);
    ids.resize(n);
    const auto e = entropy_diagnostics(pop, ids);
    const double dn = static_cast<double>(n);
    for (std::size_t k = 1; k < n; ++k) EXPECT_GT(e.sigma[k], e.sigma[k - 1]);
    EXPECT_LE(e.sigma.back(), 1.0 + 1e-12);
    EXPECT_GE(e.expected_Tn_given_I, dn);
    EXPECT_LE(e.a_diag, dn + 1e-12);
    EXPECT_GE(e.a_diag, 0.0);
    EXPECT_LE(e.b_diag, dn + 1e-12);
    EXPECT_GE(e.b_diag, 0.0);
  }
}

TEST(EntropyDiagnosticsProperty, AveragedTnMatchesOracle) {
  Rng meta({6, 28});
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t big_n = 1 + meta.uniform_index(6);
    const Population pop = testing::random_population(meta, big_n);
    for (std::size_t n = 1; n <= big_n; ++n) {
      double avg = 0.0;
      for_each_tuple(pop, n, SampleMode::without_replacement,
                     [&](std::span<const ItemId> t, double prob) {
                       avg += prob * entropy_diagnostics(pop, t).expected_Tn_given_I;
                     });
      EXPECT_NEAR(avg, exact_expected_Tn(pop, n), 1e-12);
    }
  }
}

}  // namespace
}  // namespace drawcouple
