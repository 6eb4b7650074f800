#include "drawcouple/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drawcouple/errors.hpp"

namespace drawcouple {

namespace {

void check_n(std::size_t population_size, std::size_t n) {
  if (n > population_size)
    throw InvalidInput("n=" + std::to_string(n) + " exceeds N=" + std::to_string(population_size));
}

std::vector<bool> distinct_ids(const Population& pop, std::span<const ItemId> ids) {
  std::vector<bool> seen(pop.size() + 1, false);
  for (ItemId id : ids) {
    if (!pop.contains(id)) throw InvalidInput("unknown item id " + std::to_string(id));
    if (seen[static_cast<std::size_t>(id)])
      throw InvalidInput("duplicate item id " + std::to_string(id));
    seen[static_cast<std::size_t>(id)] = true;
  }
  return seen;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double variance_factor(const PopulationStats& stats, std::size_t population_size, std::size_t n) {
  check_n(population_size, n);
  if (stats.delta == 0.0) return 0.0;
  const double alpha = stats.alpha;
  if (alpha >= 1.0)
    throw InvalidInput("variance_factor requires alpha < 1; use serfling_variance for uniform weights");
  const double d2 = stats.delta * stats.delta;
  const auto big_n = static_cast<double>(population_size);
  const auto small_n = static_cast<double>(n);
  const double hoeffding = 4.0 * d2 * small_n;
  const double sharpened = (1.0 + 4.0 * alpha) / (alpha * (1.0 - alpha)) * d2 * big_n *
                           std::pow((big_n - small_n) / big_n, alpha);
  return std::min(hoeffding, sharpened);
}

double serfling_variance(double delta, std::size_t population_size, std::size_t n) {
  check_n(population_size, n);
  if (population_size == 0) return 0.0;
  const auto big_n = static_cast<double>(population_size);
  const auto small_n = static_cast<double>(n);
  return delta * delta * small_n * (big_n - small_n + 1.0) / (4.0 * big_n);
}

double subgaussian_tail_bound(double v, double t) {
  if (!(t > 0.0)) throw InvalidInput("tail bound needs t > 0");
  if (!(v >= 0.0)) throw InvalidInput("tail bound needs v >= 0");
  if (v == 0.0) return 0.0;
  if (std::isinf(v)) return 1.0;
  return std::exp(-t * t / (2.0 * v));
}

double log_laplace(const Population& pop, double theta) {
  const auto w = pop.weights();
  const auto v = pop.values();
  const double vmax = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::exp(theta * (v[i] - vmax));
  return theta * vmax + std::log(s);
}

namespace {

// d/dtheta log_laplace: the mean of the exponentially tilted law.
double tilted_mean(const Population& pop, double theta) {
  const auto w = pop.weights();
  const auto v = pop.values();
  const double vmax = *std::max_element(v.begin(), v.end());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double e = w[i] * std::exp(theta * (v[i] - vmax));
    num += e * v[i];
    den += e;
  }
  return num / den;
}

}  // namespace

ChernoffBound chernoff_upper_bound(const Population& pop, std::size_t n, double a) {
  if (n == 0) throw InvalidInput("Chernoff bound needs n >= 1");
  const auto v = pop.values();
  const auto w = pop.weights();
  const double vmax = *std::max_element(v.begin(), v.end());
  const double nn = static_cast<double>(n);
  const double mean = population_stats(pop).mean_value;

  if (a <= nn * mean) return {1.0, 0.0};
  const double top = nn * vmax;
  const double edge_tol = 1e-12 * std::max(1.0, std::abs(top));
  if (a > top + edge_tol) return {0.0, kInf};
  if (a >= top - edge_tol) {
    // Only the all-maximal sample reaches a; the exponent decreases to
    // n ln P(v(J_1) = max) as theta grows.
    double p_top = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == vmax) p_top += w[i];
    return {std::pow(p_top, nn), kInf};
  }

  const auto exponent = [&](double theta) { return nn * log_laplace(pop, theta) - theta * a; };
  const auto slope = [&](double theta) { return nn * tilted_mean(pop, theta) - a; };

  double lo = 0.0, hi = 1.0;
  while (slope(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 0x1.0p200) return {std::exp(exponent(hi)), hi};
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = exponent(c), fd = exponent(d);
  // The exponent is convex; golden-section on the bracket until theta is
  // pinned far below the 1e-10 exponent tolerance.
  for (int iter = 0; iter < 400 && (hi - lo) > 1e-10 * std::max(1.0, hi); ++iter) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = exponent(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = exponent(d);
    }
  }
  const double theta = fc < fd ? c : d;
  return {std::min(1.0, std::exp(std::min(fc, fd))), theta};
}

double tv_next_draw(const Population& pop, std::span<const ItemId> drawn) {
  distinct_ids(pop, drawn);
  if (drawn.size() == pop.size()) return 1.0;
  double mass = 0.0;
  for (ItemId id : drawn) mass += pop.weight(id);
  return mass;
}

EntropyDiagnostics entropy_diagnostics(const Population& pop, std::span<const ItemId> i_sample) {
  if (i_sample.empty()) throw InvalidInput("entropy diagnostics need a non-empty sample");
  distinct_ids(pop, i_sample);
  const std::size_t n = i_sample.size();
  const bool exhausts = n == pop.size();

  EntropyDiagnostics out;
  out.sigma.resize(n);
  double running = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    running += pop.weight(i_sample[k]);
    out.sigma[k] = std::min(running, 1.0);
  }
  if (exhausts) out.sigma.back() = 1.0;

  // sigma_{k-1} with sigma_0 = 0.
  const auto sigma_before = [&](std::size_t k) { return k == 0 ? 0.0 : out.sigma[k - 1]; };

  for (std::size_t k = 0; k < n; ++k) out.expected_Tn_given_I += 1.0 / (1.0 - sigma_before(k));
  out.a_diag = (1.0 - out.sigma.back()) * out.expected_Tn_given_I;

  for (std::size_t k = 0; k < n; ++k) {
    const double wk = pop.weight(i_sample[k]);
    double product = 1.0;
    for (std::size_t j = k; j < n; ++j) {
      const double gap = 1.0 - out.sigma[j];
      if (gap <= 0.0) {
        product = 0.0;
        break;
      }
      product /= 1.0 + wk / gap;
    }
    out.b_diag += product;
  }
  return out;
}

}  // namespace drawcouple
