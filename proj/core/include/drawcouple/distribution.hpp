#pragma once

#include <span>
#include <vector>

namespace drawcouple {

struct Atom {
  double point;
  double prob;
};

/// Probability mass on finitely many real points. Points are strictly
/// increasing and probabilities sum to one.
class FiniteDistribution {
 public:
  /// Sorts, merges points closer than kPointTolerance (scaled by magnitude),
  /// drops nothing. Throws InvalidInput on negative mass or a total outside
  /// 1 +- kMassTolerance.
  static FiniteDistribution from_atoms(std::vector<Atom> atoms);

  static FiniteDistribution point_mass(double x);

  static constexpr double kPointTolerance = 1e-12;
  static constexpr double kMassTolerance = 1e-12;

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  double mean() const;
  /// E[(X - a)_+]
  double hinge_expectation(double a) const;
  /// P(X >= a), with points within tolerance of a counted as >= a.
  double prob_at_least(double a) const;
  double min_point() const { return atoms_.front().point; }
  double max_point() const { return atoms_.back().point; }

 private:
  explicit FiniteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  std::vector<Atom> atoms_;
};

/// Merge predicate shared by distributions and grouping code.
bool points_coincide(double a, double b);

}  // namespace drawcouple
