#include "drawcouple/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drawcouple/compensated_sum.hpp"
#include "drawcouple/errors.hpp"

namespace drawcouple {

bool points_coincide(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= FiniteDistribution::kPointTolerance * scale;
}

FiniteDistribution FiniteDistribution::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) throw InvalidInput("distribution has no atoms");
  CompensatedSum total;
  for (const Atom& a : atoms) {
    if (!(a.prob >= 0.0) || !std::isfinite(a.point))
      throw InvalidInput("distribution atom has negative mass or non-finite point");
    total.add(a.prob);
  }
  if (std::abs(total.value() - 1.0) > kMassTolerance)
    throw InvalidInput("distribution mass sums to " + std::to_string(total.value()));

  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.point < y.point; });
  std::vector<Atom> merged;
  std::vector<CompensatedSum> mass;
  for (const Atom& a : atoms) {
    // Chains of near-equal points merge into the first point of the chain.
    if (merged.empty() || !points_coincide(merged.back().point, a.point)) {
      merged.push_back({a.point, 0.0});
      mass.emplace_back();
    }
    mass.back().add(a.prob);
  }
  for (std::size_t i = 0; i < merged.size(); ++i) merged[i].prob = mass[i].value();
  return FiniteDistribution(std::move(merged));
}

FiniteDistribution FiniteDistribution::point_mass(double x) {
  return FiniteDistribution({Atom{x, 1.0}});
}

double FiniteDistribution::mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.point * a.prob;
  return m;
}

double FiniteDistribution::hinge_expectation(double a) const {
  double e = 0.0;
  for (const Atom& atom : atoms_)
    if (atom.point > a) e += (atom.point - a) * atom.prob;
  return e;
}

double FiniteDistribution::prob_at_least(double a) const {
  double p = 0.0;
  for (const Atom& atom : atoms_)
    if (atom.point >= a || points_coincide(atom.point, a)) p += atom.prob;
  return p;
}

}  // namespace drawcouple
