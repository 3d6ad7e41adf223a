#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rankedge {

struct Atom {
  double value;
  double prob;
};

// Discrete distribution with sorted, merged atoms. eval is right-continuous.
class StepCdf {
 public:
  StepCdf() = default;
  // Atoms must already be sorted and merged.
  explicit StepCdf(std::vector<Atom> atoms);

  // Sorts, merges values closer than 1e-11 relative (1e-14 absolute) and
  // normalizes weights to probabilities.
  static StepCdf from_weighted(std::vector<std::pair<double, double>> weighted);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total() const { return total_; }

  double eval(double z) const;
  double left_limit(double z) const;
  double mass_at(double z) const { return eval(z) - left_limit(z); }
  double moment(int k) const;
  double cdf_at_atom(std::size_t idx) const { return cumulative_[idx]; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

bool values_merge(double anchor, double v);

}  // namespace rankedge
