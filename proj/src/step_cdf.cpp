#include "rankedge/step_cdf.hpp"

#include <algorithm>
#include <cmath>

#include "rankedge/error.hpp"

namespace rankedge {

bool values_merge(double anchor, double v) {
  const double scale = std::max(std::fabs(anchor), std::fabs(v));
  return std::fabs(v - anchor) <= std::max(1e-11 * scale, 1e-14);
}

StepCdf::StepCdf(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  cumulative_.reserve(atoms_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i > 0 && !(atoms_[i].value > atoms_[i - 1].value))
      fail(ErrorKind::InputValidity, "atoms must be strictly increasing");
    acc += atoms_[i].prob;
    cumulative_.push_back(acc);
  }
  total_ = acc;
}

StepCdf StepCdf::from_weighted(std::vector<std::pair<double, double>> weighted) {
  std::sort(weighted.begin(), weighted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0.0;
  for (const auto& w : weighted) total += w.second;
  if (!(total > 0.0)) fail(ErrorKind::InputValidity, "distribution has no mass");
  std::vector<Atom> atoms;
  std::size_t i = 0;
  while (i < weighted.size()) {
    const double anchor = weighted[i].first;
    double mass = 0.0;
    double moment = 0.0;
    std::size_t j = i;
    while (j < weighted.size() && values_merge(anchor, weighted[j].first)) {
      mass += weighted[j].second;
      moment += weighted[j].second * weighted[j].first;
      ++j;
    }
    if (mass > 0.0) atoms.push_back({j - i == 1 ? anchor : moment / mass, mass / total});
    i = j;
  }
  return StepCdf(std::move(atoms));
}

double StepCdf::eval(double z) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), z,
                             [](double v, const Atom& a) { return v < a.value; });
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double StepCdf::left_limit(double z) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), z,
                             [](const Atom& a, double v) { return a.value < v; });
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double StepCdf::moment(int k) const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.prob * std::pow(a.value, k);
  return s;
}

}  // namespace rankedge
