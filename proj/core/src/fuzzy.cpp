#include "marginrisk/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "marginrisk/errors.hpp"

namespace marginrisk {

FuzzySet::FuzzySet(std::string label, double a, double b, double c, double d)
    : label_(std::move(label)), corners_{a, b, c, d} {
  for (double v : corners_) {
    if (!std::isfinite(v)) throw ConfigError("fuzzy set '" + label_ + "' has a non-finite corner");
  }
  if (!(a <= b && b <= c && c <= d)) {
    throw ConfigError("fuzzy set '" + label_ + "' corners must satisfy a <= b <= c <= d");
  }
  if (label_.empty()) throw ConfigError("fuzzy set label is empty");
}

double FuzzySet::membership(double x) const noexcept {
  const auto [a, b, c, d] = corners_;
  if (x < a || x > d) return 0.0;
  if (x < b) return (x - a) / (b - a);
  if (x <= c) return 1.0;
  return (d - x) / (d - c);
}

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       std::vector<FuzzySet> sets)
    : name_(std::move(name)), lo_(lo), hi_(hi), sets_(std::move(sets)) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("variable '" + name_ + "' needs a finite universe with lo < hi");
  }
  if (sets_.empty()) throw ConfigError("variable '" + name_ + "' has no fuzzy sets");

  std::set<std::string> labels;
  std::vector<double> breakpoints{lo, hi};
  for (const auto& s : sets_) {
    if (!labels.insert(s.label()).second) {
      throw ConfigError("variable '" + name_ + "' repeats label '" + s.label() + "'");
    }
    for (double v : s.corners()) {
      if (v < lo || v > hi) {
        throw ConfigError("set '" + s.label() + "' of '" + name_ + "' leaves the universe");
      }
      breakpoints.push_back(v);
    }
  }

  // The membership sum is piecewise linear between corners, so checking the
  // corners (approached from both sides) covers the whole universe.
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  std::vector<double> probes;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    probes.push_back(breakpoints[i]);
    if (i + 1 < breakpoints.size()) probes.push_back(0.5 * (breakpoints[i] + breakpoints[i + 1]));
  }
  for (double x : probes) {
    double sum = 0.0;
    for (const auto& s : sets_) sum += s.membership(x);
    if (std::abs(sum - 1.0) > kPartitionTolerance) {
      throw ConfigError("sets of '" + name_ + "' do not sum to one at x=" + std::to_string(x));
    }
  }
}

double LinguisticVariable::clamp(double x) const noexcept { return std::clamp(x, lo_, hi_); }

double LinguisticVariable::membership(std::size_t i, double x) const {
  return sets_.at(i).membership(clamp(x));
}

std::vector<double> LinguisticVariable::fuzzify(double x) const {
  if (!std::isfinite(x)) throw InputError("cannot fuzzify a non-finite value");
  const double xc = clamp(x);
  std::vector<double> degrees;
  degrees.reserve(sets_.size());
  for (const auto& s : sets_) degrees.push_back(s.membership(xc));
  return degrees;
}

LabelDegree LinguisticVariable::best_label(double x) const {
  const auto degrees = fuzzify(x);
  LabelDegree best{0, degrees[0]};
  for (std::size_t i = 1; i < degrees.size(); ++i) {
    if (degrees[i] > best.degree) best = {i, degrees[i]};
  }
  return best;
}

std::size_t LinguisticVariable::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].label() == label) return i;
  }
  throw ConfigError("variable '" + name_ + "' has no label '" + label + "'");
}

double partition_deviation(const LinguisticVariable& var, std::size_t samples) {
  double worst = 0.0;
  const double step = samples > 1 ? (var.hi() - var.lo()) / static_cast<double>(samples - 1) : 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = var.lo() + step * static_cast<double>(k);
    double sum = 0.0;
    for (const auto& s : var.sets()) sum += s.membership(var.clamp(x));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

FuzzyVariables default_variables() {
  using S = FuzzySet;
  LinguisticVariable mean("margin_mean", 0.0, 0.5,
                          {S::triangle("VERY_LOW", 0.0, 0.0, 0.1), S::triangle("LOW", 0.0, 0.1, 0.2),
                           S::triangle("MEDIUM", 0.1, 0.2, 0.3), S("HIGH", 0.2, 0.3, 0.5, 0.5)});
  LinguisticVariable stdev("margin_std", 0.0, 0.5,
                         {S::triangle("LOW", 0.0, 0.0, 0.1), S::triangle("MEDIUM", 0.0, 0.1, 0.2),
                          S("HIGH", 0.1, 0.2, 0.5, 0.5)});
  LinguisticVariable risk("risk", 0.0, 100.0,
                          {S::triangle("VERY_LOW", 0.0, 0.0, 25.0), S::triangle("LOW", 0.0, 25.0, 50.0),
                           S::triangle("MEDIUM", 25.0, 50.0, 75.0), S::triangle("HIGH", 50.0, 75.0, 100.0),
                           S::triangle("VERY_HIGH", 75.0, 100.0, 100.0)});
  return {std::move(mean), std::move(stdev), std::move(risk)};
}

}  // namespace marginrisk
