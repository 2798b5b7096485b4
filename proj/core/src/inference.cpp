#include "marginrisk/inference.hpp"

#include <algorithm>
#include <cmath>

#include "marginrisk/errors.hpp"

namespace marginrisk {

double defuzzify(const SampledCurve& curve) {
  if (curve.mu.size() < 2) {
    throw InputError("defuzzification needs at least two samples");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < curve.mu.size(); ++i) {
    num += curve.x(i) * curve.mu[i];
    den += curve.mu[i];
  }
  if (!(den > 0.0)) {
    throw UncoveredInput("aggregated output membership is identically zero");
  }
  return std::clamp(num / den, curve.lo, curve.hi);
}

InferenceEngine::InferenceEngine(RuleSet rules, std::size_t resolution)
    : rules_(std::move(rules)), resolution_(resolution) {
  if (rules_.empty()) throw ConfigError("inference needs at least one rule");
  if (resolution_ < 2) throw ConfigError("output resolution must be at least 2");

  const auto& risk = rules_.variables().risk;
  consequent_curves_.resize(risk.size());
  for (std::size_t label = 0; label < risk.size(); ++label) {
    auto& curve = consequent_curves_[label];
    curve.resize(resolution_);
    for (std::size_t i = 0; i < resolution_; ++i) {
      curve[i] = risk[label].membership(sample_point(risk.lo(), risk.hi(), resolution_, i));
    }
  }
}

double InferenceEngine::firing_strengths(double mean, double std, std::vector<double>& out) const {
  if (!std::isfinite(mean) || !std::isfinite(std)) {
    throw InputError("inference inputs must be finite");
  }
  const auto& vars = rules_.variables();
  out.resize(rules_.size());
  double strongest = 0.0;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& rule = rules_.rules()[r];
    out[r] = vars.mean.membership(rule.mean_label, mean) * vars.std.membership(rule.std_label, std);
    strongest = std::max(strongest, out[r]);
  }
  return strongest;
}

SampledCurve InferenceEngine::aggregate(double mean, double std) const {
  const auto& risk = rules_.variables().risk;
  SampledCurve curve{risk.lo(), risk.hi(), std::vector<double>(resolution_, 0.0)};
  std::vector<double> strengths;
  firing_strengths(mean, std, strengths);
  for (std::size_t r = 0; r < strengths.size(); ++r) {
    if (strengths[r] <= 0.0) continue;
    const auto& consequent = consequent_curves_[rules_.rules()[r].risk_label];
    for (std::size_t i = 0; i < resolution_; ++i) {
      curve.mu[i] = std::max(curve.mu[i], strengths[r] * consequent[i]);
    }
  }
  return curve;
}

std::optional<double> InferenceEngine::try_infer(double mean, double std) const {
  std::vector<double> strengths;
  if (firing_strengths(mean, std, strengths) <= kFiringEpsilon) return std::nullopt;

  const auto& risk = rules_.variables().risk;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < resolution_; ++i) {
    double mu = 0.0;
    for (std::size_t r = 0; r < strengths.size(); ++r) {
      mu = std::max(mu, strengths[r] * consequent_curves_[rules_.rules()[r].risk_label][i]);
    }
    num += sample_point(risk.lo(), risk.hi(), resolution_, i) * mu;
    den += mu;
  }
  if (!(den > 0.0)) return std::nullopt;
  return std::clamp(num / den, risk.lo(), risk.hi());
}

double InferenceEngine::infer(double mean, double std) const {
  if (auto v = try_infer(mean, std)) return *v;
  throw UncoveredInput("no rule fires for margin mean " + std::to_string(mean) + ", std " +
                       std::to_string(std));
}

double infer(const RuleSet& rules, double mean, double std) {
  return InferenceEngine(rules).infer(mean, std);
}

}  // namespace marginrisk
