#include "marginrisk/accumulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "marginrisk/errors.hpp"
#include "marginrisk/margin.hpp"

namespace marginrisk {

double erf(double x) noexcept { return std::erf(x); }

double normal_cdf(double x, double mu, double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw InputError("standard deviation must be finite and non-negative");
  }
  if (sigma == 0.0) return x < mu ? 0.0 : 1.0;
  const double z = (x - mu) / sigma;
  return 0.5 * (1.0 + marginrisk::erf(z / std::numbers::sqrt2));
}

void AccumulatorParams::validate() const {
  if (window < 2) throw ConfigError("accumulator window must hold at least 2 samples");
  if (!(x_low >= 0.0 && x_low < x_high && x_high <= 100.0)) {
    throw ConfigError("thresholds must satisfy 0 <= x_low < x_high <= 100");
  }
  if (!(k_i >= 0.0) || !(k_d >= 0.0) || !std::isfinite(k_i) || !std::isfinite(k_d)) {
    throw ConfigError("accumulator gains must be finite and non-negative");
  }
}

namespace {

TailProbabilities tails_of(std::span<const double> window, const AccumulatorParams& params) {
  const auto ms = population_mean_std(window);
  TailProbabilities t;
  t.mean = ms.mean;
  t.std = ms.std;
  t.p_high = 1.0 - normal_cdf(params.x_high, ms.mean, ms.std);
  t.p_low = normal_cdf(params.x_low, ms.mean, ms.std);
  return t;
}

}  // namespace

TailProbabilities tail_probabilities(std::span<const double> window, const AccumulatorParams& params) {
  if (window.empty()) throw InsufficientData("risk history is empty");
  return tails_of(window, params);
}

RiskAccumulator::RiskAccumulator(AccumulatorParams params) : params_(params) {
  params_.validate();
  ring_.assign(params_.window, 0.0);
  scratch_.reserve(params_.window);
}

std::vector<double> RiskAccumulator::history() const {
  std::vector<double> out;
  out.reserve(count_);
  const std::size_t w = ring_.size();
  for (std::size_t i = 0; i < count_; ++i) out.push_back(ring_[(head_ + w - count_ + i) % w]);
  return out;
}

TailProbabilities RiskAccumulator::tail_probabilities() const {
  if (count_ == 0) throw InsufficientData("risk history is empty");
  scratch_.clear();
  const std::size_t w = ring_.size();
  for (std::size_t i = 0; i < count_; ++i) scratch_.push_back(ring_[(head_ + w - count_ + i) % w]);
  return tails_of(scratch_, params_);
}

double RiskAccumulator::apply(double p_high, double p_low) {
  const double delta = params_.k_i * p_high - params_.k_d * p_low;
  value_ = std::clamp(value_ + delta, 0.0, 100.0);
  return delta;
}

StepResult RiskAccumulator::step(double risk_inst) {
  if (!std::isfinite(risk_inst)) throw InputError("instantaneous risk is not finite");
  StepResult result;
  const double r = std::clamp(risk_inst, 0.0, 100.0);
  result.input_clamped = r != risk_inst;

  ring_[head_] = r;
  head_ = (head_ + 1) % ring_.size();
  count_ = std::min(count_ + 1, ring_.size());

  result.tails = tail_probabilities();
  result.delta = apply(result.tails.p_high, result.tails.p_low);
  return result;
}

void RiskAccumulator::reset() noexcept {
  head_ = 0;
  count_ = 0;
  value_ = 0.0;
}

}  // namespace marginrisk
