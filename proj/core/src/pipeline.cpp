#include "marginrisk/pipeline.hpp"

#include <cmath>

#include "marginrisk/errors.hpp"

namespace marginrisk {

void PipelineConfig::validate() const {
  if (!(window_seconds > 0.0) || !std::isfinite(window_seconds)) {
    throw ConfigError("margin window must be a positive number of seconds");
  }
  if (!(emit_rate_hz >= 0.0) || !std::isfinite(emit_rate_hz)) {
    throw ConfigError("emit rate must be non-negative");
  }
  accumulator.validate();
}

RiskEstimator::RiskEstimator(PipelineConfig config, RiskModel model)
    : config_(std::move(config)),
      model_(std::move(model)),
      margins_(config_.window_seconds),
      accumulator_(config_.accumulator) {
  config_.validate();
  if (!model_.engine && !model_.map) {
    throw ConfigError("risk estimator needs a rule set or a decision map");
  }
}

bool RiskEstimator::emission_due(double t) {
  if (config_.emit_rate_hz == 0.0) return true;
  const double period = 1.0 / config_.emit_rate_hz;
  if (!next_emit_t_) {
    next_emit_t_ = t + period;
    return true;
  }
  // Small slack absorbs accumulated rounding in frame timestamps.
  if (t + 1e-9 * period < *next_emit_t_) return false;
  while (*next_emit_t_ <= t + 1e-9 * period) *next_emit_t_ += period;
  return true;
}

std::pair<double, RiskSource> RiskEstimator::instantaneous_risk(double mean, double std) const {
  if (model_.engine) {
    if (auto v = model_.engine->try_infer(mean, std)) return {*v, RiskSource::kRules};
  }
  if (model_.map) return {model_.map->lookup(mean, std), RiskSource::kMap};
  return {last_risk_.value_or(accumulator_.value()), RiskSource::kHeld};
}

std::optional<RiskRecord> RiskEstimator::push(const MotorFrame& frame) {
  if (!std::isfinite(frame.t)) throw InputError("frame time is not finite");
  if (last_frame_t_ && frame.t < *last_frame_t_) {
    throw InputError("frame times must be non-decreasing");
  }
  if (motors_ == 0) {
    motors_ = frame.commands.size();
  } else if (frame.commands.size() != motors_) {
    throw InputError("motor count changed within the log");
  }
  const double margin = frame_margin(frame, config_.limits);
  margins_.push(frame.t, margin);
  last_frame_t_ = frame.t;

  if (!emission_due(frame.t)) return std::nullopt;

  const auto stats = margins_.stats();
  const auto [risk, source] = instantaneous_risk(stats.mean, stats.std);
  const auto step = accumulator_.step(risk);
  last_risk_ = risk;

  RiskRecord rec;
  rec.t = frame.t;
  rec.margin_mean = stats.mean;
  rec.margin_std = stats.std;
  rec.risk_inst = risk;
  rec.p_high = step.tails.p_high;
  rec.p_low = step.tails.p_low;
  rec.risk_acc = accumulator_.value();
  rec.source = source;
  return rec;
}

std::vector<RiskRecord> run_pipeline(const PipelineConfig& config, const RiskModel& model,
                                     std::span<const MotorFrame> frames) {
  if (frames.empty()) throw InputError("flight log is empty");
  RiskEstimator estimator(config, model);
  std::vector<RiskRecord> out;
  for (const auto& f : frames) {
    if (auto rec = estimator.push(f)) out.push_back(*rec);
  }
  return out;
}

}  // namespace marginrisk
