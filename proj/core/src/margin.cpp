#include "marginrisk/margin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "marginrisk/errors.hpp"

namespace marginrisk {

SaturationLimits::SaturationLimits(double low, double high, NormalizationMode mode)
    : low_(low), high_(high), mode_(mode) {
  if (!std::isfinite(low) || !std::isfinite(high) || low <= 0.0 || high <= 0.0) {
    throw ConfigError("saturation limits must be finite and positive");
  }
  if (low >= high) {
    throw ConfigError("lower saturation limit must be below the upper limit");
  }
}

double normalize_command(double command, const SaturationLimits& limits) {
  if (!std::isfinite(command)) {
    throw InputError("motor command is not finite");
  }
  const double c = std::clamp(command, limits.low(), limits.high());
  switch (limits.mode()) {
    case NormalizationMode::kRootSquareSpan:
      return (c - limits.low()) /
             std::sqrt(limits.high() * limits.high() - limits.low() * limits.low());
    case NormalizationMode::kLinear:
      break;
  }
  return (c - limits.low()) / (limits.high() - limits.low());
}

double motor_margin(double normalized) noexcept { return std::min(normalized, 1.0 - normalized); }

double frame_margin(const MotorFrame& frame, const SaturationLimits& limits) {
  if (frame.commands.empty()) {
    throw InputError("motor frame has no commands");
  }
  double worst = std::numeric_limits<double>::infinity();
  for (double c : frame.commands) {
    worst = std::min(worst, motor_margin(normalize_command(c, limits)));
  }
  return worst;
}

MeanStd population_mean_std(std::span<const double> samples) {
  if (samples.empty()) {
    throw InsufficientData("no samples");
  }
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) {
    return {*lo, 0.0};
  }
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double n = static_cast<double>(samples.size());
  const double mean = std::clamp(sum / n, *lo, *hi);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / n)};
}

MarginStats window_stats(std::span<const TimedMargin> margins, double window, double t_now) {
  const double t_start = t_now - window;
  std::vector<double> values;
  values.reserve(margins.size());
  for (const auto& m : margins) {
    if (m.t >= t_start && m.t <= t_now) values.push_back(m.margin);
  }
  if (values.empty()) {
    throw InsufficientData("no margin samples inside the window");
  }
  const auto ms = population_mean_std(values);
  return {ms.mean, ms.std, t_start, t_now};
}

MarginWindow::MarginWindow(double window_seconds) : window_(window_seconds) {
  if (!(window_seconds > 0.0) || !std::isfinite(window_seconds)) {
    throw ConfigError("margin window must be a positive number of seconds");
  }
}

void MarginWindow::push(double t, double margin) {
  if (!std::isfinite(t) || !std::isfinite(margin)) {
    throw InputError("margin sample is not finite");
  }
  if (!samples_.empty() && t < samples_.back().t) {
    throw InputError("margin samples must be time ordered");
  }
  samples_.push_back({t, margin});
  const double t_start = t - window_;
  while (samples_.front().t < t_start) samples_.pop_front();
}

MarginStats MarginWindow::stats() const {
  if (samples_.empty()) {
    throw InsufficientData("margin window is empty");
  }
  scratch_.clear();
  for (const auto& s : samples_) scratch_.push_back(s.margin);
  const auto ms = population_mean_std(scratch_);
  const double t_now = samples_.back().t;
  return {ms.mean, ms.std, t_now - window_, t_now};
}

double attitude_error(const Attitude& a) noexcept {
  const double droll = a.roll_des - a.roll;
  const double dpitch = a.pitch_des - a.pitch;
  return std::sqrt(droll * droll + dpitch * dpitch);
}

namespace {

const Attitude& require_attitude(const MotorFrame& frame) {
  if (!frame.attitude) {
    throw AttitudeUnavailable("attitude unavailable at t=" + std::to_string(frame.t));
  }
  return *frame.attitude;
}

}  // namespace

double attitude_rmse(std::span<const MotorFrame> frames) {
  if (frames.empty()) {
    throw InsufficientData("no frames for attitude RMSE");
  }
  double sum_sq = 0.0;
  for (const auto& f : frames) {
    const auto& a = require_attitude(f);
    const double droll = a.roll_des - a.roll;
    const double dpitch = a.pitch_des - a.pitch;
    sum_sq += droll * droll + dpitch * dpitch;
  }
  return std::sqrt(sum_sq / static_cast<double>(frames.size()));
}

std::optional<double> attitude_rmse_strict(std::span<const MotorFrame> frames) {
  if (frames.empty()) {
    throw InsufficientData("no frames for attitude RMSE");
  }
  double sum = 0.0;
  for (const auto& f : frames) {
    const auto& a = require_attitude(f);
    const double droll = a.roll_des - a.roll;
    const double dpitch = a.pitch_des - a.pitch;
    const double radicand = droll * droll - dpitch * dpitch;
    if (radicand < 0.0) return std::nullopt;
    sum += radicand;
  }
  return std::sqrt(sum / static_cast<double>(frames.size()));
}

}  // namespace marginrisk
