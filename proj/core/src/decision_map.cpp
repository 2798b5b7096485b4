#include "marginrisk/decision_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "marginrisk/errors.hpp"

namespace marginrisk {

DecisionMap::DecisionMap(std::size_t rows, std::size_t cols, Interval mean_bounds,
                         Interval std_bounds, std::vector<double> values, std::vector<bool> covered)
    : rows_(rows),
      cols_(cols),
      mean_bounds_(mean_bounds),
      std_bounds_(std_bounds),
      values_(std::move(values)),
      covered_(std::move(covered)) {
  if (rows_ < 2 || cols_ < 2) throw ConfigError("decision map needs at least 2x2 cells");
  if (!(mean_bounds_.lo < mean_bounds_.hi) || !(std_bounds_.lo < std_bounds_.hi)) {
    throw ConfigError("decision map bounds must be non-empty");
  }
  if (values_.size() != rows_ * cols_ || covered_.size() != values_.size()) {
    throw ConfigError("decision map values and mask must have rows*cols entries");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 100.0)) throw ConfigError("decision map value outside [0, 100]");
  }
}

double DecisionMap::mean_at(std::size_t col) const noexcept {
  return sample_point(mean_bounds_.lo, mean_bounds_.hi, cols_, col);
}

double DecisionMap::std_at(std::size_t row) const noexcept {
  return sample_point(std_bounds_.lo, std_bounds_.hi, rows_, row);
}

std::size_t DecisionMap::covered_count() const noexcept {
  return static_cast<std::size_t>(std::count(covered_.begin(), covered_.end(), true));
}

namespace {

// Node index and fractional offset of `x` along an axis with n nodes. Offsets
// within 1e-9 of a node snap onto it, so node queries are exact.
std::pair<std::size_t, double> locate(double x, const Interval& b, std::size_t n) {
  const double pos = (std::clamp(x, b.lo, b.hi) - b.lo) / (b.hi - b.lo) * static_cast<double>(n - 1);
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < 1e-9) return {static_cast<std::size_t>(nearest), 0.0};
  const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
  return {i, pos - static_cast<double>(i)};
}

}  // namespace

double DecisionMap::lookup(double mean, double std) const noexcept {
  const auto [c, fx] = locate(mean, mean_bounds_, cols_);
  const auto [r, fy] = locate(std, std_bounds_, rows_);
  auto along_row = [&](std::size_t row) {
    const double v0 = values_[row * cols_ + c];
    return fx == 0.0 ? v0 : v0 + (values_[row * cols_ + c + 1] - v0) * fx;
  };
  const double bottom = along_row(r);
  return fy == 0.0 ? bottom : bottom + (along_row(r + 1) - bottom) * fy;
}

double idw(std::span<const ScatteredSample> samples, double x, double y, double power) {
  if (samples.empty()) throw InputError("IDW needs at least one sample");
  double num = 0.0;
  double den = 0.0;
  for (const auto& s : samples) {
    const double d = std::hypot(s.x - x, s.y - y);
    if (d == 0.0) return s.value;
    const double w = 1.0 / std::pow(d, power);
    num += w * s.value;
    den += w;
  }
  return num / den;
}

DecisionMap build_decision_map(const InferenceEngine& engine, const MapOptions& opt) {
  if (opt.rows < 2 || opt.cols < 2) throw ConfigError("decision map needs at least 2x2 cells");
  if (opt.neighbors == 0) throw ConfigError("IDW needs at least one neighbour");

  const std::size_t n = opt.rows * opt.cols;
  std::vector<double> values(n, 0.0);
  std::vector<bool> covered(n, false);
  auto mean_at = [&](std::size_t c) { return sample_point(opt.mean_bounds.lo, opt.mean_bounds.hi, opt.cols, c); };
  auto std_at = [&](std::size_t r) { return sample_point(opt.std_bounds.lo, opt.std_bounds.hi, opt.rows, r); };

  std::vector<ScatteredSample> sources;
  for (std::size_t r = 0; r < opt.rows; ++r) {
    for (std::size_t c = 0; c < opt.cols; ++c) {
      if (auto v = engine.try_infer(mean_at(c), std_at(r))) {
        values[r * opt.cols + c] = *v;
        covered[r * opt.cols + c] = true;
        sources.push_back({mean_at(c), std_at(r), *v});
      }
    }
  }
  if (sources.empty()) throw ConfigError("no rule fires anywhere on the decision map grid");

  const std::size_t k = std::min(opt.neighbors, sources.size());
  std::vector<std::size_t> order(sources.size());
  std::vector<double> dist(sources.size());
  std::vector<ScatteredSample> nearest(k);
  for (std::size_t r = 0; r < opt.rows; ++r) {
    for (std::size_t c = 0; c < opt.cols; ++c) {
      if (covered[r * opt.cols + c]) continue;
      const double x = mean_at(c);
      const double y = std_at(r);
      for (std::size_t i = 0; i < sources.size(); ++i) {
        dist[i] = std::hypot(sources[i].x - x, sources[i].y - y);
      }
      std::iota(order.begin(), order.end(), std::size_t{0});
      // Ties on distance go to the earlier (row-major) source.
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                        [&](std::size_t a, std::size_t b) {
                          return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                        });
      for (std::size_t i = 0; i < k; ++i) nearest[i] = sources[order[i]];
      values[r * opt.cols + c] = std::clamp(idw(nearest, x, y, opt.power), 0.0, 100.0);
    }
  }
  return DecisionMap(opt.rows, opt.cols, opt.mean_bounds, opt.std_bounds, std::move(values),
                     std::move(covered));
}

DecisionMap build_decision_map(const RuleSet& rules, const MapOptions& options) {
  return build_decision_map(InferenceEngine(rules), options);
}

}  // namespace marginrisk
