#pragma once

// Reference computations used only by tests. Each one is written from first
// principles and shares no code with the library path it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace marginrisk::oracle {

/// erf by its Maclaurin series, 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1)),
/// summed in long double.
inline double erf_series(double x, int terms = 200) {
  long double sum = 0.0L;
  long double power = x;  // x^(2n+1) / n!
  for (int n = 0; n < terms; ++n) {
    if (n > 0) power *= -static_cast<long double>(x) * x / n;
    sum += power / (2 * n + 1);
  }
  return static_cast<double>(2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum);
}

inline double phi_series(double z) { return 0.5 * (1.0 + erf_series(z / std::numbers::sqrt2)); }

struct Trapezoid {
  double a, b, c, d;
};

inline double trapezoid(const Trapezoid& t, double x) {
  if (x <= t.a && t.a < t.b) return 0.0;
  if (x >= t.d && t.c < t.d) return 0.0;
  if (x < t.a || x > t.d) return 0.0;
  if (x >= t.b && x <= t.c) return 1.0;
  if (x < t.b) return (x - t.a) / (t.b - t.a);
  return (t.d - x) / (t.d - t.c);
}

// Layout used throughout the tests, typed out independently of the library.
inline const std::vector<Trapezoid> kMeanSets{
    {0, 0, 0, 0.1}, {0, 0.1, 0.1, 0.2}, {0.1, 0.2, 0.2, 0.3}, {0.2, 0.3, 0.5, 0.5}};
inline const std::vector<Trapezoid> kStdSets{{0, 0, 0, 0.1}, {0, 0.1, 0.1, 0.2}, {0.1, 0.2, 0.5, 0.5}};
inline const std::vector<Trapezoid> kRiskSets{
    {0, 0, 0, 25}, {0, 25, 25, 50}, {25, 50, 50, 75}, {50, 75, 75, 100}, {75, 100, 100, 100}};

struct OracleRule {
  int mean, std, risk;
};

/// Brute-force Mamdani: product firing, product implication, max
/// aggregation, centroid over `points` samples of [0, 100]. Returns -1 when
/// nothing fires.
inline double mamdani(const std::vector<OracleRule>& rules, double mean, double std, int points = 201) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = 100.0 * i / (points - 1);
    double mu = 0.0;
    for (const auto& r : rules) {
      const double w = trapezoid(kMeanSets[r.mean], mean) * trapezoid(kStdSets[r.std], std);
      mu = std::max(mu, w * trapezoid(kRiskSets[r.risk], x));
    }
    num += x * mu;
    den += mu;
  }
  return den > 0.0 ? num / den : -1.0;
}

/// Discrete centroid of a sampled function over [lo, hi].
template <typename Fn>
double centroid(Fn&& f, double lo, double hi, int points) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    num += x * f(x);
    den += f(x);
  }
  return num / den;
}

struct ScanRule {
  int mean, std, risk;
  double degree;
};

/// For every antecedent cell, scan every rule and keep the largest degree;
/// on equal degree keep the smaller risk label.
inline std::map<std::pair<int, int>, ScanRule> per_cell_max(const std::vector<ScanRule>& rules) {
  std::map<std::pair<int, int>, ScanRule> best;
  for (int m = 0; m < 4; ++m) {
    for (int s = 0; s < 3; ++s) {
      bool found = false;
      ScanRule top{};
      for (const auto& r : rules) {
        if (r.mean != m || r.std != s) continue;
        if (!found || r.degree > top.degree || (r.degree == top.degree && r.risk < top.risk)) top = r;
        found = true;
      }
      if (found) best[{m, s}] = top;
    }
  }
  return best;
}

/// The ten published rules expressed with oracle label indices.
inline const std::vector<OracleRule> kPublishedRules{
    {3, 2, 0}, {3, 0, 0}, {3, 1, 0}, {2, 2, 0}, {2, 0, 0},
    {2, 1, 1}, {1, 2, 4}, {1, 1, 2}, {0, 2, 4}, {0, 1, 4}};

}  // namespace marginrisk::oracle
