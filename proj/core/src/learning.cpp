#include "marginrisk/learning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <utility>

#include "marginrisk/errors.hpp"

namespace marginrisk {

void validate(const DataPair& p) {
  if (!std::isfinite(p.margin_mean) || !std::isfinite(p.margin_std) || !std::isfinite(p.risk)) {
    throw InputError("data pair has a non-finite field");
  }
  if (p.margin_mean < 0.0 || p.margin_mean > 0.5 || p.margin_std < 0.0 || p.margin_std > 0.5) {
    throw InputError("margin statistics must lie in [0, 0.5]");
  }
  if (p.risk < 0.0 || p.risk > 100.0) {
    throw InputError("risk label must lie in [0, 100]");
  }
}

PairLabels classify(const DataPair& pair, const FuzzyVariables& variables) {
  return {variables.mean.best_label(pair.margin_mean), variables.std.best_label(pair.margin_std),
          variables.risk.best_label(pair.risk)};
}

Rule learn_rule(const DataPair& pair, const FuzzyVariables& variables) {
  validate(pair);
  const auto labels = classify(pair, variables);
  return {labels.mean.index, labels.std.index, labels.risk.index,
          labels.mean.degree * labels.std.degree * labels.risk.degree};
}

namespace {

bool replaces(const Rule& candidate, const Rule& incumbent, TiePolicy ties) {
  if (candidate.degree != incumbent.degree) return candidate.degree > incumbent.degree;
  switch (ties) {
    case TiePolicy::kLowerRisk:
      return candidate.risk_label < incumbent.risk_label;
    case TiePolicy::kHigherRisk:
      return candidate.risk_label > incumbent.risk_label;
    case TiePolicy::kFirstSeen:
      return false;
  }
  return false;
}

}  // namespace

std::vector<Rule> dedupe_rules(std::span<const Rule> rules, TiePolicy ties) {
  std::map<std::pair<std::size_t, std::size_t>, Rule> best;
  for (const auto& r : rules) {
    const auto [it, inserted] = best.try_emplace({r.mean_label, r.std_label}, r);
    if (!inserted && replaces(r, it->second, ties)) it->second = r;
  }
  std::vector<Rule> out;
  out.reserve(best.size());
  for (const auto& [key, rule] : best) out.push_back(rule);
  return out;
}

RuleSet dedupe(std::span<const Rule> rules, FuzzyVariables variables, TiePolicy ties) {
  return RuleSet(std::move(variables), dedupe_rules(rules, ties));
}

RuleSet learn_ruleset(std::span<const DataPair> pairs, FuzzyVariables variables,
                      const LearnOptions& options) {
  if (pairs.empty()) throw InputError("cannot learn rules from an empty dataset");
  std::vector<Rule> raw;
  raw.reserve(pairs.size());
  for (const auto& p : pairs) raw.push_back(learn_rule(p, variables));
  Provenance provenance{pairs.size(),
                        options.created.empty() ? utc_timestamp_now() : options.created};
  return RuleSet(std::move(variables), dedupe_rules(raw, options.ties), std::move(provenance));
}

double risk_from_rmse(double rmse_degrees) {
  if (!std::isfinite(rmse_degrees) || rmse_degrees < 0.0) {
    throw InputError("RMSE must be a non-negative finite number");
  }
  return std::min(100.0, 15.0 * rmse_degrees);
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace marginrisk
