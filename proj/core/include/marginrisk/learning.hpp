#pragma once

// Rule learning from numerical (margin mean, margin std, risk) data pairs:
// each pair becomes one rule labelled by its best-matching fuzzy sets, and
// conflicting rules are resolved by keeping the one with the largest degree.

#include <span>
#include <string>
#include <vector>

#include "marginrisk/rule_set.hpp"

namespace marginrisk {

struct DataPair {
  double margin_mean = 0.0;
  double margin_std = 0.0;
  double risk = 0.0;  // %

  bool operator==(const DataPair&) const = default;
};

/// Throws InputError when a field is non-finite or out of range.
void validate(const DataPair& pair);

/// Best-matching label and its membership for each of the three values.
struct PairLabels {
  LabelDegree mean;
  LabelDegree std;
  LabelDegree risk;
};

PairLabels classify(const DataPair& pair, const FuzzyVariables& variables);

/// One rule per pair; its degree is the product of the three winning
/// memberships. Membership ties resolve to the lower-index label.
Rule learn_rule(const DataPair& pair, const FuzzyVariables& variables);

/// How to break a tie between two conflicting rules of equal degree.
enum class TiePolicy {
  kLowerRisk,   // keep the lower-risk consequent
  kHigherRisk,  // keep the higher-risk consequent
  kFirstSeen,   // keep whichever came first (order dependent)
};

/// Keeps the highest-degree rule per antecedent pair, ordered by antecedent
/// indices.
std::vector<Rule> dedupe_rules(std::span<const Rule> rules, TiePolicy ties = TiePolicy::kLowerRisk);

RuleSet dedupe(std::span<const Rule> rules, FuzzyVariables variables,
               TiePolicy ties = TiePolicy::kLowerRisk);

struct LearnOptions {
  TiePolicy ties = TiePolicy::kLowerRisk;
  /// Provenance timestamp; filled with the current UTC time when empty.
  std::string created;
};

/// Throws InputError on an empty dataset or an invalid pair.
RuleSet learn_ruleset(std::span<const DataPair> pairs, FuzzyVariables variables,
                      const LearnOptions& options = {});

/// Risk label for a flight with the given attitude RMSE (degrees):
/// min(100, 15 * rmse), which puts a 5 degree RMSE at the HIGH peak.
double risk_from_rmse(double rmse_degrees);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp_now();

}  // namespace marginrisk
