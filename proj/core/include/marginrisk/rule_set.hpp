#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "marginrisk/fuzzy.hpp"

namespace marginrisk {

/// IF mean is `mean_label` AND std is `std_label` THEN risk is `risk_label`.
/// Labels are indices into the corresponding variable of the owning RuleSet.
struct Rule {
  std::size_t mean_label = 0;
  std::size_t std_label = 0;
  std::size_t risk_label = 0;
  double degree = 1.0;

  bool operator==(const Rule&) const = default;
};

struct Provenance {
  std::size_t pair_count = 0;
  std::string created;  // ISO-8601 UTC, may be empty

  bool operator==(const Provenance&) const = default;
};

/// Rules plus the variables their labels refer to. Equality ignores
/// provenance.
class RuleSet {
 public:
  /// Throws ConfigError when a label index is out of range, a degree lies
  /// outside (0, 1], or two rules share an antecedent pair.
  RuleSet(FuzzyVariables variables, std::vector<Rule> rules, Provenance provenance = {});

  const FuzzyVariables& variables() const noexcept { return variables_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  bool empty() const noexcept { return rules_.empty(); }
  std::size_t size() const noexcept { return rules_.size(); }

  /// Builds a rule from label names, e.g. {"LOW", "HIGH", "VERY_HIGH", 0.84}.
  Rule make_rule(const std::string& mean, const std::string& std, const std::string& risk,
                 double degree) const;

  bool operator==(const RuleSet& other) const {
    return variables_ == other.variables_ && rules_ == other.rules_;
  }

 private:
  FuzzyVariables variables_;
  std::vector<Rule> rules_;
  Provenance provenance_;
};

/// The ten rules and confidence degrees reported for the simulation campaign,
/// over default_variables().
RuleSet published_rule_set();

}  // namespace marginrisk
