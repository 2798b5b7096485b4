#include "marginrisk/rule_set.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "marginrisk/errors.hpp"

namespace marginrisk {

RuleSet::RuleSet(FuzzyVariables variables, std::vector<Rule> rules, Provenance provenance)
    : variables_(std::move(variables)), rules_(std::move(rules)), provenance_(std::move(provenance)) {
  for (const auto& r : rules_) {
    if (r.mean_label >= variables_.mean.size() || r.std_label >= variables_.std.size() ||
        r.risk_label >= variables_.risk.size()) {
      throw ConfigError("rule refers to a label that does not exist");
    }
    if (!(r.degree > 0.0 && r.degree <= 1.0)) {
      throw ConfigError("rule degree must lie in (0, 1]");
    }
  }
  std::stable_sort(rules_.begin(), rules_.end(), [](const Rule& a, const Rule& b) {
    return std::tie(a.mean_label, a.std_label) < std::tie(b.mean_label, b.std_label);
  });
  for (std::size_t i = 1; i < rules_.size(); ++i) {
    if (rules_[i].mean_label == rules_[i - 1].mean_label &&
        rules_[i].std_label == rules_[i - 1].std_label) {
      throw ConfigError("two rules share the antecedent (" +
                        variables_.mean[rules_[i].mean_label].label() + ", " +
                        variables_.std[rules_[i].std_label].label() + ")");
    }
  }
}

Rule RuleSet::make_rule(const std::string& mean, const std::string& std, const std::string& risk,
                        double degree) const {
  return {variables_.mean.index_of(mean), variables_.std.index_of(std),
          variables_.risk.index_of(risk), degree};
}

RuleSet published_rule_set() {
  struct Row {
    const char* mean;
    const char* std;
    const char* risk;
    double degree;
  };
  static constexpr Row kRows[] = {
      {"HIGH", "HIGH", "VERY_LOW", 0.23},      {"HIGH", "LOW", "VERY_LOW", 0.88},
      {"HIGH", "MEDIUM", "VERY_LOW", 0.76},    {"MEDIUM", "HIGH", "VERY_LOW", 0.63},
      {"MEDIUM", "LOW", "VERY_LOW", 0.41},     {"MEDIUM", "MEDIUM", "LOW", 0.73},
      {"LOW", "HIGH", "VERY_HIGH", 0.84},      {"LOW", "MEDIUM", "MEDIUM", 0.64},
      {"VERY_LOW", "HIGH", "VERY_HIGH", 1.0},  {"VERY_LOW", "MEDIUM", "VERY_HIGH", 0.35},
  };
  auto vars = default_variables();
  std::vector<Rule> rules;
  for (const auto& row : kRows) {
    rules.push_back({vars.mean.index_of(row.mean), vars.std.index_of(row.std),
                     vars.risk.index_of(row.risk), row.degree});
  }
  return RuleSet(std::move(vars), std::move(rules), {385, ""});
}

}  // namespace marginrisk
