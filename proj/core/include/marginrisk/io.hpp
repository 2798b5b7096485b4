#pragma once

// File formats:
//   flight log CSV   t,m1..mN[,roll_des,roll,pitch_des,pitch]
//   dataset CSV      margin_mean,margin_std,risk
//   risk CSV         t,margin_mean,margin_std,risk_inst,p_high,p_low,risk_acc
//   rule set JSON    {"variables", "rules", "provenance"}
//   decision map     JSON {"rows","cols","bounds","values","covered"} or CSV
//                    mean,std,risk,covered
// Numbers are written in shortest round-trip form.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "marginrisk/decision_map.hpp"
#include "marginrisk/learning.hpp"
#include "marginrisk/margin.hpp"
#include "marginrisk/pipeline.hpp"
#include "marginrisk/rule_set.hpp"

namespace marginrisk {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Throws ParseError (with the 1-based line) on a missing `t` or motor
/// column, malformed numbers, ragged rows or time running backwards.
std::vector<MotorFrame> parse_log(std::istream& in);
std::vector<MotorFrame> parse_log(const std::filesystem::path& path);
void write_log(std::ostream& out, std::span<const MotorFrame> frames);

std::vector<DataPair> read_dataset(std::istream& in);
std::vector<DataPair> read_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, std::span<const DataPair> pairs);

std::string to_json(const RuleSet& rules);
RuleSet rule_set_from_json(std::string_view text);
RuleSet load_rule_set(const std::filesystem::path& path);

std::string to_json(const DecisionMap& map);
DecisionMap decision_map_from_json(std::string_view text);
DecisionMap load_decision_map(const std::filesystem::path& path);
void write_decision_map_csv(std::ostream& out, const DecisionMap& map);

/// `with_source` appends a `source` column (rules, map or held).
void write_records(std::ostream& out, std::span<const RiskRecord> records, bool with_source = false);

/// Rule table: antecedent labels, consequent label and confidence degree.
std::string format_rule_table(const RuleSet& rules);

/// Writes `text` to `path`; throws InputError if the file cannot be opened.
void write_file(const std::filesystem::path& path, std::string_view text);
std::string read_file(const std::filesystem::path& path);

}  // namespace marginrisk
