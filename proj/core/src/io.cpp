#include "marginrisk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "marginrisk/errors.hpp"

namespace marginrisk {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line, std::string_view column) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError("bad number '" + std::string(field) + "' in column '" + std::string(column) + "'",
                     line);
  }
  return v;
}

// Reads a CSV with a header row. Calls `row(fields, line)` for each non-blank
// data line after checking its width against the header.
template <typename RowFn>
std::vector<std::string> read_csv(std::istream& in, RowFn&& row) {
  std::string text;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, text)) {
    ++line_no;
    if (line_no == 1 && text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
    if (trim(text).empty()) continue;
    const auto fields = split(text);
    if (header.empty()) {
      for (auto f : fields) header.emplace_back(f);
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    row(header, fields, line_no);
  }
  if (header.empty()) throw ParseError("missing header row", line_no == 0 ? 1 : line_no);
  return header;
}

std::map<std::string, std::size_t, std::less<>> column_index(const std::vector<std::string>& header) {
  std::map<std::string, std::size_t, std::less<>> idx;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!idx.emplace(header[i], i).second) throw ParseError("duplicate column '" + header[i] + "'", 1);
  }
  return idx;
}

// Index of motor column `m<k>` or nullopt when the name is not of that form.
std::optional<std::size_t> motor_number(std::string_view name) {
  if (name.size() < 2 || name[0] != 'm') return std::nullopt;
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
  if (ec != std::errc{} || ptr != name.data() + name.size()) return std::nullopt;
  return k;
}

struct LogLayout {
  std::size_t t = 0;
  std::vector<std::size_t> motors;
  std::optional<std::array<std::size_t, 4>> attitude;
};

LogLayout resolve_log_layout(const std::vector<std::string>& header) {
  const auto idx = column_index(header);
  LogLayout layout;
  const auto t = idx.find("t");
  if (t == idx.end()) throw ParseError("missing column 't'", 1);
  layout.t = t->second;

  std::size_t highest = 0;
  for (const auto& name : header) {
    if (auto k = motor_number(name)) highest = std::max(highest, *k);
  }
  if (highest == 0) throw ParseError("missing column 'm1'", 1);
  for (std::size_t k = 1; k <= highest; ++k) {
    const auto it = idx.find("m" + std::to_string(k));
    if (it == idx.end()) throw ParseError("missing column 'm" + std::to_string(k) + "'", 1);
    layout.motors.push_back(it->second);
  }

  static constexpr std::array<const char*, 4> kAttitude{"roll_des", "roll", "pitch_des", "pitch"};
  std::size_t present = 0;
  std::array<std::size_t, 4> cols{};
  for (std::size_t i = 0; i < kAttitude.size(); ++i) {
    if (const auto it = idx.find(kAttitude[i]); it != idx.end()) {
      cols[i] = it->second;
      ++present;
    }
  }
  if (present == kAttitude.size()) {
    layout.attitude = cols;
  } else if (present != 0) {
    for (const char* name : kAttitude) {
      if (!idx.contains(name)) throw ParseError(std::string("missing column '") + name + "'", 1);
    }
  }
  return layout;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::vector<MotorFrame> parse_log(std::istream& in) {
  std::vector<MotorFrame> frames;
  std::optional<LogLayout> layout;
  const auto header = read_csv(in, [&](const std::vector<std::string>& head,
                                       const std::vector<std::string_view>& fields, std::size_t line) {
    if (!layout) layout = resolve_log_layout(head);
    MotorFrame f;
    f.t = parse_number(fields[layout->t], line, "t");
    if (!frames.empty() && f.t < frames.back().t) throw ParseError("time goes backwards", line);
    f.commands.reserve(layout->motors.size());
    for (std::size_t col : layout->motors) f.commands.push_back(parse_number(fields[col], line, head[col]));
    if (layout->attitude) {
      const auto& a = *layout->attitude;
      f.attitude = Attitude{parse_number(fields[a[0]], line, "roll_des"), parse_number(fields[a[1]], line, "roll"),
                            parse_number(fields[a[2]], line, "pitch_des"),
                            parse_number(fields[a[3]], line, "pitch")};
    }
    frames.push_back(std::move(f));
  });
  if (!layout) resolve_log_layout(header);  // report header problems on empty logs too
  return frames;
}

std::vector<MotorFrame> parse_log(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_log(in);
}

void write_log(std::ostream& out, std::span<const MotorFrame> frames) {
  if (frames.empty()) throw InputError("no frames to write");
  const std::size_t n = frames.front().commands.size();
  const bool attitude = frames.front().attitude.has_value();
  out << 't';
  for (std::size_t k = 1; k <= n; ++k) out << ",m" << k;
  if (attitude) out << ",roll_des,roll,pitch_des,pitch";
  out << '\n';
  for (const auto& f : frames) {
    if (f.commands.size() != n || f.attitude.has_value() != attitude) {
      throw InputError("frames disagree on motor count or attitude channels");
    }
    out << format_double(f.t);
    for (double c : f.commands) out << ',' << format_double(c);
    if (attitude) {
      const auto& a = *f.attitude;
      out << ',' << format_double(a.roll_des) << ',' << format_double(a.roll) << ','
          << format_double(a.pitch_des) << ',' << format_double(a.pitch);
    }
    out << '\n';
  }
}

std::vector<DataPair> read_dataset(std::istream& in) {
  std::vector<DataPair> pairs;
  std::array<std::size_t, 3> cols{};
  bool resolved = false;
  auto resolve = [&](const std::vector<std::string>& head) {
    const auto idx = column_index(head);
    static constexpr std::array<const char*, 3> kNames{"margin_mean", "margin_std", "risk"};
    for (std::size_t i = 0; i < kNames.size(); ++i) {
      const auto it = idx.find(kNames[i]);
      if (it == idx.end()) throw ParseError(std::string("missing column '") + kNames[i] + "'", 1);
      cols[i] = it->second;
    }
    resolved = true;
  };
  const auto header = read_csv(in, [&](const std::vector<std::string>& head,
                                       const std::vector<std::string_view>& fields, std::size_t line) {
    if (!resolved) resolve(head);
    DataPair p{parse_number(fields[cols[0]], line, "margin_mean"),
               parse_number(fields[cols[1]], line, "margin_std"), parse_number(fields[cols[2]], line, "risk")};
    try {
      validate(p);
    } catch (const InputError& e) {
      throw ParseError(e.what(), line);
    }
    pairs.push_back(p);
  });
  if (!resolved) resolve(header);
  return pairs;
}

std::vector<DataPair> read_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, std::span<const DataPair> pairs) {
  out << "margin_mean,margin_std,risk\n";
  for (const auto& p : pairs) {
    out << format_double(p.margin_mean) << ',' << format_double(p.margin_std) << ','
        << format_double(p.risk) << '\n';
  }
}

namespace {

json variable_to_json(const LinguisticVariable& v) {
  json sets = json::array();
  for (const auto& s : v.sets()) {
    const auto& c = s.corners();
    sets.push_back({{"label", s.label()}, {"corners", {c[0], c[1], c[2], c[3]}}});
  }
  return {{"name", v.name()}, {"universe", {v.lo(), v.hi()}}, {"sets", std::move(sets)}};
}

LinguisticVariable variable_from_json(const json& j) {
  std::vector<FuzzySet> sets;
  for (const auto& s : j.at("sets")) {
    const auto c = s.at("corners").get<std::vector<double>>();
    if (c.size() != 4) throw ParseError("fuzzy set corners must have four entries");
    sets.emplace_back(s.at("label").get<std::string>(), c[0], c[1], c[2], c[3]);
  }
  const auto u = j.at("universe").get<std::vector<double>>();
  if (u.size() != 2) throw ParseError("universe must be [lo, hi]");
  return LinguisticVariable(j.at("name").get<std::string>(), u[0], u[1], std::move(sets));
}

template <typename Fn>
auto parse_json_document(std::string_view text, std::string_view what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const RuleSet& rules) {
  const auto& vars = rules.variables();
  json rs = json::array();
  for (const auto& r : rules.rules()) {
    rs.push_back({{"mean", vars.mean[r.mean_label].label()},
                  {"std", vars.std[r.std_label].label()},
                  {"risk", vars.risk[r.risk_label].label()},
                  {"degree", r.degree}});
  }
  json doc{{"variables",
            {{"mean", variable_to_json(vars.mean)},
             {"std", variable_to_json(vars.std)},
             {"risk", variable_to_json(vars.risk)}}},
           {"rules", std::move(rs)},
           {"provenance",
            {{"pair_count", rules.provenance().pair_count}, {"created", rules.provenance().created}}}};
  return doc.dump(2) + "\n";
}

RuleSet rule_set_from_json(std::string_view text) {
  return parse_json_document(text, "rule set", [](const json& doc) {
    const auto& jv = doc.at("variables");
    FuzzyVariables vars{variable_from_json(jv.at("mean")), variable_from_json(jv.at("std")),
                        variable_from_json(jv.at("risk"))};
    std::vector<Rule> rules;
    for (const auto& r : doc.at("rules")) {
      rules.push_back({vars.mean.index_of(r.at("mean").get<std::string>()),
                       vars.std.index_of(r.at("std").get<std::string>()),
                       vars.risk.index_of(r.at("risk").get<std::string>()), r.at("degree").get<double>()});
    }
    Provenance prov;
    if (doc.contains("provenance")) {
      const auto& p = doc.at("provenance");
      prov.pair_count = p.value("pair_count", std::size_t{0});
      prov.created = p.value("created", std::string{});
    }
    return RuleSet(std::move(vars), std::move(rules), std::move(prov));
  });
}

RuleSet load_rule_set(const std::filesystem::path& path) { return rule_set_from_json(read_file(path)); }

std::string to_json(const DecisionMap& map) {
  json covered = json::array();
  for (bool c : map.covered()) covered.push_back(c ? 1 : 0);
  json doc{{"rows", map.rows()},
           {"cols", map.cols()},
           {"bounds",
            {{"mean", {map.mean_bounds().lo, map.mean_bounds().hi}},
             {"std", {map.std_bounds().lo, map.std_bounds().hi}}}},
           {"layout", "row-major, rows along margin_std, columns along margin_mean"},
           {"values", map.values()},
           {"covered", std::move(covered)}};
  return doc.dump() + "\n";
}

DecisionMap decision_map_from_json(std::string_view text) {
  return parse_json_document(text, "decision map", [](const json& doc) {
    const auto mb = doc.at("bounds").at("mean").get<std::vector<double>>();
    const auto sb = doc.at("bounds").at("std").get<std::vector<double>>();
    if (mb.size() != 2 || sb.size() != 2) throw ParseError("bounds must be [lo, hi] pairs");
    std::vector<bool> covered;
    for (const auto& c : doc.at("covered")) covered.push_back(c.get<int>() != 0);
    return DecisionMap(doc.at("rows").get<std::size_t>(), doc.at("cols").get<std::size_t>(),
                       {mb[0], mb[1]}, {sb[0], sb[1]}, doc.at("values").get<std::vector<double>>(),
                       std::move(covered));
  });
}

DecisionMap load_decision_map(const std::filesystem::path& path) {
  return decision_map_from_json(read_file(path));
}

void write_decision_map_csv(std::ostream& out, const DecisionMap& map) {
  out << "mean,std,risk,covered\n";
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      out << format_double(map.mean_at(c)) << ',' << format_double(map.std_at(r)) << ','
          << format_double(map.value(r, c)) << ',' << (map.is_covered(r, c) ? 1 : 0) << '\n';
    }
  }
}

void write_records(std::ostream& out, std::span<const RiskRecord> records, bool with_source) {
  out << "t,margin_mean,margin_std,risk_inst,p_high,p_low,risk_acc";
  if (with_source) out << ",source";
  out << '\n';
  for (const auto& r : records) {
    out << format_double(r.t) << ',' << format_double(r.margin_mean) << ',' << format_double(r.margin_std)
        << ',' << format_double(r.risk_inst) << ',' << format_double(r.p_high) << ','
        << format_double(r.p_low) << ',' << format_double(r.risk_acc);
    if (with_source) {
      switch (r.source) {
        case RiskSource::kRules: out << ",rules"; break;
        case RiskSource::kMap: out << ",map"; break;
        case RiskSource::kHeld: out << ",held"; break;
      }
    }
    out << '\n';
  }
}

std::string format_rule_table(const RuleSet& rules) {
  const auto& vars = rules.variables();
  auto pretty = [](std::string label) {
    for (auto& ch : label) ch = ch == '_' ? ' ' : static_cast<char>(std::tolower(ch));
    if (!label.empty()) label[0] = static_cast<char>(std::toupper(label[0]));
    return label;
  };
  std::ostringstream out;
  out << std::left << std::setw(12) << "Margin" << std::setw(12) << "Margin STD" << std::setw(12)
      << "Risk" << "Confidence degree\n";
  // Highest margin first, matching the usual presentation of the table.
  for (auto it = rules.rules().rbegin(); it != rules.rules().rend(); ++it) {
    out << std::setw(12) << pretty(vars.mean[it->mean_label].label()) << std::setw(12)
        << pretty(vars.std[it->std_label].label()) << std::setw(12) << pretty(vars.risk[it->risk_label].label())
        << std::fixed << std::setprecision(2) << it->degree << '\n';
  }
  return out.str();
}

}  // namespace marginrisk
