#include "output.hpp"

#include <cmath>
#include <json.hpp>

namespace chargedrop::cli {

void Report::add_summary(const std::string& key, double value) {
  summary.emplace_back(key, exact(value));
}

void Report::add_summary(const std::string& key, const std::string& value) {
  summary.emplace_back(key, value);
}

void write_csv(std::ostream& out, const Report& report, const RunConfig& config) {
  out << "# " << tool_name << ' ' << tool_version << '\n';
  out << "# command=" << report.command << '\n';
  for (const auto& [k, v] : config.values()) {
    if (echoed_key(k)) out << "# config." << k << '=' << v << '\n';
  }
  out << "# spec_hash=" << config_hash(config) << '\n';
  for (const auto& [k, v] : report.notes) out << "# note." << k << '=' << v << '\n';
  for (const auto& [k, v] : report.summary) out << "# summary." << k << '=' << v << '\n';
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << (std::isnan(row[i]) ? std::string("nan") : exact(row[i]));
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Report& report, const RunConfig& config) {
  nlohmann::ordered_json meta;
  meta["tool"] = tool_name;
  meta["version"] = tool_version;
  meta["command"] = report.command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config.values()) {
    if (echoed_key(k)) cfg[k] = v;
  }
  meta["config"] = cfg;
  meta["spec_hash"] = config_hash(config);
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.notes) notes[k] = v;
  meta["notes"] = notes;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.summary) summary[k] = v;
  meta["summary"] = summary;
  meta["columns"] = report.columns;

  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::isfinite(row[i])) {
        rec[report.columns[i]] = row[i];
      } else {
        rec[report.columns[i]] = nullptr;
      }
    }
    records.push_back(rec);
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = meta;
  doc["records"] = records;
  out << doc.dump(2) << '\n';
}

}  // namespace chargedrop::cli
