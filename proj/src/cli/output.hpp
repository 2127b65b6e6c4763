#ifndef CHARGEDROP_CLI_OUTPUT_HPP
#define CHARGEDROP_CLI_OUTPUT_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace chargedrop::cli {

inline constexpr const char* tool_name = "chargedrop";
inline constexpr const char* tool_version = "1.0.0";

/// Tabular result of one subcommand plus scalar summary entries. NaN cells mean
/// "not available for this row" and are written as nan (CSV) or null (JSON).
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Ordered (key, value) pairs; values are already formatted text.
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::pair<std::string, std::string>> notes;

  void add_summary(const std::string& key, double value);
  void add_summary(const std::string& key, const std::string& value);
};

void write_csv(std::ostream& out, const Report& report, const RunConfig& config);
void write_json(std::ostream& out, const Report& report, const RunConfig& config);

}  // namespace chargedrop::cli

#endif  // CHARGEDROP_CLI_OUTPUT_HPP
