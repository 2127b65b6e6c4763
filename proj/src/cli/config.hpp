#ifndef CHARGEDROP_CLI_CONFIG_HPP
#define CHARGEDROP_CLI_CONFIG_HPP

#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chargedrop::cli {

/// Bad flags, unreadable or malformed config, missing keys. Exit code 2.
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Resolved key=value configuration of one run. Values keep their textual form
/// so an echoed header re-parses to bit-identical doubles.
class RunConfig {
public:
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }
  /// Keys that were supplied by the user (file or flags) rather than defaulted.
  std::vector<std::string> explicit_keys;
  bool is_explicit(const std::string& key) const;

private:
  std::map<std::string, std::string> values_;
};

/// Flat key=value lines with '#' comments. An output file written by this tool
/// is also accepted: its "# config." header lines (CSV) or metadata.config
/// object (JSON) are read back.
std::map<std::string, std::string> parse_config_stream(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Formats a double so that parsing the text returns the same bits.
std::string exact(double x);

/// Keys echoed into output metadata. "out" and "config" only steer where
/// output goes; echoing them would make a re-run overwrite its own input.
bool echoed_key(const std::string& key);

/// 64-bit FNV-1a of the canonical "key=value\n" listing of the echoed keys.
std::string config_hash(const RunConfig& config);

}  // namespace chargedrop::cli

#endif  // CHARGEDROP_CLI_CONFIG_HPP
