#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace chargedrop::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("missing required key '" + key + "'");
  if (it->second.empty()) throw UsageError("missing value for key '" + key + "'");
  return it->second;
}

double RunConfig::number(const std::string& key) const {
  const std::string& s = text(key);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
    throw UsageError("key '" + key + "' expects a number, got '" + s + "'");
  }
  return v;
}

int RunConfig::integer(const std::string& key) const {
  const std::string& s = text(key);
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0' || v < 0 || v > 100000000) {
    throw UsageError("key '" + key + "' expects a non-negative integer, got '" + s + "'");
  }
  return int(v);
}

std::vector<double> RunConfig::number_list(const std::string& key) const {
  const std::string& s = text(key);
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') {
      throw UsageError("key '" + key + "' expects a comma-separated list of numbers");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("key '" + key + "' is empty");
  return out;
}

bool RunConfig::is_explicit(const std::string& key) const {
  return std::find(explicit_keys.begin(), explicit_keys.end(), key) != explicit_keys.end();
}

std::map<std::string, std::string> parse_config_stream(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string first;
  {
    std::ostringstream all;
    all << in.rdbuf();
    first = all.str();
  }
  const std::string body = first;
  const std::string head = trim(body.substr(0, body.find('\n')));
  if (!head.empty() && head.front() == '{') {
    try {
      const auto j = nlohmann::json::parse(body);
      for (const auto& [k, v] : j.at("metadata").at("config").items()) out[k] = v.get<std::string>();
    } catch (const std::exception& e) {
      throw UsageError(std::string("config: cannot read JSON metadata: ") + e.what());
    }
    return out;
  }
  const bool tool_output = head.rfind("# chargedrop", 0) == 0;
  std::istringstream lines(body);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::string t = trim(line);
    if (tool_output) {
      const std::string prefix = "# config.";
      if (t.rfind(prefix, 0) != 0) continue;
      t = t.substr(prefix.size());
    } else {
      const auto hash = t.find('#');
      if (hash != std::string::npos) t = trim(t.substr(0, hash));
      if (t.empty()) continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  return parse_config_stream(in);
}

std::string exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool echoed_key(const std::string& key) { return key != "out" && key != "config"; }

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& [k, v] : config.values()) {
    if (!echoed_key(k)) continue;
    for (char ch : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ull;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace chargedrop::cli
