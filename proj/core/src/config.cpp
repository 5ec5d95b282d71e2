#include "clv/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>

#include "clv/errors.hpp"
#include "clv/io.hpp"

namespace clv {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view text, std::string_view key) {
  const long long v = parse_integer(text, key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw InvalidArgument(std::string(key) + ": value out of range");
  return static_cast<int>(v);
}

std::uint64_t parse_seed(std::string_view text, std::string_view key) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw InvalidArgument(std::string(key) + ": '" + std::string(text) +
                          "' is not an unsigned 64-bit integer");
  return v;
}

std::vector<int> int_list(std::string_view text, std::string_view key) {
  std::vector<int> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_int(item, key));
  return out;
}

std::vector<double> double_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_double(item, key));
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& is) {
  KeyValueConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos)
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(line_no) + ": empty key");
    if (!cfg.values_.emplace(key, value).second)
      throw InvalidArgument("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  return parse(in);
}

const std::string& KeyValueConfig::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw InvalidArgument("missing config key '" + std::string(key) + "'");
  return it->second;
}

void KeyValueConfig::require_known(const std::set<std::string, std::less<>>& allowed) const {
  for (const auto& [key, value] : values_)
    if (!allowed.count(key)) throw InvalidArgument("unknown config key '" + key + "'");
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (item.empty()) throw InvalidArgument("empty entry in list '" + std::string(text) + "'");
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

GeneratorParams generator_params_from(const KeyValueConfig& config, GeneratorParams p) {
  config.require_known({"variables", "subjects", "factors", "k", "q", "seed", "m_distribution",
                        "epsilon_distribution"});
  if (config.has("variables")) p.num_variables = parse_int(config.get("variables"), "variables");
  if (config.has("subjects")) p.num_subjects = parse_int(config.get("subjects"), "subjects");
  if (config.has("factors")) p.num_factors = parse_int(config.get("factors"), "factors");
  if (config.has("k")) p.factor_strength = parse_double(config.get("k"), "k");
  if (config.has("q")) p.loading_floor = parse_double(config.get("q"), "q");
  if (config.has("seed")) p.seed = parse_seed(config.get("seed"), "seed");
  if (config.has("m_distribution"))
    p.m_distribution = parse_mean_distribution(config.get("m_distribution"));
  if (config.has("epsilon_distribution"))
    p.epsilon_distribution = parse_noise_distribution(config.get("epsilon_distribution"));
  return p;
}

GridConfig grid_config_from(const KeyValueConfig& config, GridConfig g) {
  config.require_known({"variables", "factors", "k", "replicates", "rv_counts", "base_seed",
                        "restarts", "subjects", "q", "m_distribution", "epsilon_distribution",
                        "descriptive"});
  if (config.has("variables")) g.variables_list = int_list(config.get("variables"), "variables");
  if (config.has("factors")) g.factors_list = int_list(config.get("factors"), "factors");
  if (config.has("k")) g.k_list = double_list(config.get("k"), "k");
  if (config.has("replicates")) g.replicates = parse_int(config.get("replicates"), "replicates");
  if (config.has("rv_counts")) g.rv_counts = int_list(config.get("rv_counts"), "rv_counts");
  if (config.has("base_seed")) g.base_seed = parse_seed(config.get("base_seed"), "base_seed");
  if (config.has("restarts")) g.restarts = parse_int(config.get("restarts"), "restarts");
  if (config.has("subjects")) g.subjects = parse_int(config.get("subjects"), "subjects");
  if (config.has("q")) g.loading_floor = parse_double(config.get("q"), "q");
  if (config.has("m_distribution"))
    g.m_distribution = parse_mean_distribution(config.get("m_distribution"));
  if (config.has("epsilon_distribution"))
    g.epsilon_distribution = parse_noise_distribution(config.get("epsilon_distribution"));
  if (config.has("descriptive")) {
    g.descriptive_cells.clear();
    const std::string& text = config.get("descriptive");
    if (trim(text) != "none") {
      for (const std::string& item : split_list(text)) {
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
          throw InvalidArgument("descriptive: expected I:J pairs, got '" + item + "'");
        g.descriptive_cells.emplace_back(parse_int(item.substr(0, colon), "descriptive"),
                                         parse_int(item.substr(colon + 1), "descriptive"));
      }
    }
  }
  return g;
}

}  // namespace clv
