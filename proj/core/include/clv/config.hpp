#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "clv/datagen.hpp"
#include "clv/experiment.hpp"

namespace clv {

/// Flat `key = value` file. Blank lines and lines starting with '#' are
/// ignored; keys are case-sensitive and may appear once. List values are
/// comma-separated.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& is);
  static KeyValueConfig load(const std::string& path);

  bool has(std::string_view key) const { return values_.count(std::string(key)) != 0; }
  const std::string& get(std::string_view key) const;
  const std::map<std::string, std::string, std::less<>>& entries() const { return values_; }

  // Throws InvalidArgument for the first key outside `allowed`.
  void require_known(const std::set<std::string, std::less<>>& allowed) const;

  void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

std::vector<std::string> split_list(std::string_view text);

// Keys: variables, subjects, factors, k, q, seed, m_distribution,
// epsilon_distribution. Missing keys keep the values in `base`.
GeneratorParams generator_params_from(const KeyValueConfig& config, GeneratorParams base = {});

// Keys: variables, factors, k, replicates, rv_counts, base_seed, restarts,
// subjects, q, m_distribution, epsilon_distribution, descriptive (I:J list).
GridConfig grid_config_from(const KeyValueConfig& config, GridConfig base = {});

}  // namespace clv
