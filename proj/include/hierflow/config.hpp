#pragma once

// Flat key=value run configuration.
//
//   # comment
//   model = kondo
//   couplings = -0.01, 0
//   steps = 500
//
// Recognised keys: model, couplings, steps, axes, range_i, range_j, resolution,
// slice, output, format, tol, seed_axes, seeds_per_axis, seed_range.

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hierflow {

struct ConfigValue {
  std::string text;
  int line = 0;  // 0 for values given on the command line
};

using ConfigMap = std::map<std::string, ConfigValue>;

/// Throws ConfigError on a malformed line, an unknown key or a repeated key.
ConfigMap parse_config(std::istream& in);
ConfigMap load_config_file(const std::string& path);

/// Later entries win.
ConfigMap merge_config(ConfigMap base, const ConfigMap& overrides);

struct RunConfig {
  std::string model;
  std::vector<double> couplings;
  int steps = 500;
  int axis_i = 0;
  int axis_j = 1;
  std::optional<std::pair<double, double>> range_i;
  std::optional<std::pair<double, double>> range_j;
  int resolution = 50;
  std::vector<double> slice;
  std::string output;
  std::string format = "csv";
  double tol = 1e-12;
  int seed_axes = 2;
  int seeds_per_axis = 9;
  std::optional<std::pair<double, double>> seed_range;
};

/// Converts and validates every present key. dimension_of maps a model name to
/// its coupling count and returns 0 for an unknown model.
RunConfig resolve_config(const ConfigMap& map, std::size_t (*dimension_of)(const std::string&));

std::vector<double> parse_number_list(const std::string& text, const std::string& key, int line);

}  // namespace hierflow
