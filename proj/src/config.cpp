#include "hierflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "hierflow/errors.hpp"

namespace hierflow {
namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {"model",  "couplings", "steps",     "axes",      "range_i",
                                             "range_j", "resolution", "slice",   "output",    "format",
                                             "tol",    "seed_axes", "seeds_per_axis", "seed_range"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& key, int line) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError("field '" + key + "': '" + t + "' is not a finite number", line);
  }
  return v;
}

int parse_int(const std::string& text, const std::string& key, int line) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("field '" + key + "': '" + t + "' is not an integer", line);
  }
  return v;
}

std::pair<double, double> parse_range(const ConfigValue& v, const std::string& key) {
  const auto xs = parse_number_list(v.text, key, v.line);
  if (xs.size() != 2 || !(xs[0] < xs[1])) {
    throw ConfigError("field '" + key + "': expected 'lo,hi' with lo < hi", v.line);
  }
  return {xs[0], xs[1]};
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text, const std::string& key, int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma - start), key, line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ConfigMap parse_config(std::istream& in) {
  ConfigMap map;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + body + "'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (known_keys().count(key) == 0) throw ConfigError("unknown field '" + key + "'", line);
    if (value.empty()) throw ConfigError("field '" + key + "' has no value", line);
    if (map.count(key) != 0) {
      throw ConfigError("field '" + key + "' repeated (first on line " + std::to_string(map[key].line) + ")", line);
    }
    map[key] = {value, line};
  }
  return map;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse_config(in);
}

ConfigMap merge_config(ConfigMap base, const ConfigMap& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
  return base;
}

RunConfig resolve_config(const ConfigMap& map, std::size_t (*dimension_of)(const std::string&)) {
  RunConfig c;
  auto get = [&](const std::string& key) -> const ConfigValue* {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
  };
  std::size_t dim = 0;
  if (const auto* v = get("model")) {
    c.model = v->text;
    dim = dimension_of(c.model);
    if (dim == 0) throw ConfigError("field 'model': unknown model '" + c.model + "' (expected graphene or kondo)", v->line);
  }
  auto require_model = [&](const std::string& key, int line) {
    if (dim == 0) throw ConfigError("field '" + key + "' needs a model", line);
  };
  if (const auto* v = get("couplings")) {
    require_model("couplings", v->line);
    c.couplings = parse_number_list(v->text, "couplings", v->line);
    if (c.couplings.size() != dim) {
      throw ConfigError("field 'couplings': model " + c.model + " has " + std::to_string(dim) + " couplings, got " +
                            std::to_string(c.couplings.size()),
                        v->line);
    }
  }
  if (const auto* v = get("steps")) {
    c.steps = parse_int(v->text, "steps", v->line);
    if (c.steps < 1) throw ConfigError("field 'steps' must be at least 1", v->line);
  }
  if (const auto* v = get("axes")) {
    require_model("axes", v->line);
    const auto xs = parse_number_list(v->text, "axes", v->line);
    if (xs.size() != 2 || xs[0] != std::floor(xs[0]) || xs[1] != std::floor(xs[1]) || xs[0] < 0 || xs[1] < 0 ||
        xs[0] >= static_cast<double>(dim) || xs[1] >= static_cast<double>(dim) || xs[0] == xs[1]) {
      throw ConfigError("field 'axes': expected two distinct coupling indices below " + std::to_string(dim), v->line);
    }
    c.axis_i = static_cast<int>(xs[0]);
    c.axis_j = static_cast<int>(xs[1]);
  }
  if (const auto* v = get("range_i")) c.range_i = parse_range(*v, "range_i");
  if (const auto* v = get("range_j")) c.range_j = parse_range(*v, "range_j");
  if (const auto* v = get("seed_range")) c.seed_range = parse_range(*v, "seed_range");
  if (const auto* v = get("resolution")) {
    c.resolution = parse_int(v->text, "resolution", v->line);
    if (c.resolution < 2) throw ConfigError("field 'resolution' must be at least 2", v->line);
  }
  if (const auto* v = get("slice")) {
    require_model("slice", v->line);
    c.slice = parse_number_list(v->text, "slice", v->line);
    if (c.slice.size() != dim) {
      throw ConfigError("field 'slice': expected " + std::to_string(dim) + " values", v->line);
    }
  }
  if (const auto* v = get("output")) c.output = v->text;
  if (const auto* v = get("format")) {
    if (v->text != "csv" && v->text != "json") throw ConfigError("field 'format': expected csv or json", v->line);
    c.format = v->text;
  }
  if (const auto* v = get("tol")) {
    c.tol = parse_double(v->text, "tol", v->line);
    if (!(c.tol > 0)) throw ConfigError("field 'tol' must be positive", v->line);
  }
  if (const auto* v = get("seed_axes")) {
    require_model("seed_axes", v->line);
    c.seed_axes = parse_int(v->text, "seed_axes", v->line);
    if (c.seed_axes < 1 || static_cast<std::size_t>(c.seed_axes) > dim) {
      throw ConfigError("field 'seed_axes' must lie in [1, " + std::to_string(dim) + "]", v->line);
    }
  }
  if (const auto* v = get("seeds_per_axis")) {
    c.seeds_per_axis = parse_int(v->text, "seeds_per_axis", v->line);
    if (c.seeds_per_axis < 1) throw ConfigError("field 'seeds_per_axis' must be at least 1", v->line);
  }
  return c;
}

}  // namespace hierflow
