#include "hierflow/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hierflow/config.hpp"
#include "hierflow/errors.hpp"
#include "hierflow/flow.hpp"
#include "hierflow/models.hpp"
#include "hierflow/rg_engine.hpp"
#include "hierflow/verify.hpp"

namespace hierflow {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t model_dimension(const std::string& model) {
  if (model == "graphene") return 7;
  if (model == "kondo") return 2;
  return 0;
}

void require_known_model(const std::string& model) {
  if (model_dimension(model) == 0) throw UsageError("unknown model '" + model + "' (expected graphene or kondo)");
}

/// Sends text to the output file if one was given, else to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  f << text;
}

void apply_thread_env() {
  const char* v = std::getenv(kThreadsEnv);
  if (v == nullptr || *v == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw ConfigError(std::string(kThreadsEnv) + " must be a positive integer, got '" + v + "'");
  }
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
}

/// Config file values with command-line flags layered on top.
struct ConfigSources {
  std::string file;
  std::map<std::string, std::string> flags;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option(flag, flags[key], help);
  }

  RunConfig resolve(const std::string& positional_model = "") const {
    ConfigMap merged = file.empty() ? ConfigMap{} : load_config_file(file);
    ConfigMap overrides;
    for (const auto& [k, v] : flags) {
      if (!v.empty()) overrides[k] = {v, 0};
    }
    if (!positional_model.empty()) overrides["model"] = {positional_model, 0};
    merged = merge_config(std::move(merged), overrides);
    RunConfig c = resolve_config(merged, model_dimension);
    if (c.model.empty()) throw ConfigError("field 'model' is required");
    return c;
  }
};

int cmd_beta(const std::string& model, const std::string& output, std::ostream& out, std::ostream& err) {
  require_known_model(model);
  const BetaMap& beta = beta_for(model);
  emit(output, beta.to_json().dump(2) + "\n", out);
  std::ostream& info = output.empty() ? err : out;
  const auto counts = beta.term_counts();
  info << "term counts:";
  for (std::size_t i = 0; i < counts.size(); ++i) info << " l" << i << "=" << counts[i];
  info << " total=" << beta.term_count() << "\n";
  info << "common-denominator terms: " << beta.common_denominator_term_count() << "\n";
  return kExitOk;
}

int cmd_flow(const ConfigSources& src, std::ostream& out) {
  const RunConfig c = src.resolve();
  if (c.couplings.empty()) throw ConfigError("field 'couplings' is required for flow");
  const CompiledBeta beta(beta_for(c.model));
  const Trajectory t = iterate_flow(beta, c.couplings, c.steps);
  const std::size_t steps = t.points.size() - 1;
  std::ostringstream s;
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = c.model;
    j["termination"] = to_string(t.reason);
    j["steps"] = steps;
    auto pts = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < t.points.size(); ++n) {
      pts.push_back({{"h", -static_cast<long>(n)}, {"l", t.points[n]}});
    }
    j["points"] = pts;
    s << j.dump(2) << "\n";
  } else {
    s << "h";
    for (std::size_t i = 0; i < beta.dimension(); ++i) s << ",l" << i;
    s << "\n";
    for (std::size_t n = 0; n < t.points.size(); ++n) {
      s << -static_cast<long>(n);
      for (double x : t.points[n]) s << "," << fmt(x);
      s << "\n";
    }
    s << "# termination=" << to_string(t.reason) << " steps=" << steps << "\n";
  }
  emit(c.output, s.str(), out);
  return kExitOk;
}

int cmd_fixed_points(const std::string& model, const ConfigSources& src, std::ostream& out) {
  if (!model.empty()) require_known_model(model);
  const RunConfig c = src.resolve(model);
  const auto dim = model_dimension(c.model);
  const auto [lo, hi] = c.seed_range.value_or(c.model == "graphene" ? std::pair{-0.5, 1.5} : std::pair{-1.0, 1.0});
  const auto axes = std::min<std::size_t>(static_cast<std::size_t>(c.seed_axes), dim);
  const CompiledBeta beta(beta_for(c.model));
  const FixedPointSearch search = find_fixed_points(beta, seed_grid(dim, axes, lo, hi, c.seeds_per_axis), c.tol);
  nlohmann::ordered_json j;
  j["model"] = c.model;
  const auto body = search.to_json();
  for (const auto& [k, v] : body.items()) j[k] = v;
  emit(c.output, j.dump(2) + "\n", out);
  return kExitOk;
}

GridSpec grid_for(const RunConfig& c) {
  GridSpec g;
  g.axis_i = c.axis_i;
  g.axis_j = c.axis_j;
  std::pair<double, double> ri{-1.0, 1.0};
  std::pair<double, double> rj{-1.0, 1.0};
  if (c.model == "kondo") {
    ri = {-1.0, 0.3};
    rj = {-0.05, 0.1};
    if (g.axis_i == 1) std::swap(ri, rj);
  } else if (c.axis_i == 0 || c.axis_j == 0) {
    (c.axis_i == 0 ? ri : rj) = {-0.5, 1.5};
    (c.axis_i == 0 ? rj : ri) = {-0.5, 0.5};
  }
  std::tie(g.lo_i, g.hi_i) = c.range_i.value_or(ri);
  std::tie(g.lo_j, g.hi_j) = c.range_j.value_or(rj);
  g.resolution = c.resolution;
  g.fixed_values = c.slice;
  return g;
}

int cmd_vector_field(const std::string& model, const ConfigSources& src, std::ostream& out) {
  if (!model.empty()) require_known_model(model);
  const RunConfig c = src.resolve(model);
  const GridSpec g = grid_for(c);
  const CompiledBeta beta(beta_for(c.model));
  const auto rows = vector_field_grid(beta, g);
  std::ostringstream s;
  if (c.format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back({fmt(r.li), fmt(r.lj), fmt(r.dir_i), fmt(r.dir_j), fmt(r.log10_mag)});
    nlohmann::ordered_json j;
    j["model"] = c.model;
    j["axes"] = {g.axis_i, g.axis_j};
    j["columns"] = {"li", "lj", "dir_i", "dir_j", "log10_mag"};
    j["rows"] = arr;
    s << j.dump(2) << "\n";
  } else {
    s << "li,lj,dir_i,dir_j,log10_mag\n";
    for (const auto& r : rows) {
      s << fmt(r.li) << "," << fmt(r.lj) << "," << fmt(r.dir_i) << "," << fmt(r.dir_j) << "," << fmt(r.log10_mag)
        << "\n";
    }
  }
  emit(c.output, s.str(), out);
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& output, std::ostream& out,
               std::ostream& err) {
  std::vector<CheckResult> checks;
  try {
    checks = run_verify_suite(suite, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto j = checks_to_json(checks);
  emit(output, j.dump(2) + "\n", out);
  bool ok = true;
  for (const auto& c : checks) {
    if (!c.passed) {
      err << "FAILED " << c.name << " error=" << fmt(c.error) << " tolerance=" << fmt(c.tolerance) << "\n";
      ok = false;
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_lattice(const std::string& kx, const std::string& ky, int resolution, const std::string& output,
                std::ostream& out) {
  if (resolution < 2) throw ConfigError("field 'resolution' must be at least 2");
  auto range = [](const std::string& text, const std::string& key, std::pair<double, double> fallback) {
    if (text.empty()) return fallback;
    const auto xs = parse_number_list(text, key, 0);
    if (xs.size() != 2 || !(xs[0] < xs[1])) throw ConfigError("field '" + key + "': expected 'lo,hi' with lo < hi");
    return std::pair{xs[0], xs[1]};
  };
  const auto& lc = lattice_constants();
  const auto [x0, x1] = range(kx, "kx_range", {0.0, 2.0 * lc.g1[0]});
  const auto [y0, y1] = range(ky, "ky_range", {lc.g2[1], lc.g1[1]});
  std::ostringstream s;
  s << "kx,ky,omega_re,omega_im,e_minus,e_plus\n";
  for (int b = 0; b < resolution; ++b) {
    const double y = y0 + (y1 - y0) * b / (resolution - 1);
    for (int a = 0; a < resolution; ++a) {
      const double x = x0 + (x1 - x0) * a / (resolution - 1);
      const auto w = omega(x, y);
      const auto [em, ep] = bands(x, y);
      s << fmt(x) << "," << fmt(y) << "," << fmt(w.real()) << "," << fmt(w.imag()) << "," << fmt(em) << ","
        << fmt(ep) << "\n";
    }
  }
  emit(output, s.str(), out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchical fermionic renormalization-group flows", "hierflow"};
  app.require_subcommand(1);

  std::string beta_model;
  std::string beta_output;
  auto* beta = app.add_subcommand("beta", "Exact beta map of a model as JSON");
  beta->add_option("model", beta_model, "graphene or kondo")->required();
  beta->add_option("-o,--output", beta_output, "Write JSON here instead of stdout");

  ConfigSources flow_src;
  auto* flow = app.add_subcommand("flow", "Iterate the flow from initial couplings");
  flow->add_option("-c,--config", flow_src.file, "key=value config file");
  flow_src.add(flow, "--model", "model", "graphene or kondo");
  flow_src.add(flow, "--couplings", "couplings", "Comma-separated initial couplings");
  flow_src.add(flow, "--steps", "steps", "Maximum number of steps");
  flow_src.add(flow, "-o,--output", "output", "Output path");
  flow_src.add(flow, "--format", "format", "csv or json");

  std::string fp_model;
  ConfigSources fp_src;
  auto* fixed = app.add_subcommand("fixed-points", "Locate and classify fixed points");
  fixed->add_option("model", fp_model, "graphene or kondo");
  fixed->add_option("-c,--config", fp_src.file, "key=value config file");
  fp_src.add(fixed, "--tol", "tol", "Residual tolerance");
  fp_src.add(fixed, "--seed-axes", "seed_axes", "Number of leading couplings seeded");
  fp_src.add(fixed, "--seeds-per-axis", "seeds_per_axis", "Seeds per seeded coupling");
  fp_src.add(fixed, "--seed-range", "seed_range", "lo,hi of the seed grid");
  fp_src.add(fixed, "-o,--output", "output", "Output path");

  std::string vf_model;
  ConfigSources vf_src;
  auto* field = app.add_subcommand("vector-field", "Displacement field on a 2D slice");
  field->add_option("model", vf_model, "graphene or kondo");
  field->add_option("-c,--config", vf_src.file, "key=value config file");
  vf_src.add(field, "--axes", "axes", "Two coupling indices, e.g. 0,1");
  vf_src.add(field, "--range-i", "range_i", "lo,hi along the first axis");
  vf_src.add(field, "--range-j", "range_j", "lo,hi along the second axis");
  vf_src.add(field, "--resolution", "resolution", "Samples per axis");
  vf_src.add(field, "--slice", "slice", "Values of all couplings off the plane");
  vf_src.add(field, "-o,--output", "output", "Output path");
  vf_src.add(field, "--format", "format", "csv or json");

  std::string suite = "all";
  std::uint64_t seed = 20240611;
  std::string verify_output;
  auto* verify = app.add_subcommand("verify", "Run the free-fermion and Grassmann self-checks");
  verify->add_option("suite", suite, "all, grassmann or fock");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("-o,--output", verify_output, "Output path");

  std::string kx_range;
  std::string ky_range;
  int lattice_resolution = 50;
  std::string lattice_output;
  auto* lattice = app.add_subcommand("lattice", "Honeycomb band structure on a k grid");
  lattice->add_option("--kx-range", kx_range, "lo,hi");
  lattice->add_option("--ky-range", ky_range, "lo,hi");
  lattice->add_option("--resolution", lattice_resolution, "Samples per axis");
  lattice->add_option("-o,--output", lattice_output, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    apply_thread_env();
    if (*beta) return cmd_beta(beta_model, beta_output, out, err);
    if (*flow) return cmd_flow(flow_src, out);
    if (*fixed) return cmd_fixed_points(fp_model, fp_src, out);
    if (*field) return cmd_vector_field(vf_model, vf_src, out);
    if (*verify) return cmd_verify(suite, seed, verify_output, out, err);
    if (*lattice) return cmd_lattice(kx_range, ky_range, lattice_resolution, lattice_output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitUsage;
}

}  // namespace hierflow
