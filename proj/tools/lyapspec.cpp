#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lyapspec/cocycle.hpp"
#include "lyapspec/csv.hpp"
#include "lyapspec/map.hpp"
#include "lyapspec/pressure.hpp"
#include "lyapspec/pullback.hpp"
#include "lyapspec/spectrum.hpp"
#include "lyapspec/verify.hpp"

namespace {

using namespace lyapspec;

struct RunConfig {
  std::string command;
  std::string map_spec = "two-slope";
  std::string out_prefix = "";
  std::string format = "csv";
  int threads = 1;
  std::uint64_t seed = 42;
  double t_min = -2.0, t_max = 2.0;
  int grid = 81;
  int depth = 12;
  double x = 0.3, y = 0.3, r = 0.05;
  double sigma = 0.5;
  int n = 500;
  std::string suite = "all";

  std::string to_json() const {
    std::ostringstream os;
    os << "{\n"
       << "  \"command\": \"" << command << "\",\n"
       << "  \"map\": \"" << map_spec << "\",\n"
       << "  \"format\": \"" << format << "\",\n"
       << "  \"threads\": " << threads << ",\n"
       << "  \"seed\": " << seed << ",\n"
       << "  \"t_min\": " << format_number(t_min) << ",\n"
       << "  \"t_max\": " << format_number(t_max) << ",\n"
       << "  \"grid\": " << grid << ",\n"
       << "  \"depth\": " << depth << ",\n"
       << "  \"x\": " << format_number(x) << ",\n"
       << "  \"y\": " << format_number(y) << ",\n"
       << "  \"r\": " << format_number(r) << ",\n"
       << "  \"sigma\": " << format_number(sigma) << ",\n"
       << "  \"n\": " << n << ",\n"
       << "  \"suite\": \"" << suite << "\"\n"
       << "}\n";
    return os.str();
  }
};

MultimodalMap load_map(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return MultimodalMap::from_json_file(spec);
  return MultimodalMap::builtin(spec);
}

void write_sidecar(const RunConfig& cfg, const std::string& artifact) {
  std::ofstream out(artifact + ".config.json");
  out << cfg.to_json();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgs("cannot open output file '" + path + "'");
  out << text;
}

int cmd_pressure(const RunConfig& cfg) {
  auto map = load_map(cfg.map_spec);

  // optional memoization keyed by map name + parameters
  std::string cache_dir;
  if (const char* c = std::getenv("LYAPSPEC_CACHE")) cache_dir = c;
  std::string key;
  if (!cache_dir.empty()) {
    std::ostringstream ks;
    ks << map.name() << '|' << format_number(cfg.t_min) << '|'
       << format_number(cfg.t_max) << '|' << cfg.grid << '|' << cfg.depth;
    key = cache_dir + "/pressure-" + std::to_string(fnv1a(ks.str())) + ".json";
  }

  std::string csv_path = cfg.out_prefix + "pressure.csv";
  std::string summary_path = cfg.out_prefix + "summary.json";
  if (!key.empty() && std::filesystem::exists(key) &&
      std::filesystem::exists(key + ".csv")) {
    std::filesystem::copy_file(key + ".csv", csv_path,
                               std::filesystem::copy_options::overwrite_existing);
    std::ifstream in(key);
    std::stringstream ss;
    ss << in.rdbuf();
    write_text(summary_path, ss.str());
  } else {
    auto curve = build_pressure_curve(map, cfg.t_min, cfg.t_max, cfg.grid,
                                      cfg.depth, cfg.threads);
    pressure_curve_to_csv(curve, csv_path);
    write_text(summary_path, pressure_summary_json(curve));
    if (!key.empty()) {
      std::filesystem::create_directories(cache_dir);
      std::filesystem::copy_file(
          csv_path, key + ".csv",
          std::filesystem::copy_options::overwrite_existing);
      write_text(key, pressure_summary_json(curve));
    }
  }
  write_sidecar(cfg, csv_path);
  write_sidecar(cfg, summary_path);
  std::cout << "wrote " << csv_path << " and " << summary_path << "\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  auto map = load_map(cfg.map_spec);
  auto curve = build_pressure_curve(map, cfg.t_min, cfg.t_max, cfg.grid,
                                    std::min(cfg.depth, 12), cfg.threads);
  auto pred = build_spectrum_curve(curve, 101);
  auto est = empirical_spectrum(map, cfg.depth);
  std::string path = cfg.out_prefix + "spectrum.csv";
  level_set_to_csv(est, pred, path);
  write_sidecar(cfg, path);
  std::cout << "wrote " << path << " (" << est.total_cylinders
            << " cylinders, " << est.bin_centers.size() << " bins)\n";
  return 0;
}

int cmd_pliss(const RunConfig& cfg) {
  auto map = load_map(cfg.map_spec);
  Cocycle c = build_cocycle(map, cfg.x, cfg.n);
  auto report = pliss_times(c, cfg.sigma);
  std::string path = cfg.out_prefix + "pliss.csv";
  pliss_report_to_csv(c, report, path);
  write_sidecar(cfg, path);
  std::cout << "wrote " << path << " (" << report.times.size()
            << " hyperbolic times)\n";
  return report.times.empty() ? 2 : 0;
}

int cmd_pullback(const RunConfig& cfg) {
  auto map = load_map(cfg.map_spec);
  auto tree = pull_back_tree(map, cfg.y, cfg.r, cfg.depth);
  std::string path = cfg.out_prefix +
                     (cfg.format == "json" ? "pullback.json" : "pullback.csv");
  if (cfg.format == "json")
    write_text(path, pullback_tree_to_json(tree));
  else
    pullback_tree_to_csv(tree, path);
  write_sidecar(cfg, path);
  std::cout << "wrote " << path << " (" << tree.nodes.size() << " nodes)\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  auto res = run_verify_suite(cfg.suite, cfg.seed, cfg.threads);
  std::cout << res.report;
  return res.failures == 0 ? 0 : 3;
}

int cmd_info(const RunConfig& cfg) {
  auto map = load_map(cfg.map_spec);
  std::cout << "map: " << map.name() << "\n"
            << "branches: " << map.branches().size() << "\n"
            << "markov: " << (map.is_markov() ? "yes" : "no") << "\n"
            << "uniformly expanding: "
            << (map.uniformly_expanding() ? "yes" : "no") << "\n"
            << "log|f'| sup: " << format_number(map.log_deriv_sup()) << "\n";
  std::cout << "domain:";
  for (const auto& iv : map.domain_intervals())
    std::cout << " [" << format_number(iv.a) << ", " << format_number(iv.b)
              << "]";
  std::cout << "\ncritical set:";
  for (double c : map.critical_set()) std::cout << " " << format_number(c);
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov spectrum machinery for multimodal interval maps"};
  app.require_subcommand(1);
  RunConfig cfg;

  app.add_option("--threads", cfg.threads, "worker cap inside library calls")
      ->check(CLI::Range(1, 64));
  app.add_option("--seed", cfg.seed, "master seed for randomized suites");

  auto add_map = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--map", cfg.map_spec,
                    "builtin name (tent, two-slope, chebyshev, quadratic:c) "
                    "or map config JSON path");
    sub->add_option("--out", cfg.out_prefix, "output path prefix");
    sub->add_option("--format", cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* pressure = app.add_subcommand("pressure", "pressure curve P(t)");
  add_map(pressure);
  pressure->add_option("--t-min", cfg.t_min);
  pressure->add_option("--t-max", cfg.t_max);
  pressure->add_option("--grid", cfg.grid)->check(CLI::Range(8, 100000));
  pressure->add_option("--depth", cfg.depth)->check(CLI::Range(1, 20));

  auto* spectrum = app.add_subcommand("spectrum", "empirical level-set spectrum");
  add_map(spectrum);
  spectrum->add_option("--depth", cfg.depth)->check(CLI::Range(1, 24));
  spectrum->add_option("--t-min", cfg.t_min);
  spectrum->add_option("--t-max", cfg.t_max);
  spectrum->add_option("--grid", cfg.grid)->check(CLI::Range(8, 100000));

  auto* pliss = app.add_subcommand("pliss", "Pliss hyperbolic times");
  add_map(pliss);
  pliss->add_option("--x", cfg.x);
  pliss->add_option("--n", cfg.n)->check(CLI::Range(1, 10000000));
  pliss->add_option("--sigma", cfg.sigma)->check(CLI::NonNegativeNumber);

  auto* pullback = app.add_subcommand("pullback", "backward-orbit components");
  add_map(pullback);
  pullback->add_option("--y", cfg.y);
  pullback->add_option("--r", cfg.r)->check(CLI::PositiveNumber);
  pullback->add_option("--depth", cfg.depth)->check(CLI::Range(1, 30));

  auto* verify = app.add_subcommand("verify", "invariant suites");
  verify->fallthrough();
  verify->add_option("--suite", cfg.suite,
                     "map|cocycle|pressure|pullback|spectrum|all");

  auto* info = app.add_subcommand("info", "map summary");
  add_map(info);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (pressure->parsed()) return cmd_pressure((cfg.command = "pressure", cfg));
    if (spectrum->parsed()) return cmd_spectrum((cfg.command = "spectrum", cfg));
    if (pliss->parsed()) return cmd_pliss((cfg.command = "pliss", cfg));
    if (pullback->parsed()) return cmd_pullback((cfg.command = "pullback", cfg));
    if (verify->parsed()) return cmd_verify((cfg.command = "verify", cfg));
    if (info->parsed()) return cmd_info((cfg.command = "info", cfg));
  } catch (const InvalidArgs& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidBand& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidSigma& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const OutOfDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
