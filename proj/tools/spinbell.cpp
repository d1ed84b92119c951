// spinbell: command-line front end for the sweeps and the validation report.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <spinbell/acceptance.hpp>
#include <spinbell/manifest.hpp>
#include <spinbell/properties.hpp>
#include <spinbell/sweep.hpp>
#include <spinbell/validation.hpp>

namespace fs = std::filesystem;
using namespace spinbell;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_manifest(const RunConfig& cfg) {
  write_text(fs::path(cfg.out) / "manifest.json", make_manifest(cfg).dump(2) + "\n");
}

int run_sweep_command(const RunConfig& cfg) {
  const Table t = run_sweep(cfg);
  fs::create_directories(cfg.out);
  std::ostringstream csv;
  t.write_csv(csv);
  const fs::path path = fs::path(cfg.out) / csv_name(cfg.command);
  write_text(path, csv.str());
  write_manifest(cfg);
  std::cerr << "wrote " << path.string() << " (" << t.rows.size() << " rows)\n";
  return 0;
}

std::vector<CheckResult> run_all(const std::vector<Check>& checks, double tol_scale) {
  std::vector<CheckResult> out;
  for (const auto& c : checks) {
    out.push_back(run_check(c, tol_scale));
    print_result(std::cout, out.back());
    std::cout.flush();
  }
  return out;
}

int run_validate(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckResult> results;
  std::optional<SuiteRun> props_run;

  auto run_properties = [&] {
    const auto p0 = std::chrono::steady_clock::now();
    std::cout << "== property suites ==\n";
    const auto r = run_all(property_checks(), cfg.tol_scale);
    SuiteRun s{true, std::chrono::duration<double>(std::chrono::steady_clock::now() - p0).count()};
    for (const auto& c : r) s.all_passed = s.all_passed && c.passed();
    results.insert(results.end(), r.begin(), r.end());
    props_run = s;
    return s;
  };

  if (cfg.suite != "acceptance") run_properties();
  if (cfg.suite != "properties") {
    std::cout << "== acceptance criteria ==\n";
    const auto r = run_all(acceptance_checks([&] { return props_run ? *props_run : run_properties(); }), cfg.tol_scale);
    results.insert(results.end(), r.begin(), r.end());
  }

  std::size_t failed = 0;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : results) {
    if (!r.passed()) ++failed;
    checks.push_back(result_json(r));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (failed == 0 ? "ALL PASSED" : "FAILED") << ": " << results.size() - failed << "/" << results.size()
            << " checks passed in " << secs << " s\n";
  for (const auto& r : results)
    if (!r.passed()) std::cout << "  failing: " << r.id << '\n';

  fs::create_directories(cfg.out);
  const nlohmann::json report{{"command", "validate"}, {"suite", cfg.suite}, {"tol_scale", cfg.tol_scale},
                              {"passed", failed == 0}, {"failed", failed},   {"seconds", secs},
                              {"checks", checks}};
  write_text(fs::path(cfg.out) / "validate.json", report.dump(2) + "\n");
  nlohmann::json manifest = make_manifest(cfg);
  manifest["output"] = "validate.json";
  write_text(fs::path(cfg.out) / "manifest.json", manifest.dump(2) + "\n");
  return failed == 0 ? 0 : 1;
}

int dispatch(const RunConfig& raw) {
  const RunConfig cfg = resolve_config(raw);
  return cfg.command == "validate" ? run_validate(cfg) : run_sweep_command(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinbell: many-body Bell correlations in Lipkin-Meshkov-Glick models"};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags override it");
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--L", cfg.L, "particle counts, comma separated")->delimiter(',');
  app.add_option("--gamma", cfg.gamma, "anisotropies, comma separated")->delimiter(',');
  app.add_option("--h-min", cfg.h.min, "field grid start");
  app.add_option("--h-max", cfg.h.max, "field grid end");
  app.add_option("--h-steps", cfg.h.steps, "number of field points");
  app.add_option("--T-min", cfg.T.min, "temperature grid start");
  app.add_option("--T-max", cfg.T.max, "temperature grid end");
  app.add_option("--T-steps", cfg.T.steps, "number of temperature points");
  app.add_option("--alpha-min", cfg.alpha.min, "power-law exponent grid start");
  app.add_option("--alpha-max", cfg.alpha.max, "power-law exponent grid end");
  app.add_option("--alpha-steps", cfg.alpha.steps, "number of exponent points");
  app.add_option("--h-cut", cfg.h_cut, "thermal-cuts: field of the Q(T) cut");
  app.add_option("--T-cut", cfg.T_cut, "thermal-cuts: temperature of the Q(h) cut");
  app.add_option("--kind", cfg.kind, "disorder kinds: diagonal|offdiagonal")->delimiter(',');
  app.add_option("--dist", cfg.dist, "noise distributions: p1|p2")->delimiter(',');
  app.add_option("--V", cfg.V, "disorder amplitudes, comma separated")->delimiter(',');
  app.add_option("--samples", cfg.samples, "disorder realizations per point");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--threads", cfg.threads, "worker count (0 = hardware); SPINBELL_THREADS caps it");
  auto* out_opt = app.add_option("--out", cfg.out, "output directory");
  app.add_option("--suite", cfg.suite, "validate: all|properties|acceptance");
  app.add_option("--tol-scale", cfg.tol_scale, "validate: multiply every tolerance (tamper test)");

  for (const std::string& name : kCommands) app.add_subcommand(name, "run " + name)->fallthrough();
  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "re-run the configuration stored in a manifest.json");
  replay->add_option("manifest", manifest_path, "manifest file")->required()->check(CLI::ExistingFile);
  replay->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (replay->parsed()) {
      RunConfig stored = config_from_manifest(read_json_file(manifest_path));
      if (out_opt->count() > 0) stored.out = cfg.out;
      if (app.get_option("--threads")->count() > 0) stored.threads = cfg.threads;
      return dispatch(stored);
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return dispatch(cfg);
  } catch (const std::exception& e) {
    std::cerr << "spinbell: error: " << e.what() << '\n';
    return 2;
  }
}
