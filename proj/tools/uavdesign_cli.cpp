#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "uav/errors.hpp"
#include "uav/pipeline.hpp"
#include "uav/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string config;
  std::string catalog;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

uav::DesignConfig load_config(const GlobalOptions& g) {
  if (g.config.empty()) throw UsageError("--config is required for this command");
  auto c = uav::load_design_config(g.config);
  if (!g.catalog.empty()) c.catalog = g.catalog;
  if (!g.out.empty()) c.output_directory = g.out;
  if (g.seed) c.seed = *g.seed;
  return c;
}

void only(uav::DesignConfig& c, std::initializer_list<std::string_view> stages) {
  auto on = [&](std::string_view s) {
    for (auto x : stages)
      if (x == s) return true;
    return false;
  };
  c.stages = {on("trade"), on("sizing"), on("structures"), on("massprops"), on("stability"), on("mission")};
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw uav::Error("cannot write " + path.string());
  out << text;
}

int stage_exit(const uav::DesignReport& r, std::initializer_list<std::string_view> stages) {
  bool ok = true;
  for (auto name : stages) {
    const auto* s = r.stage(name);
    if (!s || s->status != uav::StageStatus::passed) {
      ok = false;
      if (s)
        for (const auto& m : s->messages) std::cerr << name << ": " << m << '\n';
    }
  }
  return ok ? kExitPass : kExitViolation;
}

int cmd_size(const GlobalOptions& g) {
  auto c = load_config(g);
  only(c, {"sizing"});
  const auto r = uav::run_pipeline(c);
  if (r.sizing) std::cout << uav::sizing_json(*r.sizing);
  return stage_exit(r, {"sizing"});
}

int cmd_structure(const GlobalOptions& g) {
  auto c = load_config(g);
  only(c, {"sizing", "structures"});
  const auto r = uav::run_pipeline(c);
  if (r.structures) std::cout << uav::checks_json(r.structures->checks, r.structures->sandwich);
  return stage_exit(r, {"sizing", "structures"});
}

int cmd_massprops(const GlobalOptions& g, const std::string& placements) {
  auto c = load_config(g);
  if (!placements.empty()) c.placements = placements;
  only(c, {"sizing", "massprops"});
  const auto r = uav::run_pipeline(c);
  if (r.massprops)
    std::cout << uav::massprops_json(r.massprops->properties, r.massprops->max_cg_offset_m,
                                     r.massprops->cg_within_envelope);
  return stage_exit(r, {"sizing", "massprops"});
}

int cmd_stability(const GlobalOptions& g) {
  auto c = load_config(g);
  only(c, {"sizing", "massprops", "stability"});
  const auto r = uav::run_pipeline(c);
  if (r.stability) {
    std::cout << uav::stability_json(r.stability->open_loop, r.stability->closed_loop);
    if (!g.out.empty()) {
      const std::filesystem::path dir = g.out;
      write(dir / "open_loop_poles.csv", uav::pole_csv(r.stability->open_loop));
      write(dir / "closed_loop_poles.csv", uav::pole_csv(r.stability->closed_loop));
      uav::render_report(r, uav::ReportFormat::plots, dir);
    }
  }
  return stage_exit(r, {"sizing", "massprops", "stability"});
}

int cmd_trade(const GlobalOptions& g, const std::vector<std::string>& files) {
  std::vector<std::filesystem::path> paths(files.begin(), files.end());
  std::vector<std::optional<std::string>> expected(paths.size());
  if (paths.empty()) {
    const auto c = load_config(g);
    for (const auto& t : c.trades) {
      paths.push_back(t.path);
      expected.push_back(t.expected_winner);
    }
  }
  if (paths.empty()) throw UsageError("no decision matrix given");
  int code = kExitPass;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto m = uav::load_decision_matrix(paths[i]);
    const auto result = uav::evaluate(m);
    for (const auto& w : result.warnings) std::cerr << paths[i].filename().string() << ": " << w << '\n';
    std::cout << uav::trade_json(result, uav::sensitivity(m, result.winner));
    if (expected[i] && *expected[i] != result.winner) {
      std::cerr << paths[i].filename().string() << ": winner '" << result.winner << "', expected '"
                << *expected[i] << "'\n";
      code = kExitViolation;
    }
  }
  return code;
}

struct SimulateOptions {
  std::optional<std::size_t> runs;
  std::optional<double> accuracy;
  std::optional<double> noise;
  std::optional<unsigned> threads;
};

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& s) {
  auto c = load_config(g);
  if (s.runs) {
    if (*s.runs < 1) throw UsageError("--runs must be at least 1");
    c.mission.runs = *s.runs;
  }
  if (s.accuracy) c.mission.detector.per_pass_accuracy = *s.accuracy;
  if (s.noise) c.mission.detector.position_noise_sigma_m = *s.noise;
  if (s.threads) c.mission.threads = *s.threads;
  only(c, {"sizing", "massprops", "mission"});
  const auto r = uav::run_pipeline(c);
  if (r.mission) {
    std::cout << uav::campaign_json(r.mission->statistics);
    if (!g.out.empty()) write(std::filesystem::path(g.out) / "campaign.csv",
                              uav::campaign_csv(r.mission->statistics));
    if (c.mission.runs == 1 && !g.out.empty()) {
      const auto plan = uav::load_mission_plan(c.mission_plan);
      const auto vehicle = uav::make_vehicle(*r.sizing, r.massprops->properties);
      const auto outcome =
          uav::simulate_mission(plan, c.mission.detector, vehicle, c.mission.wind.mean, c.seed);
      write(std::filesystem::path(g.out) / "mission_outcome.json", uav::outcome_json(outcome));
    }
  }
  return stage_exit(r, {"sizing", "massprops", "mission"});
}

int finish_full_report(const uav::DesignReport& r, const std::filesystem::path& dir, double wall,
                       bool quiet) {
  uav::render_report(r, uav::ReportFormat::machine, dir);
  uav::render_report(r, uav::ReportFormat::text, dir, wall);
  const auto plots = uav::render_report(r, uav::ReportFormat::plots, dir);
  for (const auto& n : plots.notes) std::cerr << "note: " << n << '\n';
  if (!quiet) {
    std::cout << "verdict: " << uav::to_string(r.verdict) << '\n';
    for (const auto& v : r.violations) std::cout << "  " << v << '\n';
    std::cout << "report written to " << dir.string() << '\n';
  }
  return r.verdict == uav::Verdict::all_constraints_met ? kExitPass : kExitViolation;
}

int cmd_pipeline(const GlobalOptions& g, std::optional<int> outer) {
  auto c = load_config(g);
  if (outer) {
    if (*outer < 1) throw UsageError("--max-outer-iterations must be at least 1");
    c.max_outer_iterations = *outer;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = uav::run_pipeline(c);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish_full_report(r, c.output_directory, wall, g.quiet);
}

int cmd_report(const GlobalOptions& g, const std::string& from) {
  if (from.empty()) return cmd_pipeline(g, std::nullopt);
  std::ifstream in(from, std::ios::binary);
  if (!in) throw UsageError("cannot read " + from);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto r = uav::parse_report_json(buf.str(), from);
  const std::filesystem::path dir = g.out.empty() ? std::filesystem::path(from).parent_path() : std::filesystem::path(g.out);
  uav::render_report(r, uav::ReportFormat::text, dir);
  const auto plots = uav::render_report(r, uav::ReportFormat::plots, dir);
  for (const auto& n : plots.notes) std::cerr << "note: " << n << '\n';
  return r.verdict == uav::Verdict::all_constraints_met ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multirotor UAV design toolkit: sizing, structures, mass properties, "
               "hover stability, trade studies and mission simulation"};
  app.set_version_flag("--version", std::string(uav::kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed_value = 0;
  app.add_option("--config", g.config, "Design config file (YAML)");
  app.add_option("--catalog", g.catalog, "Component catalog, overrides the config");
  app.add_option("--out", g.out, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed_value, "Base random seed");
  app.add_flag("--quiet,-q", g.quiet, "Suppress the summary on stdout");

  auto* size = app.add_subcommand("size", "Size the vehicle and select propulsion");
  auto* structure = app.add_subcommand("structure", "Structural checks and sandwich comparison");
  std::string placements;
  auto* massprops = app.add_subcommand("massprops", "Mass, centre of gravity and inertia");
  massprops->add_option("--placements", placements, "Placement file, overrides the config");
  auto* stability = app.add_subcommand("stability", "Hover linearisation and pole analysis");
  std::vector<std::string> matrices;
  auto* trade = app.add_subcommand("trade", "Evaluate decision matrices");
  trade->add_option("matrices", matrices, "Matrix files; defaults to those in the config")
      ->check(CLI::ExistingFile);
  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo mission campaign");
  simulate->add_option("--runs", sim.runs, "Number of runs");
  simulate->add_option("--detector-accuracy", sim.accuracy, "Per-pass detection probability")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--noise-sigma", sim.noise, "Detector position noise (m)");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  std::string from;
  auto* report = app.add_subcommand("report", "Render reports (runs the pipeline unless --from)");
  report->add_option("--from", from, "Existing machine report to render")->check(CLI::ExistingFile);
  std::optional<int> outer;
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage and write all reports");
  pipeline->add_option("--max-outer-iterations", outer,
                       "Re-size with the assembled mass up to this many times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  try {
    if (size->parsed()) return cmd_size(g);
    if (structure->parsed()) return cmd_structure(g);
    if (massprops->parsed()) return cmd_massprops(g, placements);
    if (stability->parsed()) return cmd_stability(g);
    if (trade->parsed()) return cmd_trade(g, matrices);
    if (simulate->parsed()) return cmd_simulate(g, sim);
    if (report->parsed()) return cmd_report(g, from);
    if (pipeline->parsed()) return cmd_pipeline(g, outer);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const uav::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const uav::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
