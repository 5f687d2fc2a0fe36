// Batch experiment driver: `run` executes a configured experiment and writes
// the CSV reports, `list` prints the suite manifest, `stats` rebuilds the
// report files from a stored runs.csv.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsome/benchmarks.hpp"
#include "tsome/experiment.hpp"
#include "tsome/kernels.hpp"

namespace {

using tsome::exp::ConfigError;
using tsome::exp::ExperimentConfig;

struct RunFlags {
  std::string config_path;
  std::string suite;
  std::vector<std::string> algos;
  std::uint64_t runs = 0;
  std::uint64_t budget_multiplier = 0;
  std::uint64_t budget = 0;
  bool have_seed = false;
  std::uint64_t seed = 0;
  std::string out;
};

ExperimentConfig assemble(const RunFlags& flags) {
  ExperimentConfig cfg = flags.config_path.empty()
                             ? tsome::exp::default_config()
                             : tsome::exp::load_config_file(flags.config_path);
  if (!flags.suite.empty()) cfg.suite = tsome::exp::resolve_suite(flags.suite);
  if (!flags.algos.empty()) {
    cfg.algorithms.clear();
    cfg.reference = 0;
    for (const auto& chunk : flags.algos) {
      for (const auto& id : [&] {
             std::vector<std::string> parts;
             std::string cur;
             for (char c : chunk) {
               if (c == ',') {
                 if (!cur.empty()) parts.push_back(cur);
                 cur.clear();
               } else {
                 cur += c;
               }
             }
             if (!cur.empty()) parts.push_back(cur);
             return parts;
           }()) {
        const auto v = tsome::parse_variant(id);
        if (!v) throw ConfigError("unknown algorithm id '" + id + "'");
        cfg.algorithms.push_back(*v);
      }
    }
    if (cfg.algorithms.empty()) throw ConfigError("empty algorithm list");
  }
  if (flags.runs > 0) cfg.runs = flags.runs;
  if (flags.budget_multiplier > 0) cfg.budget_multiplier = flags.budget_multiplier;
  if (flags.budget > 0) cfg.budget_flat = flags.budget;
  if (flags.have_seed) cfg.master_seed = flags.seed;
  if (!flags.out.empty()) cfg.out_dir = flags.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-solution memetic optimizer experiment driver"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run_cmd = app.add_subcommand("run", "execute an experiment and write CSV reports");
  run_cmd->add_option("--config", flags.config_path, "config file (key = value lines)");
  run_cmd->add_option("--suite", flags.suite, "all | cec2008 | comma-separated ids (f1..f30, iir)");
  run_cmd->add_option("--algo", flags.algos, "algorithm variants (3SOME, 1SOME, 2SOME_LM, 2SOME_LS, 2SOME_MS)");
  run_cmd->add_option("--runs", flags.runs, "runs per (problem, algorithm) pair");
  run_cmd->add_option("--budget-multiplier", flags.budget_multiplier, "evaluations per dimension");
  run_cmd->add_option("--budget", flags.budget, "flat evaluation budget overriding the rule");
  auto* seed_opt = run_cmd->add_option("--seed", flags.seed, "master seed");
  run_cmd->add_option("--out", flags.out, "output directory (default $TSOME_OUT or tsome_out)");

  std::uint64_t list_seed = tsome::exp::kDefaultMasterSeed;
  auto* list_cmd = app.add_subcommand("list", "print the suite manifest");
  list_cmd->add_option("--seed", list_seed, "master seed");

  std::string stats_dir;
  auto* stats_cmd = app.add_subcommand("stats", "recompute reports from a stored runs.csv");
  stats_cmd->add_option("--out", stats_dir, "directory holding runs.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // bad command lines are configuration errors (exit 1); --help exits 0
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      flags.have_seed = seed_opt->count() > 0;
      tsome::exp::run_experiment(assemble(flags));
    } else if (list_cmd->parsed()) {
      std::fputs(tsome::bench::manifest_table(list_seed).c_str(), stdout);
      std::printf("kernels: %s\n", tsome::kernels::active().name);
    } else if (stats_cmd->parsed()) {
      tsome::exp::recompute_reports(tsome::exp::resolve_out_dir(stats_dir));
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
