#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsome/coordinator.hpp"

namespace tsome::exp {

/// Raised for anything the driver can blame on the configuration (exit 1);
/// every other failure is a runtime error (exit 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMasterSeed = 42;

/// A resolved experiment: which problems, which algorithm variants, how many
/// runs per pair, the budget rule and where results land. The budget is
/// budget_multiplier * dimension per benchmark problem and iir_budget flat
/// for the filter problem, unless budget_flat overrides both.
struct ExperimentConfig {
  std::vector<std::string> suite;
  std::vector<Variant> algorithms{Variant::kThreeSome};
  std::size_t runs = 30;
  std::uint64_t budget_multiplier = 5000;
  std::optional<std::uint64_t> budget_flat;
  std::uint64_t iir_budget = 10000;
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::string out_dir;
  std::size_t reference = 0;  // index into algorithms
};

/// Defaults: the full benchmark suite, 3SOME only, 30 runs, 5000*n budget.
ExperimentConfig default_config();

/// Expands a suite selector ("all", "cec2008", or comma-separated ids; "iir"
/// names the filter problem) into problem ids. Throws ConfigError on unknown
/// ids.
std::vector<std::string> resolve_suite(std::string_view selector);

/// Parses the declarative key = value config format ('#' comments, blank
/// lines ignored). Unknown keys and malformed values raise ConfigError with
/// the offending line.
ExperimentConfig parse_config_text(std::string_view text);

/// parse_config_text over a file's contents.
ExperimentConfig load_config_file(const std::string& path);

/// Output directory resolution: explicit value, else $TSOME_OUT, else
/// "tsome_out".
std::string resolve_out_dir(const std::string& configured);

std::uint64_t budget_for(const ExperimentConfig& config, const Problem& problem);

/// Runs every (problem, algorithm) batch and writes runs.csv, results.csv,
/// wilcoxon.csv, holm.csv, manifest.txt, per-pair trend files and, when the
/// suite contains the filter problem, the best response as iir_response.csv.
/// Output bytes depend only on the configuration and master seed.
void run_experiment(const ExperimentConfig& config);

/// Recomputes results.csv, wilcoxon.csv and holm.csv from a stored runs.csv.
/// The algorithm order follows first appearance in the file; the reference
/// is the first algorithm listed.
void recompute_reports(const std::string& out_dir);

}  // namespace tsome::exp
