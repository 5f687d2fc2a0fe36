#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tsome/core.hpp"
#include "tsome/explorers.hpp"

namespace tsome {

/// Which exploration moves a run coordinates. The two-meme and one-meme
/// variants collapse the full trial-and-error loop onto the moves they keep.
enum class Variant {
  kThreeSome,  // long -> middle -> short with the full branch rule
  kOneSome,    // long distance only
  kTwoSomeLM,  // long + middle
  kTwoSomeLS,  // long + short
  kTwoSomeMS,  // middle + short
};

std::string_view variant_id(Variant v);
std::optional<Variant> parse_variant(std::string_view id);

/// Algorithm settings. Defaults are the reference parameterization:
/// alpha = 0.05, hypercube side 20% of each width, k = 4, initial radius 40%
/// of each width, 150 sweeps per short-distance activation.
struct SomeConfig {
  double alpha = 0.05;
  double delta_fraction = 0.20;
  int trials_multiplier = 4;
  double rho_fraction = 0.40;
  int max_sweeps = 150;
  Variant variant = Variant::kThreeSome;
  bool record_phases = false;
};

enum class PhaseKind { kInit, kLong, kMiddle, kShort };

/// One phase activation: which move ran, how many evaluations it consumed,
/// and whether it replaced the elite.
struct PhaseEvent {
  PhaseKind kind;
  std::uint64_t evaluations;
  bool improved;
};

/// Outcome of a single run: the final elite, the best-so-far trajectory
/// sampled at every strict improvement and at every budget/200 checkpoint,
/// the evaluations actually spent, and the seed that produced it all.
struct RunResult {
  Candidate best;
  std::vector<std::pair<std::uint64_t, double>> trajectory;
  std::uint64_t evaluations_used = 0;
  std::uint64_t seed = 0;
  std::vector<PhaseEvent> phases;  // filled only when config.record_phases
};

/// Executes one run: samples the initial elite, coordinates the variant's
/// moves until the budget is exhausted, and returns the result. Identical
/// arguments produce bit-identical results. Throws std::invalid_argument on
/// a zero budget.
RunResult run(const Problem& problem, const SomeConfig& config, std::uint64_t budget_limit,
              std::uint64_t seed);

/// n_runs independent runs with seeds derived from
/// (master_seed, problem.label, variant id, run index). Runs may execute in
/// parallel; the returned order is always run-index order.
std::vector<RunResult> run_batch(const Problem& problem, const SomeConfig& config,
                                 std::uint64_t budget_limit, std::size_t n_runs,
                                 std::uint64_t master_seed);

}  // namespace tsome
