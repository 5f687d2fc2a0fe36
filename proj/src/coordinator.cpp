#include "tsome/coordinator.hpp"

#include <limits>
#include <stdexcept>

namespace tsome {

std::string_view variant_id(Variant v) {
  switch (v) {
    case Variant::kThreeSome: return "3SOME";
    case Variant::kOneSome: return "1SOME";
    case Variant::kTwoSomeLM: return "2SOME_LM";
    case Variant::kTwoSomeLS: return "2SOME_LS";
    case Variant::kTwoSomeMS: return "2SOME_MS";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view id) {
  if (id == "3SOME") return Variant::kThreeSome;
  if (id == "1SOME") return Variant::kOneSome;
  if (id == "2SOME_LM") return Variant::kTwoSomeLM;
  if (id == "2SOME_LS") return Variant::kTwoSomeLS;
  if (id == "2SOME_MS") return Variant::kTwoSomeMS;
  return std::nullopt;
}

namespace {

/// Builds the trajectory and the phase-event log while a run executes.
class RunRecorder final : public EvalObserver {
 public:
  RunRecorder(std::uint64_t budget, bool record_phases, RunResult& out)
      : interval_(budget >= 200 ? budget / 200 : 1),
        record_phases_(record_phases),
        out_(out) {}

  void after_eval(std::uint64_t consumed) override {
    if (consumed % interval_ == 0 && last_fitness_ != std::numeric_limits<double>::infinity()) {
      push(consumed, last_fitness_);
    }
  }

  void elite_updated(std::uint64_t consumed, double fitness) override {
    if (fitness < best_seen_) {
      best_seen_ = fitness;
      push(consumed, fitness);
    }
    last_fitness_ = fitness;
  }

  void begin_phase(PhaseKind kind, std::uint64_t consumed) {
    phase_kind_ = kind;
    phase_start_ = consumed;
  }

  void end_phase(bool improved, std::uint64_t consumed) {
    if (record_phases_) {
      out_.phases.push_back({phase_kind_, consumed - phase_start_, improved});
    }
  }

  void finalize(std::uint64_t consumed, double final_fitness) {
    if (out_.trajectory.empty() || out_.trajectory.back().second != final_fitness ||
        out_.trajectory.back().first != consumed) {
      push(consumed, final_fitness);
    }
  }

 private:
  void push(std::uint64_t consumed, double fitness) {
    if (!out_.trajectory.empty() && out_.trajectory.back().first == consumed &&
        out_.trajectory.back().second == fitness) {
      return;
    }
    out_.trajectory.emplace_back(consumed, fitness);
  }

  std::uint64_t interval_;
  bool record_phases_;
  RunResult& out_;
  double best_seen_ = std::numeric_limits<double>::infinity();
  double last_fitness_ = std::numeric_limits<double>::infinity();
  PhaseKind phase_kind_ = PhaseKind::kInit;
  std::uint64_t phase_start_ = 0;
};

struct Loop {
  const Problem& problem;
  const SomeConfig& config;
  SearchContext& ctx;
  RunRecorder& recorder;
  Candidate& elite;
  CrossoverParams cp_long;
  CrossoverParams cp_middle;
  HypercubeParams hypercube;
  ShortSearchParams short_search;

  bool long_until_improved() {
    recorder.begin_phase(PhaseKind::kLong, ctx.tracker.consumed());
    while (!long_distance_step(elite, problem.domain, cp_long, ctx)) {
    }
    recorder.end_phase(true, ctx.tracker.consumed());
    return true;
  }

  bool middle() {
    recorder.begin_phase(PhaseKind::kMiddle, ctx.tracker.consumed());
    const bool improved =
        middle_distance_phase(elite, problem.domain, hypercube, cp_middle, ctx);
    recorder.end_phase(improved, ctx.tracker.consumed());
    return improved;
  }

  bool short_phase() {
    recorder.begin_phase(PhaseKind::kShort, ctx.tracker.consumed());
    const bool improved = short_distance_phase(elite, problem.domain, short_search, ctx);
    recorder.end_phase(improved, ctx.tracker.consumed());
    return improved;
  }

  [[noreturn]] void three_some() {
    for (;;) {
      long_until_improved();
      do {
        middle();
      } while (short_phase());
    }
  }

  [[noreturn]] void one_some() {
    for (;;) long_until_improved();
  }

  [[noreturn]] void two_some_lm() {
    for (;;) {
      long_until_improved();
      middle();
    }
  }

  [[noreturn]] void two_some_ls() {
    for (;;) {
      long_until_improved();
      short_phase();
    }
  }

  [[noreturn]] void two_some_ms() {
    // with no long-distance move to fall back on, failures re-enter the
    // middle distance exploration around the current elite
    for (;;) {
      middle();
      short_phase();
    }
  }
};

}  // namespace

RunResult run(const Problem& problem, const SomeConfig& config, std::uint64_t budget_limit,
              std::uint64_t seed) {
  if (budget_limit == 0) throw std::invalid_argument("run: budget must be positive");

  RunResult result;
  result.seed = seed;

  RngStream rng(seed);
  BudgetTracker tracker(budget_limit);
  RunRecorder recorder(budget_limit, config.record_phases, result);
  SearchContext ctx{problem, tracker, rng, &recorder, {}, {}};

  const std::size_t n = problem.dimension();
  Candidate elite;
  Loop loop{problem,
            config,
            ctx,
            recorder,
            elite,
            CrossoverParams::for_dimension(n, config.alpha),
            CrossoverParams::for_dimension(n, 1.0 - config.alpha),
            {config.delta_fraction, config.trials_multiplier},
            {config.rho_fraction, config.max_sweeps}};

  try {
    recorder.begin_phase(PhaseKind::kInit, 0);
    elite.genes = uniform_sample(problem.domain, rng);
    elite.fitness = ctx.evaluate(elite.genes);
    ctx.note_elite(elite.fitness);
    recorder.end_phase(true, tracker.consumed());

    switch (config.variant) {
      case Variant::kThreeSome: loop.three_some();
      case Variant::kOneSome: loop.one_some();
      case Variant::kTwoSomeLM: loop.two_some_lm();
      case Variant::kTwoSomeLS: loop.two_some_ls();
      case Variant::kTwoSomeMS: loop.two_some_ms();
    }
  } catch (const BudgetExhausted&) {
    recorder.end_phase(false, tracker.consumed());
  }

  result.best = std::move(elite);
  result.evaluations_used = tracker.consumed();
  recorder.finalize(tracker.consumed(), result.best.fitness);
  return result;
}

std::vector<RunResult> run_batch(const Problem& problem, const SomeConfig& config,
                                 std::uint64_t budget_limit, std::size_t n_runs,
                                 std::uint64_t master_seed) {
  std::vector<RunResult> results(n_runs);
  const std::string_view algo = variant_id(config.variant);
  std::vector<std::uint64_t> seeds(n_runs);
  for (std::size_t i = 0; i < n_runs; ++i) {
    seeds[i] = derive_run_seed(master_seed, problem.label, algo, i);
  }
  parallel_for_index(n_runs, [&](std::size_t i) {
    results[i] = run(problem, config, budget_limit, seeds[i]);
  });
  return results;
}

}  // namespace tsome
