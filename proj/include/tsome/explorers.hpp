#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsome/core.hpp"

namespace tsome {

/// Crossover rate matching a target inheritance factor: Cr = 2^(-1/(n*alpha)),
/// so that Cr^(n*alpha) = 0.5. The result is clamped into (0, 1). Throws
/// std::invalid_argument when n*alpha <= 0.
double crossover_rate(std::size_t n, double alpha);

/// Inheritance factor plus the derived crossover rate for one dimensionality.
struct CrossoverParams {
  double alpha;
  double cr;
  std::size_t n;

  static CrossoverParams for_dimension(std::size_t n, double alpha) {
    return {alpha, crossover_rate(n, alpha), n};
  }
};

/// Hypercube-restricted search settings: per-dimension side
/// delta_i = delta_fraction * width_i, and k*n trials per round.
struct HypercubeParams {
  double delta_fraction = 0.20;
  int trials_multiplier = 4;
};

/// Coordinate-descent settings: initial per-dimension radius
/// rho_i = rho_fraction * width_i, and the sweep budget of one activation.
struct ShortSearchParams {
  double rho_fraction = 0.40;
  int max_sweeps = 150;
};

/// Hooks a run recorder into the evaluation path. after_eval fires once per
/// charged evaluation, elite_updated on every accepted replacement.
class EvalObserver {
 public:
  virtual void after_eval(std::uint64_t consumed) = 0;
  virtual void elite_updated(std::uint64_t consumed, double fitness) = 0;

 protected:
  ~EvalObserver() = default;
};

/// Per-run state shared by the exploration moves: the objective, the budget,
/// the random stream, an optional observer, and reusable scratch buffers.
/// One run owns one context; contexts are never shared across threads.
struct SearchContext {
  const Problem& problem;
  BudgetTracker& tracker;
  RngStream& rng;
  EvalObserver* observer = nullptr;
  std::vector<double> scratch_a;
  std::vector<double> scratch_b;

  /// Charges one budget unit and evaluates. Throws BudgetExhausted when the
  /// budget is already spent.
  double evaluate(std::span<const double> x) {
    tracker.charge();
    const double f = problem.evaluator(x);
    if (observer) observer->after_eval(tracker.consumed());
    return f;
  }

  void note_elite(double fitness) {
    if (observer) observer->elite_updated(tracker.consumed(), fitness);
  }
};

/// DE-style exponential crossover: one uniformly chosen gene of `trial` is
/// overwritten from `elite`, then while successive uniform draws stay <= cr
/// the copy advances cyclically to the next gene. Stops at the first draw
/// above cr, or once all genes are copied. Between 1 and n genes of the
/// result come from the elite.
void exponential_crossover(std::span<const double> elite, std::span<double> trial, double cr,
                           RngStream& rng);

/// Long distance exploration: one trial sampled uniformly in the domain,
/// crossed with the elite, evaluated (one budget unit) and accepted on <=
/// (a tie counts only when the trial differs from the elite). Returns
/// whether the elite was replaced.
bool long_distance_step(Candidate& elite, const Domain& domain, const CrossoverParams& cp,
                        SearchContext& ctx);

/// Middle distance exploration: rounds of k*n trials sampled in a hypercube
/// fixed on the elite at round start (toroidally corrected), crossed with the
/// elite at rate derived from 1-alpha, accepted on <=. Rounds repeat while
/// the previous round replaced the elite at least once; the phase ends after
/// the first round without a replacement. Returns whether any round
/// succeeded.
bool middle_distance_phase(Candidate& elite, const Domain& domain, const HypercubeParams& hp,
                           const CrossoverParams& middle_cp, SearchContext& ctx);

/// Short distance exploration: deterministic per-coordinate descent. Each
/// sweep probes x_e[i]-rho_i and, failing that, x_e[i]+rho_i/2 against the
/// best point of the sweep; a sweep with no accepted probe halves every
/// rho_i, otherwise the sweep's best point replaces the elite. Runs
/// max_sweeps sweeps (or until the budget ends) with rho reset on entry.
/// Returns whether any probe was accepted.
bool short_distance_phase(Candidate& elite, const Domain& domain, const ShortSearchParams& sp,
                          SearchContext& ctx);

}  // namespace tsome
