#include "tsome/explorers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsome {

double crossover_rate(std::size_t n, double alpha) {
  const double exponent = static_cast<double>(n) * alpha;
  if (!(exponent > 0.0)) {
    throw std::invalid_argument("crossover_rate: n*alpha must be positive");
  }
  double cr = std::exp2(-1.0 / exponent);
  cr = std::clamp(cr, std::numeric_limits<double>::min(), 1.0 - 1e-16);
  return cr;
}

void exponential_crossover(std::span<const double> elite, std::span<double> trial, double cr,
                           RngStream& rng) {
  const std::size_t n = elite.size();
  std::size_t i = rng.index_below(n);
  trial[i] = elite[i];
  std::size_t copied = 1;
  while (copied < n && rng.next_double() <= cr) {
    i = (i + 1 == n) ? 0 : i + 1;
    trial[i] = elite[i];
    ++copied;
  }
}

namespace {

// A tie only counts as a replacement when the point actually differs: the
// block copy saturates the whole vector with probability cr^(n-1), and a
// self-copy accepted as "success" would keep a phase alive forever.
bool accept_replacement(double f, const Candidate& elite, std::span<const double> trial) {
  if (f < elite.fitness) return true;
  if (f > elite.fitness) return false;
  return !std::equal(trial.begin(), trial.end(), elite.genes.begin());
}

// At n == 1 the deterministic copy would replace the entire trial with the
// elite, so the exploration moves skip the crossover there.
void crossover_into(std::span<const double> elite, std::span<double> trial, double cr,
                    RngStream& rng) {
  if (elite.size() > 1) exponential_crossover(elite, trial, cr, rng);
}

}  // namespace

bool long_distance_step(Candidate& elite, const Domain& domain, const CrossoverParams& cp,
                        SearchContext& ctx) {
  auto& trial = ctx.scratch_a;
  trial.resize(domain.size());
  uniform_sample(domain, ctx.rng, trial);
  crossover_into(elite.genes, trial, cp.cr, ctx.rng);
  const double f = ctx.evaluate(trial);
  if (accept_replacement(f, elite, trial)) {
    std::swap(elite.genes, trial);
    elite.fitness = f;
    ctx.note_elite(f);
    return true;
  }
  return false;
}

bool middle_distance_phase(Candidate& elite, const Domain& domain, const HypercubeParams& hp,
                           const CrossoverParams& middle_cp, SearchContext& ctx) {
  const std::size_t n = domain.size();
  const std::size_t trials = static_cast<std::size_t>(hp.trials_multiplier) * n;
  auto& trial = ctx.scratch_a;
  auto& center = ctx.scratch_b;
  trial.resize(n);
  bool improved_overall = false;
  for (;;) {
    // the hypercube stays put for a whole round even if the elite moves
    center.assign(elite.genes.begin(), elite.genes.end());
    bool round_improved = false;
    for (std::size_t j = 0; j < trials; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double half = 0.5 * hp.delta_fraction * domain.width(i);
        trial[i] = ctx.rng.uniform(center[i] - half, center[i] + half);
      }
      toroidal_correct(trial, domain);
      crossover_into(elite.genes, trial, middle_cp.cr, ctx.rng);
      const double f = ctx.evaluate(trial);
      if (accept_replacement(f, elite, trial)) {
        std::swap(elite.genes, trial);
        elite.fitness = f;
        ctx.note_elite(f);
        round_improved = true;
        improved_overall = true;
      }
    }
    if (!round_improved) break;
  }
  return improved_overall;
}

bool short_distance_phase(Candidate& elite, const Domain& domain, const ShortSearchParams& sp,
                          SearchContext& ctx) {
  const std::size_t n = domain.size();
  auto& best = ctx.scratch_a;   // x_t: best point of the current sweep
  auto& probe = ctx.scratch_b;  // x_s
  double rho_scale = sp.rho_fraction;
  bool any_accept = false;

  for (int sweep = 0; sweep < sp.max_sweeps; ++sweep) {
    best.assign(elite.genes.begin(), elite.genes.end());
    probe.assign(elite.genes.begin(), elite.genes.end());
    double best_fitness = elite.fitness;
    bool updated = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho_i = rho_scale * domain.width(i);
      // a tie is accepted only when the probe moved the coordinate; once rho
      // underflows below one ulp the probe equals the incumbent and must not
      // count as an update
      auto accept = [&](double f) {
        return f < best_fitness || (f == best_fitness && probe[i] != best[i]);
      };
      probe[i] = toroidal_correct(elite.genes[i] - rho_i, domain.lower[i], domain.upper[i]);
      double f = ctx.evaluate(probe);
      if (accept(f)) {
        best = probe;
        best_fitness = f;
        updated = true;
      } else {
        probe[i] = toroidal_correct(elite.genes[i] + 0.5 * rho_i, domain.lower[i], domain.upper[i]);
        f = ctx.evaluate(probe);
        if (accept(f)) {
          best = probe;
          best_fitness = f;
          updated = true;
        } else {
          // failed probes must not leak into later coordinates
          probe[i] = elite.genes[i];
        }
      }
    }
    if (updated) {
      elite.genes = best;
      elite.fitness = best_fitness;
      ctx.note_elite(best_fitness);
      any_accept = true;
    } else {
      rho_scale *= 0.5;
    }
  }
  return any_accept;
}

}  // namespace tsome
