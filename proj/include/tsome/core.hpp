#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsome {

/// Fitness assigned to rejected or invalid candidates. Compares greater than
/// every finite objective value; two rejected candidates compare equal, so the
/// tie-accepting replacement rule still applies to them.
inline constexpr double kWorstFitness = std::numeric_limits<double>::max();

/// Box constraints of the decision space: lower[i] < upper[i] for all i.
struct Domain {
  std::vector<double> lower;
  std::vector<double> upper;

  Domain() = default;
  Domain(std::vector<double> lo, std::vector<double> up);

  /// n copies of the interval [lo, hi].
  static Domain box(std::size_t n, double lo, double hi);

  std::size_t size() const { return lower.size(); }
  double width(std::size_t i) const { return upper[i] - lower[i]; }
  bool contains(std::span<const double> x) const;
};

/// A decision vector together with its cached objective value.
struct Candidate {
  std::vector<double> genes;
  double fitness = kWorstFitness;
};

/// Thrown by BudgetTracker::charge once the evaluation budget is spent.
/// Callers treat it as the terminal condition of a run.
class BudgetExhausted : public std::exception {
 public:
  const char* what() const noexcept override { return "evaluation budget exhausted"; }
};

/// Counts objective evaluations against a hard limit. Every objective call
/// must be charged here exactly once.
class BudgetTracker {
 public:
  explicit BudgetTracker(std::uint64_t limit);

  std::uint64_t consumed() const { return consumed_; }
  std::uint64_t limit() const { return limit_; }
  std::uint64_t remaining() const { return limit_ - consumed_; }
  bool exhausted() const { return consumed_ >= limit_; }

  /// Accounts for one evaluation; throws BudgetExhausted when the budget is
  /// already spent (the evaluation must not happen in that case).
  void charge();

 private:
  std::uint64_t consumed_ = 0;
  std::uint64_t limit_;
};

/// xoshiro256++ stream seeded through splitmix64. The sequence depends only
/// on the seed, never on the platform, so runs are reproducible bit for bit.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in {0, ..., n-1}; n must be positive.
  std::size_t index_below(std::size_t n);

 private:
  std::uint64_t state_[4];
};

/// Mixes a seed with a textual tag and an index into a new 64-bit seed
/// (splitmix64 over the FNV-1a hash of the tag). This is the documented
/// derivation behind all per-run and per-problem seeds.
std::uint64_t hash64(std::uint64_t seed, std::string_view tag, std::uint64_t index);

/// Run seed for (problem, algorithm, run_index) under a master seed; distinct
/// triples map to distinct streams.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view problem_id,
                              std::string_view algorithm_id, std::uint64_t run_index);

/// A minimization problem: objective, box bounds and an optional known
/// optimum value. The evaluator must be deterministic and safe to call from
/// several threads at once.
struct Problem {
  std::string label;
  Domain domain;
  std::function<double(std::span<const double>)> evaluator;
  std::optional<double> known_optimum;

  std::size_t dimension() const { return domain.size(); }
};

/// Fills `out` with one point uniformly distributed in the domain.
void uniform_sample(const Domain& domain, RngStream& rng, std::span<double> out);
std::vector<double> uniform_sample(const Domain& domain, RngStream& rng);

/// Toroidal bound correction for one component: values inside [lo, hi] are
/// unchanged, an overshoot of z beyond one end re-enters by z from the other
/// end. Implemented as lo + ((v - lo) mod (hi - lo)) so arbitrary overshoots
/// wrap as well.
double toroidal_correct(double v, double lo, double hi);

/// Applies the toroidal correction to every component in place.
void toroidal_correct(std::span<double> x, const Domain& domain);

/// Evaluates the objective at x, charging one budget unit. Throws
/// BudgetExhausted when the tracker is spent at entry.
double evaluate(const Problem& problem, std::span<const double> x, BudgetTracker& tracker);

/// Runs fn(0..count-1), possibly on several threads. Each index is handled
/// exactly once; callers own any cross-index ordering.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tsome
