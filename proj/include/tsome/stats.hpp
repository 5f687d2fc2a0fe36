#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsome::stats {

/// Pairwise comparison outcome from the reference algorithm's point of view:
/// kPlus means the reference is significantly better (lower, minimization),
/// kMinus significantly worse, kEquals no significant difference.
enum class Verdict { kPlus, kEquals, kMinus };

char verdict_symbol(Verdict v);

/// Two-sided rank-sum p-value for samples a and b, using midranks, the
/// tie-corrected variance and a continuity-corrected normal approximation.
/// rank_sum_a/mean_rank_sum_a report the observed statistic when non-null.
double wilcoxon_two_sided_p(std::span<const double> a, std::span<const double> b,
                            double* rank_sum_a = nullptr, double* mean_rank_sum_a = nullptr);

/// Rank-sum verdict at the given significance level (default 0.05): kPlus
/// requires both p < significance and a lower rank sum for `reference`.
/// Throws std::invalid_argument when either sample is empty.
Verdict wilcoxon_verdict(std::span<const double> reference, std::span<const double> challenger,
                         double significance = 0.05);

/// Per-algorithm average rank scores over a mean-fitness matrix indexed as
/// means[algorithm][problem]. For each problem the best (lowest) mean scores
/// N_A, the worst scores 1; ties share the mean of their positions.
std::vector<double> rank_scores(const std::vector<std::vector<double>>& means);

/// One row of the step-down comparison table.
struct HolmRow {
  std::size_t j_index;    // N_A - j, as tabulated
  std::string algorithm;
  double z;
  double p;
  double threshold;       // delta / (N_A - j)
  bool rejected;
};

/// Holm procedure against the reference algorithm:
/// z_j = (R_j - R_0) / sqrt(N_A (N_A + 1) / (6 N_TP)), p_j the lower-tail
/// normal value, rows sorted by ascending p and compared step-down against
/// delta / (N_A - j); once a hypothesis is accepted all later ones are.
std::vector<HolmRow> holm_procedure(std::span<const double> ranks,
                                    std::span<const std::string> labels,
                                    std::size_t reference_index, std::size_t n_problems,
                                    double delta = 0.05);

/// Lower-tail standard normal CDF via erfc.
double normal_cdf(double z);

}  // namespace tsome::stats
