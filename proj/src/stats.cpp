#include "tsome/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tsome::stats {

char verdict_symbol(Verdict v) {
  switch (v) {
    case Verdict::kPlus: return '+';
    case Verdict::kEquals: return '=';
    case Verdict::kMinus: return '-';
  }
  return '?';
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

/// Midranks of the pooled sample; tied values share the average of their
/// positions. Returns the per-value tie counts as well (for the variance
/// correction).
void pooled_midranks(std::span<const double> a, std::span<const double> b,
                     std::vector<double>& ranks_a, double& tie_term) {
  const std::size_t m = a.size(), n = b.size(), total = m + n;
  std::vector<std::pair<double, std::size_t>> pool(total);
  for (std::size_t i = 0; i < m; ++i) pool[i] = {a[i], i};
  for (std::size_t i = 0; i < n; ++i) pool[m + i] = {b[i], m + i};
  std::sort(pool.begin(), pool.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<double> rank(total);
  tie_term = 0.0;
  std::size_t i = 0;
  while (i < total) {
    std::size_t j = i;
    while (j < total && pool[j].first == pool[i].first) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);  // average of positions i+1..j
    for (std::size_t k = i; k < j; ++k) rank[pool[k].second] = mid;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  ranks_a.assign(rank.begin(), rank.begin() + static_cast<std::ptrdiff_t>(m));
}

}  // namespace

double wilcoxon_two_sided_p(std::span<const double> a, std::span<const double> b,
                            double* rank_sum_a, double* mean_rank_sum_a) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("wilcoxon: degenerate (empty) sample");
  }
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  const double total = m + n;

  std::vector<double> ranks_a;
  double tie_term = 0.0;
  pooled_midranks(a, b, ranks_a, tie_term);
  const double w = std::accumulate(ranks_a.begin(), ranks_a.end(), 0.0);
  const double mu = m * (total + 1.0) / 2.0;
  if (rank_sum_a) *rank_sum_a = w;
  if (mean_rank_sum_a) *mean_rank_sum_a = mu;

  const double variance =
      m * n / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (variance <= 0.0) return 1.0;  // every pooled value tied

  double d = std::fabs(w - mu) - 0.5;  // continuity correction
  if (d < 0.0) d = 0.0;
  const double z = d / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

Verdict wilcoxon_verdict(std::span<const double> reference, std::span<const double> challenger,
                         double significance) {
  double w = 0.0, mu = 0.0;
  const double p = wilcoxon_two_sided_p(reference, challenger, &w, &mu);
  if (p >= significance || w == mu) return Verdict::kEquals;
  return w < mu ? Verdict::kPlus : Verdict::kMinus;
}

std::vector<double> rank_scores(const std::vector<std::vector<double>>& means) {
  const std::size_t n_algos = means.size();
  if (n_algos == 0) return {};
  const std::size_t n_problems = means.front().size();
  for (const auto& row : means) {
    if (row.size() != n_problems) {
      throw std::invalid_argument("rank_scores: ragged mean matrix");
    }
  }
  std::vector<double> scores(n_algos, 0.0);
  std::vector<std::size_t> order(n_algos);
  for (std::size_t p = 0; p < n_problems; ++p) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return means[x][p] < means[y][p]; });
    std::size_t i = 0;
    while (i < n_algos) {
      std::size_t j = i;
      while (j < n_algos && means[order[j]][p] == means[order[i]][p]) ++j;
      // positions i+1..j (1 = best) share the averaged score
      const double mid_pos = 0.5 * static_cast<double>(i + 1 + j);
      const double score = static_cast<double>(n_algos) + 1.0 - mid_pos;
      for (std::size_t k = i; k < j; ++k) scores[order[k]] += score;
      i = j;
    }
  }
  for (auto& s : scores) s /= static_cast<double>(n_problems);
  return scores;
}

std::vector<HolmRow> holm_procedure(std::span<const double> ranks,
                                    std::span<const std::string> labels,
                                    std::size_t reference_index, std::size_t n_problems,
                                    double delta) {
  const std::size_t n_algos = ranks.size();
  if (n_algos < 2) throw std::invalid_argument("holm_procedure: need at least 2 algorithms");
  if (labels.size() != n_algos) throw std::invalid_argument("holm_procedure: label count");
  if (n_problems == 0) throw std::invalid_argument("holm_procedure: n_problems must be positive");
  if (reference_index >= n_algos) throw std::invalid_argument("holm_procedure: reference index");

  const double denom = std::sqrt(static_cast<double>(n_algos) *
                                 static_cast<double>(n_algos + 1) /
                                 (6.0 * static_cast<double>(n_problems)));
  std::vector<HolmRow> rows;
  rows.reserve(n_algos - 1);
  for (std::size_t i = 0; i < n_algos; ++i) {
    if (i == reference_index) continue;
    HolmRow row;
    row.algorithm = labels[i];
    row.z = (ranks[i] - ranks[reference_index]) / denom;
    row.p = normal_cdf(row.z);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const HolmRow& x, const HolmRow& y) { return x.p < y.p; });
  bool chain_alive = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].j_index = n_algos - 1 - i;  // N_A - j for j = 1..N_A-1
    rows[i].threshold = delta / static_cast<double>(rows[i].j_index);
    rows[i].rejected = chain_alive && rows[i].p < rows[i].threshold;
    chain_alive = rows[i].rejected;
  }
  return rows;
}

}  // namespace tsome::stats
