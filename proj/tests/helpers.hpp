// Independent oracles used by the unit and acceptance suites. These stay
// deliberately separate from the implementation paths they check:
// Durand-Kerner roots against the Jury reduction, a Jacobi eigensolver
// against the rotation generator, exhaustive rank-sum enumeration against the
// normal approximation.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "tsome/core.hpp"

namespace testutil {

/// All complex roots of a real polynomial (ascending coefficients) via
/// Durand-Kerner iteration on the monic normalization.
inline std::vector<std::complex<double>> polynomial_roots(std::span<const double> ascending) {
  const std::size_t degree = ascending.size() - 1;
  std::vector<std::complex<double>> monic(degree + 1);
  for (std::size_t i = 0; i <= degree; ++i) {
    monic[i] = ascending[i] / ascending[degree];
  }
  std::vector<std::complex<double>> roots(degree);
  const std::complex<double> base(0.4, 0.9);
  std::complex<double> w(1.0, 0.0);
  for (auto& r : roots) {
    w *= base;
    r = w;
  }
  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = degree + 1; i-- > 0;) acc = acc * z + monic[i];
    return acc;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double movement = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (std::size_t j = 0; j < degree; ++j) {
        if (j != i) denom *= roots[i] - roots[j];
      }
      const std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      movement = std::max(movement, std::abs(delta));
    }
    if (movement < 1e-13) break;
  }
  return roots;
}

inline double max_root_magnitude(std::span<const double> ascending) {
  double m = 0.0;
  for (const auto& r : polynomial_roots(ascending)) m = std::max(m, std::abs(r));
  return m;
}

/// Singular values of a row-major n-by-n matrix via a cyclic Jacobi
/// eigensolver on M^T M.
inline std::vector<double> singular_values(std::span<const double> m, std::size_t n) {
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += m[k * n + i] * m[k * n + j];
      a[i * n + j] = acc;
    }
  }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    }
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, a[q * n + q] - a[p * n + p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> sv(n);
  for (std::size_t i = 0; i < n; ++i) sv[i] = std::sqrt(std::max(0.0, a[i * n + i]));
  std::sort(sv.begin(), sv.end());
  return sv;
}

/// Exact two-sided rank-sum p-value by enumerating every m-subset of the
/// pooled midranks. Feasible for m + n <= 16.
inline double exact_wilcoxon_two_sided_p(std::span<const double> a, std::span<const double> b) {
  const std::size_t m = a.size(), n = b.size(), total = m + n;
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  std::vector<double> ranks(total);
  while (i < total) {
    std::size_t j = i;
    while (j < total && sorted[j] == sorted[i]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[k] = mid;
    i = j;
  }
  auto rank_lookup = [&](double v) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    return ranks[static_cast<std::size_t>(it - sorted.begin())];
  };
  double observed = 0.0;
  for (double v : a) observed += rank_lookup(v);

  std::vector<bool> mask(total, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(m), true);
  std::sort(mask.begin(), mask.end());  // lowest permutation for next_permutation
  std::size_t count_le = 0, count_ge = 0, count_all = 0;
  do {
    double w = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
      if (mask[k]) w += ranks[k];
    }
    ++count_all;
    if (w <= observed + 1e-9) ++count_le;
    if (w >= observed - 1e-9) ++count_ge;
  } while (std::next_permutation(mask.begin(), mask.end()));
  const double p_le = static_cast<double>(count_le) / static_cast<double>(count_all);
  const double p_ge = static_cast<double>(count_ge) / static_cast<double>(count_all);
  return std::min(1.0, 2.0 * std::min(p_le, p_ge));
}

/// A problem whose evaluator counts its own invocations; the counter is the
/// instrumented twin of the budget tracker.
inline tsome::Problem counting_problem(
    tsome::Domain domain, std::function<double(std::span<const double>)> fn,
    std::shared_ptr<std::uint64_t> counter) {
  tsome::Problem p;
  p.label = "counting";
  p.domain = std::move(domain);
  p.evaluator = [fn = std::move(fn), counter](std::span<const double> x) {
    ++*counter;
    return fn(x);
  };
  return p;
}

inline tsome::Problem sphere_problem(std::size_t n, double lo, double hi) {
  tsome::Problem p;
  p.label = "sphere";
  p.domain = tsome::Domain::box(n, lo, hi);
  p.evaluator = [](std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
  };
  p.known_optimum = 0.0;
  return p;
}

inline bool trajectory_monotone(const std::vector<std::pair<std::uint64_t, double>>& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i].second > t[i - 1].second || t[i].first < t[i - 1].first) return false;
  }
  return true;
}

}  // namespace testutil
