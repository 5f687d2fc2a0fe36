#include "tsome/iir.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace tsome::iir {

namespace {

constexpr std::array<double, 11> kPlantNumerator = {
    0.0, 1.0, -0.4, 0.08, -0.032, 0.0816, 0.0326, 0.0288, -0.0115, 0.1296, -0.0518,
};
constexpr std::array<double, 11> kPlantDenominator = {
    1.0, 0.0, 1.08, 0.0, 0.8726, 0.0, 0.6227, 0.0, 0.4694, 0.0, 0.1266,
};

}  // namespace

const std::array<double, 11>& plant_numerator() { return kPlantNumerator; }
const std::array<double, 11>& plant_denominator() { return kPlantDenominator; }

FilterCoeffs FilterCoeffs::unpack(std::span<const double> x) {
  if (x.size() != kCoeffCount) {
    throw std::invalid_argument("FilterCoeffs: packed vector must have 21 entries");
  }
  FilterCoeffs c;
  std::copy_n(x.begin(), kNumeratorOrder + 1, c.a.begin());
  std::copy_n(x.begin() + kNumeratorOrder + 1, kDenominatorOrder, c.b.begin());
  return c;
}

void FilterCoeffs::pack(std::span<double> out) const {
  if (out.size() != kCoeffCount) {
    throw std::invalid_argument("FilterCoeffs: packed vector must have 21 entries");
  }
  std::copy(a.begin(), a.end(), out.begin());
  std::copy(b.begin(), b.end(), out.begin() + kNumeratorOrder + 1);
}

double deterministic_input(std::uint64_t k, double period, double phase) {
  const double t = static_cast<double>(k) * period;
  return 1.0 + 5.0 * std::sin(0.5 * std::numbers::pi * t) +
         0.25 * std::sin(4.0 * std::numbers::pi * t + phase);
}

std::vector<double> generate_input(std::size_t n_samples, double period, double phase,
                                   std::uint64_t noise_seed) {
  std::vector<double> u(n_samples);
  RngStream rng(noise_seed);
  for (std::size_t k = 0; k < n_samples; ++k) {
    u[k] = deterministic_input(k + 1, period, phase) + 0.01 * rng.next_double();
  }
  return u;
}

std::vector<double> simulate_plant(std::span<const double> u) {
  std::vector<double> d(u.size(), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    double acc = 0.0;
    const std::size_t taps = std::min<std::size_t>(k, 10);
    for (std::size_t i = 1; i <= taps; ++i) {
      acc += kPlantNumerator[i] * u[k - i] - kPlantDenominator[i] * d[k - i];
    }
    d[k] = acc;
  }
  return d;
}

std::vector<double> filter_response(const FilterCoeffs& coeffs, std::span<const double> u) {
  std::vector<double> y(u.size(), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    double acc = coeffs.a[0] * u[k];
    const std::size_t taps = std::min<std::size_t>(k, 10);
    for (std::size_t i = 1; i <= taps; ++i) {
      acc += coeffs.a[i] * u[k - i] - coeffs.b[i - 1] * y[k - i];
    }
    y[k] = acc;
  }
  return y;
}

bool jury_roots_inside_unit_circle(std::span<const double> ascending_coeffs) {
  std::vector<double> c(ascending_coeffs.begin(), ascending_coeffs.end());
  if (c.empty() || c.back() == 0.0) {
    throw std::invalid_argument("jury test: zero leading coefficient");
  }
  std::size_t degree = c.size() - 1;
  std::vector<double> next;
  while (degree > 0) {
    if (!(std::fabs(c[0]) < std::fabs(c[degree]))) return false;
    next.resize(degree);
    for (std::size_t i = 1; i <= degree; ++i) {
      next[i - 1] = c[degree] * c[i] - c[0] * c[degree - i];
    }
    // rescale so 10 reduction stages cannot overflow
    double peak = 0.0;
    for (double v : next) peak = std::max(peak, std::fabs(v));
    if (peak > 0.0) {
      for (double& v : next) v /= peak;
    }
    c = next;
    --degree;
  }
  return true;
}

bool is_stable(std::span<const double> b) {
  const std::size_t m = b.size();
  // characteristic polynomial z^M + b_1 z^(M-1) + ... + b_M, ascending order
  std::vector<double> poly(m + 1);
  poly[m] = 1.0;
  for (std::size_t i = 1; i <= m; ++i) poly[m - i] = b[i - 1];
  return jury_roots_inside_unit_circle(poly);
}

double mae_objective(const FilterCoeffs& coeffs, const SignalPair& signals) {
  if (!is_stable(coeffs.b)) return kWorstFitness;
  const std::vector<double> y = filter_response(coeffs, signals.u);
  double acc = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) acc += std::fabs(signals.d[k] - y[k]);
  return acc / static_cast<double>(y.size());
}

SignalPair make_signal_pair(std::uint64_t noise_seed) {
  SignalPair s;
  s.noise_seed = noise_seed;
  s.u = generate_input(kSampleCount, kSamplePeriod, kInputPhase, noise_seed);
  s.d = simulate_plant(s.u);
  return s;
}

Problem make_iir_problem(std::uint64_t noise_seed) {
  auto signals = std::make_shared<const SignalPair>(make_signal_pair(noise_seed));
  Problem p;
  p.label = "iir";
  p.domain = Domain::box(kCoeffCount, 0.0, 1.0);
  p.evaluator = [signals](std::span<const double> x) {
    return mae_objective(FilterCoeffs::unpack(x), *signals);
  };
  return p;
}

void write_response_csv(std::ostream& os, const SignalPair& signals, const FilterCoeffs& coeffs) {
  const std::vector<double> y = filter_response(coeffs, signals.u);
  os << "k,u,d,y\n";
  char line[160];
  for (std::size_t k = 0; k < y.size(); ++k) {
    std::snprintf(line, sizeof(line), "%zu,%.6e,%.6e,%.6e\n", k + 1, signals.u[k], signals.d[k],
                  y[k]);
    os << line;
  }
}

}  // namespace tsome::iir
