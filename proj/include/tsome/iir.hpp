#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tsome/core.hpp"

namespace tsome::iir {

inline constexpr std::size_t kNumeratorOrder = 10;    // L
inline constexpr std::size_t kDenominatorOrder = 10;  // M
inline constexpr std::size_t kCoeffCount = 21;        // a_0..a_L, b_1..b_M

inline constexpr std::size_t kSampleCount = 1000;     // N
inline constexpr double kSamplePeriod = 0.001;        // T, seconds
inline constexpr double kInputPhase = 1.0471975511965977;  // pi/3

/// Filter parameters in the packed layout x = [a_0..a_10, b_1..b_10] for the
/// transfer function A(z)/(1 + sum b_i z^-i), i.e. the recursion
/// y(k) = sum a_i u(k-i) - sum b_i y(k-i). With this convention a useful
/// fraction of the feasible box [0,1]^21 is stable.
struct FilterCoeffs {
  std::array<double, kNumeratorOrder + 1> a{};
  std::array<double, kDenominatorOrder> b{};  // b[i] holds b_{i+1}

  static FilterCoeffs unpack(std::span<const double> x);
  void pack(std::span<double> out) const;
};

/// Frozen excitation and plant response used by every objective evaluation
/// of one experiment.
struct SignalPair {
  std::vector<double> u;
  std::vector<double> d;
  double sample_period = kSamplePeriod;
  std::uint64_t noise_seed = 0;
};

/// Plant transfer-function taps (z^-0 .. z^-10). The denominator is in the
/// same 1 + sum beta_i z^-i convention the filter uses, so the
/// plant-matching filter has b_i = beta_i (values outside the feasible box;
/// useful for identity tests only).
const std::array<double, 11>& plant_numerator();
const std::array<double, 11>& plant_denominator();

/// Noise-free part of the excitation:
/// 1 + 5 sin(0.5 pi k T) + 0.25 sin(4 pi k T + phase).
double deterministic_input(std::uint64_t k, double period, double phase);

/// Excitation samples for k = 1..n_samples, each with an additive uniform
/// noise term of amplitude 0.01 drawn from the seeded stream.
std::vector<double> generate_input(std::size_t n_samples, double period, double phase,
                                   std::uint64_t noise_seed);

/// Plant response to u under zero initial conditions.
std::vector<double> simulate_plant(std::span<const double> u);

/// Filter response y(k) = sum_{i=0..L} a_i u(k-i) - sum_{i=1..M} b_i y(k-i),
/// zero initial conditions.
std::vector<double> filter_response(const FilterCoeffs& coeffs, std::span<const double> u);

/// True iff every root of the polynomial (ascending coefficients, nonzero
/// leading term) lies strictly inside the unit circle. Pure coefficient
/// arithmetic (Schur-Cohn/Jury reduction), no root extraction. Throws
/// std::invalid_argument when the leading coefficient is zero.
bool jury_roots_inside_unit_circle(std::span<const double> ascending_coeffs);

/// Stability of the filter recursion: all poles of z^M + sum b_i z^(M-i)
/// strictly inside the unit circle.
bool is_stable(std::span<const double> b);

/// Mean absolute error between the plant output and the filter response;
/// unstable coefficient sets receive kWorstFitness.
double mae_objective(const FilterCoeffs& coeffs, const SignalPair& signals);

SignalPair make_signal_pair(std::uint64_t noise_seed);

/// The identification problem: n = 21, decision space [0,1]^21, objective
/// the MAE against a signal pair frozen at construction.
Problem make_iir_problem(std::uint64_t noise_seed);

/// Writes k,u,d,y rows for the given coefficients over the stored signals.
void write_response_csv(std::ostream& os, const SignalPair& signals, const FilterCoeffs& coeffs);

}  // namespace tsome::iir
