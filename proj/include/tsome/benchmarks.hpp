#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tsome/core.hpp"

namespace tsome::bench {

/// Shifted optimum of a test function, regenerated from a seed. Components
/// are uniform in the central 80% of each dimension's range, so the optimum
/// always lies strictly inside the domain.
struct ShiftVector {
  std::vector<double> values;
  std::uint64_t seed = 0;
};

/// Dense n-by-n rotation-like matrix M = U S V^T with orthonormalized
/// Gaussian factors and singular values spaced geometrically from 1 to the
/// target condition number. condition_target = 1 yields an orthogonal M.
struct RotationMatrix {
  std::size_t n = 0;
  std::vector<double> m;  // row-major
  double condition_target = 1.0;
  std::uint64_t seed = 0;
};

ShiftVector generate_shift(const Domain& domain, std::uint64_t seed);
RotationMatrix generate_rotation(std::size_t n, double condition_target, std::uint64_t seed);

/// One row of the suite manifest, enough to regenerate the instance.
struct SuiteEntry {
  std::string id;
  std::size_t dimension;
  double lower;
  double upper;
  std::uint64_t seed;
};

/// All test-function identifiers, f1 through f30, in suite order.
const std::vector<std::string>& suite_ids();

/// Instantiates one test problem by id ("f1".."f30"). All shift, rotation
/// and auxiliary data derive deterministically from the master seed. Throws
/// std::invalid_argument for an unknown id.
Problem make_problem(std::string_view id, std::uint64_t master_seed);

/// The full 30-problem suite in order.
std::vector<Problem> make_suite(std::uint64_t master_seed);

/// The known optimizer point of an instance: the regenerated shift for
/// shifted functions, (1,...,1) for f3, the trig system's optimum for f18.
/// Empty when no closed-form optimizer exists.
std::vector<double> optimum_point(std::string_view id, std::uint64_t master_seed);

/// Building block of the fractal landscape (f30): a scaled even polynomial
/// dip of value s at x = c, zero outside the window |x - c| < 0.5.
double doubledip(double x, double center, double scale);

std::vector<SuiteEntry> suite_manifest(std::uint64_t master_seed);

/// Manifest rendered as an aligned text table (id, n, bounds, seed).
std::string manifest_table(std::uint64_t master_seed);

}  // namespace tsome::bench
