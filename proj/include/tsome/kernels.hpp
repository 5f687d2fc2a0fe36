#pragma once

#include <cstddef>

namespace tsome::kernels {

/// Inner-loop vector kernels shared by the benchmark objectives and the
/// filter simulation. Every entry has a scalar reference implementation and
/// may have SIMD variants; `active()` picks one implementation at startup,
/// so a process always evaluates objectives through the same code path.
///
/// SIMD variants are allowed to reassociate reductions and to use their own
/// polynomial sin/cos, so results may differ from the scalar reference in
/// the last few ulps. The equivalence tests pin that tolerance.
struct Kernels {
  const char* name;

  /// z[i] = x[i] - o[i]
  void (*sub)(const double* x, const double* o, double* z, std::size_t n);
  /// sum z[i]^2
  double (*sum_sq)(const double* z, std::size_t n);
  /// sum a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// max |z[i]|
  double (*max_abs)(const double* z, std::size_t n);
  /// *sum = sum |v[i]|, *prod = prod |v[i]|
  void (*abs_sum_prod)(const double* v, std::size_t n, double* sum, double* prod);
  /// sum_{i<n-1} 100 (x[i+1] - x[i]^2)^2 + (1 - x[i])^2
  double (*rosenbrock)(const double* x, std::size_t n);
  /// sum z[i]^2 - 10 cos(2 pi z[i])
  double (*rastrigin_core)(const double* z, std::size_t n);
  /// *sum_sq = sum z[i]^2, *sum_cos = sum cos(2 pi z[i])
  void (*ackley_sums)(const double* z, std::size_t n, double* sum_sq, double* sum_cos);
  /// *sum_sq = sum z[i]^2, *cos_prod = prod cos(z[i] / sqrt(i + 1))
  void (*griewank_core)(const double* z, std::size_t n, double* sum_sq, double* cos_prod);
  /// sum x[i] * sin(sqrt(|x[i]|))
  double (*schwefel_sum)(const double* x, std::size_t n);
};

/// Portable reference implementations (plain loops over libm).
const Kernels& scalar();

/// AVX2+FMA implementations, or nullptr when the CPU lacks them.
const Kernels* avx2();

/// The implementation selected for this process: AVX2 when available,
/// scalar otherwise. TSOME_KERNELS=scalar|avx2 overrides the choice.
const Kernels& active();

}  // namespace tsome::kernels
