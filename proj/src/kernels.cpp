#include "tsome/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>

namespace tsome::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void sub_scalar(const double* x, const double* o, double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = x[i] - o[i];
}

double sum_sq_scalar(const double* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += z[i] * z[i];
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double max_abs_scalar(const double* z, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(z[i]));
  return m;
}

void abs_sum_prod_scalar(const double* v, std::size_t n, double* sum, double* prod) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(v[i]);
    s += a;
    p *= a;
  }
  *sum = s;
  *prod = p;
}

double rosenbrock_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double t = x[i + 1] - x[i] * x[i];
    const double u = 1.0 - x[i];
    acc += 100.0 * t * t + u * u;
  }
  return acc;
}

double rastrigin_core_scalar(const double* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += z[i] * z[i] - 10.0 * std::cos(kTwoPi * z[i]);
  }
  return acc;
}

void ackley_sums_scalar(const double* z, std::size_t n, double* sum_sq, double* sum_cos) {
  double sq = 0.0, cs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sq += z[i] * z[i];
    cs += std::cos(kTwoPi * z[i]);
  }
  *sum_sq = sq;
  *sum_cos = cs;
}

void griewank_core_scalar(const double* z, std::size_t n, double* sum_sq, double* cos_prod) {
  double sq = 0.0, p = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    sq += z[i] * z[i];
    p *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  *sum_sq = sq;
  *cos_prod = p;
}

double schwefel_sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i] * std::sin(std::sqrt(std::fabs(x[i])));
  }
  return acc;
}

const Kernels kScalar = {
    "scalar",          sub_scalar,        sum_sq_scalar,       dot_scalar,
    max_abs_scalar,    abs_sum_prod_scalar, rosenbrock_scalar, rastrigin_core_scalar,
    ackley_sums_scalar, griewank_core_scalar, schwefel_sum_scalar,
};

}  // namespace

const Kernels& scalar() { return kScalar; }

const Kernels& active() {
  static const Kernels* chosen = [] {
    const Kernels* simd = avx2();
    if (const char* env = std::getenv("TSOME_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) return &kScalar;
      if (std::strcmp(env, "avx2") == 0 && simd) return simd;
    }
    return simd ? simd : &kScalar;
  }();
  return *chosen;
}

}  // namespace tsome::kernels
