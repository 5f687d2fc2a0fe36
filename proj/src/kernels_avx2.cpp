// AVX2+FMA kernel variants. Compiled with per-function target attributes so
// the translation unit builds everywhere; kernels::avx2() hands the table out
// only when the CPU reports both feature bits.

#include "tsome/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#define TSOME_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define TSOME_HAVE_AVX2_BUILD 0
#endif

namespace tsome::kernels {

#if TSOME_HAVE_AVX2_BUILD

namespace {

#define TSOME_AVX2 __attribute__((target("avx2,fma")))

// Argument reduction constants (fdlibm two-step split of pi/2) and minimax
// polynomials on [-pi/4, pi/4] (Cephes sin/cos coefficient sets). Valid for
// the argument magnitudes the objectives produce (|x| well below 1e6).
constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050650619224932e-11;

constexpr double kSinCoef[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6,  -1.98412698295895385996e-4,
    8.33333333332211858878e-3,  -1.66666666666666307295e-1,
};
constexpr double kCosCoef[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7,  2.48015872888517179954e-5,
    -1.38888888888730564116e-3,  4.16666666666665929218e-2,
};

// Scalar twin of the vector path, used for loop tails so an AVX2 kernel is
// one consistent approximation over the whole input.
void sincos_tail(double x, double* s, double* c) {
  const double fn = std::nearbyint(x * kTwoOverPi);
  double r = x - fn * kPio2Hi;
  r -= fn * kPio2Lo;
  const double z = r * r;
  double ps = kSinCoef[0];
  for (int i = 1; i < 6; ++i) ps = ps * z + kSinCoef[i];
  const double sp = r + r * z * ps;
  double pc = kCosCoef[0];
  for (int i = 1; i < 6; ++i) pc = pc * z + kCosCoef[i];
  const double cp = 1.0 - 0.5 * z + z * z * pc;
  const auto q = static_cast<long long>(fn) & 3;
  switch (q) {
    case 0: *s = sp;  *c = cp;  break;
    case 1: *s = cp;  *c = -sp; break;
    case 2: *s = -sp; *c = -cp; break;
    default: *s = -cp; *c = sp; break;
  }
}

TSOME_AVX2 inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d fn = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(fn, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(fn, _mm256_set1_pd(kPio2Lo), r);
  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_set1_pd(kSinCoef[0]);
  for (int i = 1; i < 6; ++i) ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kSinCoef[i]));
  const __m256d sp = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

  __m256d pc = _mm256_set1_pd(kCosCoef[0]);
  for (int i = 1; i < 6; ++i) pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kCosCoef[i]));
  __m256d cp = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0));
  cp = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, cp);

  const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(fn));
  const __m256d odd = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(1)));
  const __m256d sign_sin = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(2)), 62));
  const __m256d sign_cos = _mm256_castsi256_pd(_mm256_slli_epi64(
      _mm256_and_si256(_mm256_add_epi64(q, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(2)), 62));

  *s_out = _mm256_xor_pd(_mm256_blendv_pd(sp, cp, odd), sign_sin);
  *c_out = _mm256_xor_pd(_mm256_blendv_pd(cp, sp, odd), sign_cos);
}

TSOME_AVX2 inline double hsum(__m256d v) {
  __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  return _mm_cvtsd_f64(s);
}

TSOME_AVX2 inline double hmax(__m256d v) {
  __m128d s = _mm_max_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  s = _mm_max_sd(s, _mm_unpackhi_pd(s, s));
  return _mm_cvtsd_f64(s);
}

TSOME_AVX2 inline double hprod(__m256d v) {
  __m128d s = _mm_mul_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  s = _mm_mul_sd(s, _mm_unpackhi_pd(s, s));
  return _mm_cvtsd_f64(s);
}

TSOME_AVX2 inline __m256d abs4(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

TSOME_AVX2 void sub_avx2(const double* x, const double* o, double* z, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(z + i, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(o + i)));
  }
  for (; i < n; ++i) z[i] = x[i] - o[i];
}

TSOME_AVX2 double sum_sq_avx2(const double* z, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(z + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += z[i] * z[i];
  return out;
}

TSOME_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

TSOME_AVX2 double max_abs_avx2(const double* z, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs4(_mm256_loadu_pd(z + i)));
  double out = hmax(m);
  for (; i < n; ++i) out = std::max(out, std::fabs(z[i]));
  return out;
}

TSOME_AVX2 void abs_sum_prod_avx2(const double* v, std::size_t n, double* sum, double* prod) {
  __m256d s = _mm256_setzero_pd();
  __m256d p = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = abs4(_mm256_loadu_pd(v + i));
    s = _mm256_add_pd(s, a);
    p = _mm256_mul_pd(p, a);
  }
  double so = hsum(s), po = hprod(p);
  for (; i < n; ++i) {
    const double a = std::fabs(v[i]);
    so += a;
    po *= a;
  }
  *sum = so;
  *prod = po;
}

TSOME_AVX2 double rosenbrock_avx2(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  __m256d acc = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d hundred = _mm256_set1_pd(100.0);
  std::size_t i = 0;
  for (; i + 5 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d xn = _mm256_loadu_pd(x + i + 1);
    const __m256d t = _mm256_fnmadd_pd(xi, xi, xn);
    const __m256d u = _mm256_sub_pd(one, xi);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(hundred, t), t, acc);
    acc = _mm256_fmadd_pd(u, u, acc);
  }
  double out = hsum(acc);
  for (; i + 1 < n; ++i) {
    const double t = x[i + 1] - x[i] * x[i];
    const double u = 1.0 - x[i];
    out += 100.0 * t * t + u * u;
  }
  return out;
}

TSOME_AVX2 double rastrigin_core_avx2(const double* z, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  const __m256d ten = _mm256_set1_pd(10.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(z + i);
    __m256d s, c;
    sincos4(_mm256_mul_pd(two_pi, v), &s, &c);
    acc = _mm256_fmadd_pd(v, v, _mm256_fnmadd_pd(ten, c, acc));
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    double s, c;
    sincos_tail(kTwoPi * z[i], &s, &c);
    out += z[i] * z[i] - 10.0 * c;
  }
  return out;
}

TSOME_AVX2 void ackley_sums_avx2(const double* z, std::size_t n, double* sum_sq, double* sum_cos) {
  __m256d sq = _mm256_setzero_pd();
  __m256d cs = _mm256_setzero_pd();
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(z + i);
    __m256d s, c;
    sincos4(_mm256_mul_pd(two_pi, v), &s, &c);
    sq = _mm256_fmadd_pd(v, v, sq);
    cs = _mm256_add_pd(cs, c);
  }
  double sqo = hsum(sq), cso = hsum(cs);
  for (; i < n; ++i) {
    double s, c;
    sincos_tail(kTwoPi * z[i], &s, &c);
    sqo += z[i] * z[i];
    cso += c;
  }
  *sum_sq = sqo;
  *sum_cos = cso;
}

TSOME_AVX2 void griewank_core_avx2(const double* z, std::size_t n, double* sum_sq, double* cos_prod) {
  __m256d sq = _mm256_setzero_pd();
  __m256d pr = _mm256_set1_pd(1.0);
  __m256d idx = _mm256_set_pd(4.0, 3.0, 2.0, 1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(z + i);
    const __m256d w = _mm256_div_pd(v, _mm256_sqrt_pd(idx));
    __m256d s, c;
    sincos4(w, &s, &c);
    sq = _mm256_fmadd_pd(v, v, sq);
    pr = _mm256_mul_pd(pr, c);
    idx = _mm256_add_pd(idx, four);
  }
  double sqo = hsum(sq), pro = hprod(pr);
  for (; i < n; ++i) {
    double s, c;
    sincos_tail(z[i] / std::sqrt(static_cast<double>(i + 1)), &s, &c);
    sqo += z[i] * z[i];
    pro *= c;
  }
  *sum_sq = sqo;
  *cos_prod = pro;
}

TSOME_AVX2 double schwefel_sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d t = _mm256_sqrt_pd(abs4(v));
    __m256d s, c;
    sincos4(t, &s, &c);
    acc = _mm256_fmadd_pd(v, s, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    double s, c;
    sincos_tail(std::sqrt(std::fabs(x[i])), &s, &c);
    out += x[i] * s;
  }
  return out;
}

const Kernels kAvx2 = {
    "avx2",          sub_avx2,          sum_sq_avx2,       dot_avx2,
    max_abs_avx2,    abs_sum_prod_avx2, rosenbrock_avx2,   rastrigin_core_avx2,
    ackley_sums_avx2, griewank_core_avx2, schwefel_sum_avx2,
};

}  // namespace

const Kernels* avx2() {
  static const Kernels* table = [&]() -> const Kernels* {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
    return nullptr;
  }();
  return table;
}

#else  // !TSOME_HAVE_AVX2_BUILD

const Kernels* avx2() { return nullptr; }

#endif

}  // namespace tsome::kernels
