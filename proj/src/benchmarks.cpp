#include "tsome/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "tsome/kernels.hpp"

namespace tsome::bench {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Fn {
  kSphere,
  kSchwefel12,
  kRosenbrock,
  kAckley,
  kGriewank,
  kRastrigin,
  kNoncontRastrigin,
  kSchwefel226,
  kSchwefel222,
  kMaxAbs,
  kPenalized1,
  kPenalized2,
  kLinearMaxAbs,   // max_i |A_i x - B_i|
  kWeierstrass,
  kTrigSystem,     // sum_i (A_i - B_i(x))^2
  kMichalewicz,
  kFastFractal,
};

struct Instance {
  Fn fn = Fn::kSphere;
  std::size_t n = 0;
  Domain domain;
  std::vector<double> shift;      // subtracted from x before the core formula
  std::vector<double> optimum;    // known optimizer when one exists
  std::vector<double> rotation;   // row-major n*n
  std::vector<double> lin_a;      // f16 rows
  std::vector<double> lin_b;      // f16 right-hand side
  std::vector<double> trig_a, trig_b, trig_alpha, trig_const;  // f18 data
  std::vector<double> w_ak, w_arg;  // Weierstrass tables
  double w_offset = 0.0;            // per-component Weierstrass constant
  std::vector<std::pair<double, double>> dips;  // FastFractal (center, scale)
  double dip_lo = 0.0, dip_hi = 0.0;            // union of dip windows
};

double gaussian(RngStream& rng) {
  const double u1 = 1.0 - rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Modified Gram-Schmidt on the columns of a Gaussian matrix. Redraws on the
// (measure-zero) chance of near-dependent columns.
std::vector<double> random_orthogonal(std::size_t n, RngStream& rng) {
  std::vector<double> q(n * n);
  for (;;) {
    for (auto& v : q) v = gaussian(rng);
    bool ok = true;
    for (std::size_t c = 0; c < n && ok; ++c) {
      for (std::size_t k = 0; k < c; ++k) {
        double proj = 0.0;
        for (std::size_t r = 0; r < n; ++r) proj += q[r * n + k] * q[r * n + c];
        for (std::size_t r = 0; r < n; ++r) q[r * n + c] -= proj * q[r * n + k];
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < n; ++r) norm += q[r * n + c] * q[r * n + c];
      norm = std::sqrt(norm);
      if (norm < 1e-8) {
        ok = false;
        break;
      }
      for (std::size_t r = 0; r < n; ++r) q[r * n + c] /= norm;
    }
    if (ok) return q;
  }
}

double penalty_u(double x, double a, double k, double m) {
  double t = 0.0;
  if (x > a) {
    t = x - a;
  } else if (x < -a) {
    t = -x - a;
  } else {
    return 0.0;
  }
  return k * std::pow(t, m);
}

double eval_weierstrass(const Instance& inst, const double* z) {
  double acc = 0.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    double inner = 0.0;
    for (std::size_t k = 0; k < inst.w_ak.size(); ++k) {
      inner += inst.w_ak[k] * std::cos(inst.w_arg[k] * (z[i] + 0.5));
    }
    acc += inner;
  }
  return acc - static_cast<double>(inst.n) * inst.w_offset;
}

double twist(double y) {
  const double t = y * (y - 1.0);
  return 4.0 * t * t;  // 4 (y^4 - 2 y^3 + y^2)
}

double fractal1d(const Instance& inst, double x) {
  if (x <= inst.dip_lo || x >= inst.dip_hi) return 0.0;
  double acc = 0.0;
  for (const auto& [c, s] : inst.dips) acc += doubledip(x, c, s);
  return acc;
}

double eval_instance(const Instance& inst, std::span<const double> x) {
  if (x.size() != inst.n) {
    throw std::invalid_argument("benchmark evaluation: dimension mismatch");
  }
  const auto& K = kernels::active();
  const std::size_t n = inst.n;
  thread_local std::vector<double> zbuf, wbuf;

  const double* z = x.data();
  if (!inst.shift.empty()) {
    zbuf.resize(n);
    K.sub(x.data(), inst.shift.data(), zbuf.data(), n);
    z = zbuf.data();
  }
  if (!inst.rotation.empty()) {
    wbuf.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      wbuf[i] = K.dot(inst.rotation.data() + i * n, z, n);
    }
    z = wbuf.data();
  }

  switch (inst.fn) {
    case Fn::kSphere:
      return K.sum_sq(z, n);
    case Fn::kSchwefel12: {
      double prefix = 0.0, acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        prefix += z[i];
        acc += prefix * prefix;
      }
      return acc;
    }
    case Fn::kRosenbrock:
      return K.rosenbrock(z, n);
    case Fn::kAckley: {
      double sum_sq = 0.0, sum_cos = 0.0;
      K.ackley_sums(z, n, &sum_sq, &sum_cos);
      const double inv_n = 1.0 / static_cast<double>(n);
      return -20.0 * std::exp(-0.2 * std::sqrt(inv_n * sum_sq)) - std::exp(inv_n * sum_cos) +
             20.0 + std::exp(1.0);
    }
    case Fn::kGriewank: {
      double sum_sq = 0.0, cos_prod = 0.0;
      K.griewank_core(z, n, &sum_sq, &cos_prod);
      return sum_sq / 4000.0 - cos_prod + 1.0;
    }
    case Fn::kRastrigin:
      return 10.0 * static_cast<double>(n) + K.rastrigin_core(z, n);
    case Fn::kNoncontRastrigin: {
      thread_local std::vector<double> ybuf;
      ybuf.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        ybuf[i] = std::fabs(z[i]) < 0.5 ? z[i] : std::round(2.0 * z[i]) / 2.0;
      }
      return 10.0 * static_cast<double>(n) + K.rastrigin_core(ybuf.data(), n);
    }
    case Fn::kSchwefel226:
      return 418.9829 * static_cast<double>(n) - K.schwefel_sum(z, n);
    case Fn::kSchwefel222: {
      double sum = 0.0, prod = 0.0;
      K.abs_sum_prod(z, n, &sum, &prod);
      return sum + prod;
    }
    case Fn::kMaxAbs:
      return K.max_abs(z, n);
    case Fn::kPenalized1: {
      const double inv4 = 0.25;
      double acc = 0.0, pen = 0.0;
      const double y1 = 1.0 + (z[0] + 1.0) * inv4;
      const double yn = 1.0 + (z[n - 1] + 1.0) * inv4;
      const double s1 = std::sin(kPi * y1);
      acc = 10.0 * s1 * s1;
      for (std::size_t i = 0; i < n; ++i) {
        const double yi = 1.0 + (z[i] + 1.0) * inv4;
        const double si = std::sin(kPi * yi);
        acc += (yi - 1.0) * (yi - 1.0) * (1.0 + 10.0 * si * si);
        pen += penalty_u(z[i], 10.0, 100.0, 4.0);
      }
      acc += (yn - 1.0) * (yn - 1.0);
      return (kPi / static_cast<double>(n)) * acc + pen;
    }
    case Fn::kPenalized2: {
      double pen = 0.0;
      const double s1 = std::sin(3.0 * kPi * z[0]);
      double acc = s1 * s1;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double si = std::sin(3.0 * kPi * z[i + 1]);
        acc += (z[i] - 1.0) * (z[i] - 1.0) * (1.0 + si * si);
      }
      const double sn = 1.0 + std::sin(kTwoPi * z[n - 1]);
      acc += (z[n - 1] - 1.0) * sn * sn;
      for (std::size_t i = 0; i < n; ++i) pen += penalty_u(z[i], 5.0, 100.0, 4.0);
      return 0.1 * acc + pen;
    }
    case Fn::kLinearMaxAbs: {
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::fabs(K.dot(inst.lin_a.data() + i * n, x.data(), n) - inst.lin_b[i]));
      }
      return m;
    }
    case Fn::kWeierstrass:
      return eval_weierstrass(inst, z);
    case Fn::kTrigSystem: {
      thread_local std::vector<double> sinx, cosx;
      sinx.resize(n);
      cosx.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        sinx[i] = std::sin(x[i]);
        cosx[i] = std::cos(x[i]);
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double bi = K.dot(inst.trig_a.data() + i * n, sinx.data(), n) +
                          K.dot(inst.trig_b.data() + i * n, cosx.data(), n);
        const double d = inst.trig_const[i] - bi;
        acc += d * d;
      }
      return acc;
    }
    case Fn::kMichalewicz: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(static_cast<double>(i + 1) * z[i] * z[i] / kPi);
        const double s2 = s * s;
        const double s4 = s2 * s2;
        const double s16 = s4 * s4 * s4 * s4;
        acc += std::sin(z[i]) * s16 * s4;  // sin(x_i) * s^20
      }
      return -acc;
    }
    case Fn::kFastFractal: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += fractal1d(inst, z[i] + twist(z[(i + 1) % n]));
      }
      return acc;
    }
  }
  throw std::logic_error("benchmark evaluation: unhandled function kind");
}

struct Blueprint {
  const char* id;
  Fn fn;
  std::size_t n;
  double lo, hi;
  bool shifted;
  double condition;  // 0 = unrotated
  bool known_zero;
};

const Blueprint kSuite[] = {
    {"f1", Fn::kSphere, 30, -100.0, 100.0, true, 0.0, true},
    {"f2", Fn::kSchwefel12, 30, -100.0, 100.0, true, 0.0, true},
    {"f3", Fn::kRosenbrock, 30, -100.0, 100.0, false, 0.0, true},
    {"f4", Fn::kAckley, 30, -32.0, 32.0, true, 0.0, true},
    {"f5", Fn::kAckley, 30, -32.0, 32.0, true, 1.0, true},
    {"f6", Fn::kGriewank, 30, -600.0, 600.0, true, 0.0, true},
    {"f7", Fn::kGriewank, 30, -600.0, 600.0, true, 3.0, true},
    {"f8", Fn::kRastrigin, 30, -5.0, 5.0, true, 0.0, true},
    {"f9", Fn::kRastrigin, 30, -5.0, 5.0, true, 3.0, true},
    {"f10", Fn::kNoncontRastrigin, 30, -500.0, 500.0, true, 0.0, true},
    {"f11", Fn::kSchwefel226, 30, -500.0, 500.0, false, 0.0, false},
    {"f12", Fn::kSchwefel222, 10, -10.0, 10.0, false, 0.0, true},
    {"f13", Fn::kMaxAbs, 10, -100.0, 100.0, false, 0.0, true},
    {"f14", Fn::kPenalized1, 10, -50.0, 50.0, false, 0.0, true},
    {"f15", Fn::kPenalized2, 10, -50.0, 50.0, false, 0.0, false},
    {"f16", Fn::kLinearMaxAbs, 30, -100.0, 100.0, false, 0.0, true},
    {"f17", Fn::kWeierstrass, 30, -0.5, 0.5, true, 5.0, true},
    {"f18", Fn::kTrigSystem, 30, -kPi, kPi, false, 0.0, true},
    {"f19", Fn::kRastrigin, 50, -5.0, 5.0, true, 3.0, true},
    {"f20", Fn::kMichalewicz, 50, 0.0, kPi, false, 0.0, false},
    {"f21", Fn::kSchwefel226, 50, -500.0, 500.0, false, 0.0, false},
    {"f22", Fn::kMichalewicz, 100, 0.0, kPi, false, 0.0, false},
    {"f23", Fn::kSchwefel226, 100, -500.0, 500.0, false, 0.0, false},
    {"f24", Fn::kSphere, 100, -100.0, 100.0, true, 0.0, true},
    {"f25", Fn::kMaxAbs, 100, -100.0, 100.0, true, 0.0, true},
    {"f26", Fn::kRosenbrock, 100, -100.0, 100.0, true, 0.0, true},
    {"f27", Fn::kRastrigin, 100, -5.0, 5.0, true, 0.0, true},
    {"f28", Fn::kGriewank, 100, -600.0, 600.0, true, 0.0, true},
    {"f29", Fn::kAckley, 100, -32.0, 32.0, true, 0.0, true},
    {"f30", Fn::kFastFractal, 100, -1.0, 1.0, false, 0.0, false},
};

const Blueprint* find_blueprint(std::string_view id) {
  for (const auto& bp : kSuite) {
    if (id == bp.id) return &bp;
  }
  return nullptr;
}

std::uint64_t instance_seed(std::string_view id, std::uint64_t master_seed) {
  return hash64(master_seed, id, 0);
}

void build_linear_system(Instance& inst, std::uint64_t seed) {
  const std::size_t n = inst.n;
  for (std::uint64_t attempt = 0;; ++attempt) {
    RngStream rng(hash64(seed, "linear", attempt));
    inst.lin_a.resize(n * n);
    for (auto& v : inst.lin_a) {
      v = static_cast<double>(static_cast<long long>(rng.index_below(1001)) - 500);
    }
    // reject singular draws via LU with partial pivoting
    std::vector<double> lu = inst.lin_a;
    bool singular = false;
    for (std::size_t c = 0; c < n && !singular; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (std::fabs(lu[r * n + c]) > std::fabs(lu[piv * n + c])) piv = r;
      }
      if (std::fabs(lu[piv * n + c]) < 1e-6) {
        singular = true;
        break;
      }
      if (piv != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu[c * n + j], lu[piv * n + j]);
      }
      for (std::size_t r = c + 1; r < n; ++r) {
        const double f = lu[r * n + c] / lu[c * n + c];
        for (std::size_t j = c; j < n; ++j) lu[r * n + j] -= f * lu[c * n + j];
      }
    }
    if (!singular) break;
  }
  // the right-hand side must reproduce the evaluation path bit for bit, so
  // it is built with the same dot kernel the evaluator dispatches to
  inst.lin_b.resize(n);
  const auto& K = kernels::active();
  for (std::size_t i = 0; i < n; ++i) {
    inst.lin_b[i] = K.dot(inst.lin_a.data() + i * n, inst.optimum.data(), n);
  }
}

void build_trig_system(Instance& inst, std::uint64_t seed) {
  const std::size_t n = inst.n;
  RngStream rng(hash64(seed, "trig", 0));
  inst.trig_a.resize(n * n);
  inst.trig_b.resize(n * n);
  for (auto& v : inst.trig_a) {
    v = static_cast<double>(static_cast<long long>(rng.index_below(201)) - 100);
  }
  for (auto& v : inst.trig_b) {
    v = static_cast<double>(static_cast<long long>(rng.index_below(201)) - 100);
  }
  inst.trig_alpha.resize(n);
  for (auto& v : inst.trig_alpha) v = rng.uniform(-kPi, kPi);
  inst.optimum = inst.trig_alpha;
  // built with the same kernel composition the evaluator uses, so the
  // optimum evaluates to exactly zero
  std::vector<double> sin_alpha(n), cos_alpha(n);
  for (std::size_t j = 0; j < n; ++j) {
    sin_alpha[j] = std::sin(inst.trig_alpha[j]);
    cos_alpha[j] = std::cos(inst.trig_alpha[j]);
  }
  const auto& K = kernels::active();
  inst.trig_const.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.trig_const[i] = K.dot(inst.trig_a.data() + i * n, sin_alpha.data(), n) +
                         K.dot(inst.trig_b.data() + i * n, cos_alpha.data(), n);
  }
}

void build_fractal(Instance& inst, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    RngStream rng(hash64(seed, "fractal", attempt));
    inst.dips.clear();
    for (int k = 1; k <= 3; ++k) {
      const double depth = static_cast<double>(1 << (k - 1));
      for (int rep = 0; rep < (1 << (k - 1)); ++rep) {
        const std::size_t count = rng.index_below(3);
        for (std::size_t t = 0; t < count; ++t) {
          const double c = rng.next_double();
          inst.dips.emplace_back(c, 1.0 / (depth * (2.0 - c)));
        }
      }
    }
    if (!inst.dips.empty()) break;
  }
  inst.dip_lo = inst.dip_hi = inst.dips.front().first;
  for (const auto& [c, s] : inst.dips) {
    inst.dip_lo = std::min(inst.dip_lo, c);
    inst.dip_hi = std::max(inst.dip_hi, c);
  }
  inst.dip_lo -= 0.5;
  inst.dip_hi += 0.5;
}

std::shared_ptr<const Instance> build_instance(const Blueprint& bp, std::uint64_t master_seed) {
  auto inst = std::make_shared<Instance>();
  const std::uint64_t base = instance_seed(bp.id, master_seed);
  inst->fn = bp.fn;
  inst->n = bp.n;
  inst->domain = Domain::box(bp.n, bp.lo, bp.hi);

  if (bp.shifted) {
    ShiftVector sv = generate_shift(inst->domain, hash64(base, "shift", 0));
    inst->optimum = sv.values;
    if (bp.fn == Fn::kRosenbrock) {
      // optimum of the core formula sits at (1,...,1); shifting by o-1 puts
      // the instance optimum at o
      inst->shift.resize(bp.n);
      for (std::size_t i = 0; i < bp.n; ++i) inst->shift[i] = sv.values[i] - 1.0;
    } else {
      inst->shift = sv.values;
    }
  }
  if (bp.condition > 0.0) {
    inst->rotation = generate_rotation(bp.n, bp.condition, hash64(base, "rotation", 0)).m;
  }
  switch (bp.fn) {
    case Fn::kLinearMaxAbs: {
      ShiftVector sv = generate_shift(inst->domain, hash64(base, "shift", 0));
      inst->optimum = sv.values;
      build_linear_system(*inst, base);
      break;
    }
    case Fn::kTrigSystem:
      build_trig_system(*inst, base);
      break;
    case Fn::kWeierstrass: {
      inst->w_ak.resize(21);
      inst->w_arg.resize(21);
      double ak = 1.0, bk = 1.0;
      for (std::size_t k = 0; k < 21; ++k) {
        inst->w_ak[k] = ak;
        inst->w_arg[k] = kTwoPi * bk;
        ak *= 0.5;
        bk *= 3.0;
      }
      inst->w_offset = 0.0;
      for (std::size_t k = 0; k < 21; ++k) {
        inst->w_offset += inst->w_ak[k] * std::cos(inst->w_arg[k] * 0.5);
      }
      break;
    }
    case Fn::kFastFractal:
      build_fractal(*inst, base);
      break;
    case Fn::kRosenbrock:
      if (!bp.shifted) inst->optimum.assign(bp.n, 1.0);
      break;
    default:
      break;
  }
  return inst;
}

}  // namespace

double doubledip(double x, double center, double scale) {
  const double t = x - center;
  if (t <= -0.5 || t >= 0.5) return 0.0;
  const double t2 = t * t;
  return (((-6144.0 * t2 - 3088.0) * t2 - 392.0) * t2 + 1.0) * scale;
}

ShiftVector generate_shift(const Domain& domain, std::uint64_t seed) {
  ShiftVector sv;
  sv.seed = seed;
  sv.values.resize(domain.size());
  RngStream rng(seed);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const double margin = 0.1 * domain.width(i);
    sv.values[i] = rng.uniform(domain.lower[i] + margin, domain.upper[i] - margin);
  }
  return sv;
}

RotationMatrix generate_rotation(std::size_t n, double condition_target, std::uint64_t seed) {
  if (condition_target < 1.0) {
    throw std::invalid_argument("generate_rotation: condition target must be >= 1");
  }
  RotationMatrix rot;
  rot.n = n;
  rot.condition_target = condition_target;
  rot.seed = seed;
  RngStream rng(seed);
  const std::vector<double> u = random_orthogonal(n, rng);
  const std::vector<double> v = random_orthogonal(n, rng);
  std::vector<double> s(n, 1.0);
  if (n > 1 && condition_target > 1.0) {
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::pow(condition_target,
                      static_cast<double>(i) / static_cast<double>(n - 1));
    }
  }
  rot.m.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double us = u[i * n + k] * s[k];
      for (std::size_t j = 0; j < n; ++j) {
        rot.m[i * n + j] += us * v[j * n + k];
      }
    }
  }
  return rot;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& bp : kSuite) out.emplace_back(bp.id);
    return out;
  }();
  return ids;
}

Problem make_problem(std::string_view id, std::uint64_t master_seed) {
  const Blueprint* bp = find_blueprint(id);
  if (!bp) throw std::invalid_argument("unknown benchmark id: " + std::string(id));
  auto inst = build_instance(*bp, master_seed);
  Problem p;
  p.label = bp->id;
  p.domain = inst->domain;
  p.known_optimum = bp->known_zero ? std::optional<double>(0.0) : std::nullopt;
  p.evaluator = [inst](std::span<const double> x) { return eval_instance(*inst, x); };
  return p;
}

std::vector<double> optimum_point(std::string_view id, std::uint64_t master_seed) {
  const Blueprint* bp = find_blueprint(id);
  if (!bp) throw std::invalid_argument("unknown benchmark id: " + std::string(id));
  return build_instance(*bp, master_seed)->optimum;
}

std::vector<Problem> make_suite(std::uint64_t master_seed) {
  std::vector<Problem> suite;
  suite.reserve(std::size(kSuite));
  for (const auto& bp : kSuite) suite.push_back(make_problem(bp.id, master_seed));
  return suite;
}

std::vector<SuiteEntry> suite_manifest(std::uint64_t master_seed) {
  std::vector<SuiteEntry> entries;
  entries.reserve(std::size(kSuite));
  for (const auto& bp : kSuite) {
    entries.push_back({bp.id, bp.n, bp.lo, bp.hi, instance_seed(bp.id, master_seed)});
  }
  return entries;
}

std::string manifest_table(std::uint64_t master_seed) {
  std::string out = "id    n    lower        upper        seed\n";
  char line[128];
  for (const auto& e : suite_manifest(master_seed)) {
    std::snprintf(line, sizeof(line), "%-5s %-4zu %-12.6g %-12.6g %020llu\n", e.id.c_str(),
                  e.dimension, e.lower, e.upper, static_cast<unsigned long long>(e.seed));
    out += line;
  }
  return out;
}

}  // namespace tsome::bench
