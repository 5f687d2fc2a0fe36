#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "helpers.hpp"
#include "tsome/benchmarks.hpp"

using namespace tsome;
using namespace tsome::bench;

TEST_SUITE_BEGIN("benchmarks");

namespace {

constexpr std::uint64_t kSeed = 20120815;

double eval(const Problem& p, const std::vector<double>& x) { return p.evaluator(x); }

}  // namespace

TEST_CASE("suite shape matches the catalogue") {
  const auto suite = make_suite(kSeed);
  REQUIRE(suite.size() == 30);
  CHECK(suite[0].label == "f1");
  CHECK(suite[0].dimension() == 30);
  CHECK(suite[0].domain.lower[0] == -100.0);
  CHECK(suite[16].label == "f17");
  CHECK(suite[16].domain.lower[0] == -0.5);
  CHECK(suite[16].domain.upper[0] == 0.5);
  CHECK(suite[18].dimension() == 50);   // f19
  CHECK(suite[21].dimension() == 100);  // f22
  CHECK(suite[23].label == "f24");
  CHECK(suite[23].dimension() == 100);
  CHECK(suite[23].domain.lower[0] == -100.0);
  CHECK(suite[29].label == "f30");
  CHECK(suite[29].domain.upper[0] == 1.0);
}

TEST_CASE("shift vectors live in the central 80% and regenerate from seeds") {
  const Domain d = Domain::box(30, -100.0, 100.0);
  const ShiftVector a = generate_shift(d, 7);
  const ShiftVector b = generate_shift(d, 7);
  CHECK(a.values == b.values);
  for (double v : a.values) {
    CHECK(v >= -80.0);
    CHECK(v <= 80.0);
  }
  int distinct_pairs = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto x = generate_shift(d, 1000 + s);
    const auto y = generate_shift(d, 2000 + s);
    if (x.values != y.values) ++distinct_pairs;
  }
  CHECK(distinct_pairs == 100);
}

TEST_CASE("rotation matrices hit their condition numbers") {
  SUBCASE("condition 1 is orthogonal") {
    const RotationMatrix rot = generate_rotation(20, 1.0, 5);
    // M^T M == I entrywise
    for (std::size_t i = 0; i < 20; ++i) {
      for (std::size_t j = 0; j < 20; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < 20; ++k) acc += rot.m[k * 20 + i] * rot.m[k * 20 + j];
        CHECK(std::fabs(acc - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
    // isometry over random vectors
    RngStream rng(9);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> x(20), mx(20, 0.0);
      for (auto& v : x) v = rng.uniform(-5.0, 5.0);
      for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t k = 0; k < 20; ++k) mx[i] += rot.m[i * 20 + k] * x[k];
      }
      double nx = 0.0, nmx = 0.0;
      for (std::size_t i = 0; i < 20; ++i) {
        nx += x[i] * x[i];
        nmx += mx[i] * mx[i];
      }
      CHECK(std::sqrt(nmx) == doctest::Approx(std::sqrt(nx)).epsilon(1e-10));
    }
  }
  SUBCASE("condition 3 within 1%") {
    for (std::size_t n : {10, 30}) {
      const RotationMatrix rot = generate_rotation(n, 3.0, 11);
      const auto sv = testutil::singular_values(rot.m, n);
      const double ratio = sv.back() / sv.front();
      CHECK(ratio > 2.97);
      CHECK(ratio < 3.03);
    }
  }
}

TEST_CASE("shifted functions vanish at their optima") {
  for (const char* id : {"f1", "f2", "f4", "f5", "f6", "f7", "f8", "f9", "f10", "f16", "f17",
                         "f18", "f19", "f24", "f25", "f26", "f27", "f28", "f29"}) {
    const Problem p = make_problem(id, kSeed);
    const auto o = optimum_point(id, kSeed);
    REQUIRE_MESSAGE(o.size() == p.dimension(), std::string(id));
    const double f = eval(p, o);
    const std::string msg = std::string(id) + " eval(o) = " + std::to_string(f);
    CHECK_MESSAGE(std::fabs(f) <= 1e-12, msg);
  }
}

TEST_CASE("hand-checked values") {
  SUBCASE("rosenbrock at the ones vector") {
    const Problem p = make_problem("f3", kSeed);
    CHECK(eval(p, std::vector<double>(30, 1.0)) == 0.0);
  }
  SUBCASE("schwefel 2.26 near its known minimizer") {
    const Problem p = make_problem("f11", kSeed);
    CHECK(std::fabs(eval(p, std::vector<double>(30, 420.9687))) < 1e-2);
  }
  SUBCASE("michalewicz n=2 brute-force minimum") {
    // diagnostic instance of the same core formula at n = 2, m = 10
    constexpr int kGrid = 2000;
    double best = 1e300;
    for (int i = 0; i <= kGrid; ++i) {
      const double x0 = std::numbers::pi * i / kGrid;
      const double s0 = std::sin(x0) * std::pow(std::sin(x0 * x0 / std::numbers::pi), 20.0);
      for (int j = 0; j <= kGrid; ++j) {
        const double x1 = std::numbers::pi * j / kGrid;
        const double s1 =
            std::sin(x1) * std::pow(std::sin(2.0 * x1 * x1 / std::numbers::pi), 20.0);
        best = std::min(best, -(s0 + s1));
      }
    }
    CHECK(best == doctest::Approx(-1.8013).epsilon(1e-3));
  }
  SUBCASE("penalized functions at reference points") {
    const Problem f14 = make_problem("f14", kSeed);
    CHECK(std::fabs(eval(f14, std::vector<double>(10, -1.0))) < 1e-30);
    const Problem f15 = make_problem("f15", kSeed);
    // deep in the penalty region the u-terms dominate
    CHECK(eval(f15, std::vector<double>(10, 40.0)) > 1e7);
  }
}

TEST_CASE("non-continuity rule of f10 straddles the half-integer boundary") {
  const Problem p = make_problem("f10", kSeed);
  const auto o = optimum_point("f10", kSeed);
  // z_i < 0.5 keeps y == z; z_i >= 0.5 snaps to round(2z)/2
  auto shifted_eval = [&](double z0) {
    auto x = o;
    x[0] += z0;
    return eval(p, x);
  };
  // rastrigin core of a single displaced coordinate
  auto core = [](double y) { return y * y - 10.0 * std::cos(2.0 * std::numbers::pi * y) + 10.0; };
  CHECK(shifted_eval(0.49) == doctest::Approx(core(0.49)).epsilon(1e-9));
  CHECK(shifted_eval(0.5) == doctest::Approx(core(0.5)).epsilon(1e-9));      // round(1.0)/2
  CHECK(shifted_eval(0.74) == doctest::Approx(core(0.5)).epsilon(1e-9));     // round(1.48)/2
  CHECK(shifted_eval(0.76) == doctest::Approx(core(1.0)).epsilon(1e-9));     // round(1.52)/2
  CHECK(shifted_eval(-0.49) == doctest::Approx(core(-0.49)).epsilon(1e-9));
  CHECK(shifted_eval(-0.6) == doctest::Approx(core(-0.5)).epsilon(1e-9));
}

TEST_CASE("penalized functions match independent formula oracles") {
  auto u = [](double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
  };
  const Problem f14 = make_problem("f14", kSeed);
  const Problem f15 = make_problem("f15", kSeed);
  RngStream rng(606);
  const double pi = std::numbers::pi;
  for (int rep = 0; rep < 40; ++rep) {
    // half the probes sit inside the knee, half deep in the penalty region
    const double span = rep % 2 == 0 ? 4.0 : 50.0;
    std::vector<double> x(10);
    for (auto& v : x) v = rng.uniform(-span, span);

    double inner14 = 0.0, pen14 = 0.0;
    auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
    inner14 = 10.0 * std::sin(pi * y(0)) * std::sin(pi * y(0));
    for (std::size_t i = 0; i < 10; ++i) {
      inner14 += (y(i) - 1.0) * (y(i) - 1.0) *
                 (1.0 + 10.0 * std::sin(pi * y(i)) * std::sin(pi * y(i)));
      pen14 += u(x[i], 10.0, 100.0, 4.0);
    }
    inner14 += (y(9) - 1.0) * (y(9) - 1.0);
    const double oracle14 = pi / 10.0 * inner14 + pen14;
    CHECK(eval(f14, x) == doctest::Approx(oracle14).epsilon(1e-10));

    double inner15 = std::sin(3.0 * pi * x[0]) * std::sin(3.0 * pi * x[0]);
    for (std::size_t i = 0; i + 1 < 10; ++i) {
      const double s = std::sin(3.0 * pi * x[i + 1]);
      inner15 += (x[i] - 1.0) * (x[i] - 1.0) * (1.0 + s * s);
    }
    const double sn = 1.0 + std::sin(2.0 * pi * x[9]);
    inner15 += (x[9] - 1.0) * sn * sn;
    double pen15 = 0.0;
    for (double v : x) pen15 += u(v, 5.0, 100.0, 4.0);
    const double oracle15 = inner15 / 10.0 + pen15;
    CHECK(eval(f15, x) == doctest::Approx(oracle15).epsilon(1e-10));
  }
}

TEST_CASE("separable cores decompose coordinate-wise") {
  // additivity: f(x) - f(x with one coordinate changed) must not depend on
  // the other coordinates
  for (const char* id : {"f1", "f8", "f20"}) {
    const Problem p = make_problem(id, kSeed);
    RngStream rng(404);
    const std::size_t n = p.dimension();
    for (int rep = 0; rep < 5; ++rep) {
      auto x1 = uniform_sample(p.domain, rng);
      auto x2 = uniform_sample(p.domain, rng);
      const std::size_t i = rng.index_below(n);
      const double vi_old = x1[i];
      const double vi_new = x2[i];
      auto x1b = x1;
      x1b[i] = vi_new;
      auto x2b = x2;
      x2b[i] = vi_old;
      const double delta_in_x1 = eval(p, x1b) - eval(p, x1);
      const double delta_in_x2 = eval(p, x2) - eval(p, x2b);
      CHECK(delta_in_x1 == doctest::Approx(delta_in_x2).epsilon(1e-7));
    }
  }
  // schwefel 2.26 with its own additive oracle
  const Problem f11 = make_problem("f11", kSeed);
  RngStream rng(405);
  const auto x = uniform_sample(f11.domain, rng);
  double oracle = 418.9829 * 30.0;
  for (double v : x) oracle -= v * std::sin(std::sqrt(std::fabs(v)));
  CHECK(eval(f11, x) == doctest::Approx(oracle).epsilon(1e-10));
  // f12 has a product term; check the printed formula directly instead
  const Problem f12 = make_problem("f12", kSeed);
  const auto y = uniform_sample(f12.domain, rng);
  double s = 0.0, pr = 1.0;
  for (double v : y) {
    s += std::fabs(v);
    pr *= std::fabs(v);
  }
  CHECK(eval(f12, y) == doctest::Approx(s + pr).epsilon(1e-12));
}

TEST_CASE("rotated instances compose shift and rotation") {
  // condition-1 rotation preserves the distance to the optimum
  const Problem p = make_problem("f5", kSeed);
  const auto o = optimum_point("f5", kSeed);
  RngStream rng(31337);
  std::vector<double> x = o;
  for (auto& v : x) v += rng.uniform(-0.5, 0.5);
  // plain ackley of M(x-o) equals the instance value; with cond 1 the norm
  // of M(x-o) equals |x-o|, so the first exponential's argument matches
  double norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) norm += (x[i] - o[i]) * (x[i] - o[i]);
  const double f = p.evaluator(x);
  CHECK(f >= 0.0);
  const double rms_term =
      -20.0 * std::exp(-0.2 * std::sqrt(norm / static_cast<double>(x.size())));
  // the cosine term is bounded by [-e, ...], so f - (rms part) stays in range
  const double cos_part = f - (rms_term + 20.0 + std::exp(1.0));
  CHECK(cos_part <= 1e-9);                 // -exp(mean cos) <= -exp(-1) < 0
  CHECK(cos_part >= -std::exp(1.0) - 1e-9);
}

TEST_CASE("every function is finite on random points and at domain corners") {
  const auto suite = make_suite(kSeed);
  RngStream rng(5551212);
  for (const auto& p : suite) {
    const std::size_t n = p.dimension();
    for (int rep = 0; rep < 10; ++rep) {
      const auto x = uniform_sample(p.domain, rng);
      CHECK(std::isfinite(p.evaluator(x)));
    }
    std::vector<double> corner(n);
    for (std::size_t i = 0; i < n; ++i) {
      corner[i] = (i % 2 == 0) ? p.domain.lower[i] : p.domain.upper[i];
    }
    CHECK(std::isfinite(p.evaluator(corner)));
  }
}

TEST_CASE("doubledip window and center value") {
  CHECK(doubledip(0.3, 0.3, 0.75) == 0.75);  // polynomial is 1 at the center
  CHECK(doubledip(-2.0, -2.0, 0.125) == 0.125);
  CHECK(doubledip(0.81, 0.3, 0.75) == 0.0);   // outside (c-0.5, c+0.5)
  CHECK(doubledip(-0.21, 0.3, 0.75) == 0.0);
  CHECK(doubledip(0.31, 0.3, 1.0) != 0.0);    // inside the window
  // even in the offset around the center (exactly representable points)
  CHECK(doubledip(0.375, 0.25, 1.0) == doubledip(0.125, 0.25, 1.0));
}

TEST_CASE("fast fractal structure") {
  const Problem p = make_problem("f30", kSeed);
  RngStream rng(50);
  const auto x = uniform_sample(p.domain, rng);
  CHECK(p.evaluator(x) == p.evaluator(x));  // deterministic
  // bounded: each dip polynomial is within [-386, 1] times its scale <= 1,
  // summed over at most 14 dips and 100 coordinates
  for (int rep = 0; rep < 200; ++rep) {
    const auto y = uniform_sample(p.domain, rng);
    const double f = p.evaluator(y);
    CHECK(std::fabs(f) < 14.0 * 386.0 * 100.0);
  }
  // multimodal: distinct local values across the domain
  std::set<long long> buckets;
  for (int rep = 0; rep < 50; ++rep) {
    const auto y = uniform_sample(p.domain, rng);
    buckets.insert(static_cast<long long>(p.evaluator(y) * 1e6));
  }
  CHECK(buckets.size() > 10);
}

TEST_CASE("dimension mismatch is rejected") {
  const Problem p = make_problem("f1", kSeed);
  CHECK_THROWS_AS(p.evaluator(std::vector<double>(29, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("f31", kSeed), std::invalid_argument);
}

TEST_CASE("manifest lists every instance") {
  const auto entries = suite_manifest(kSeed);
  REQUIRE(entries.size() == 30);
  CHECK(entries[0].id == "f1");
  CHECK(entries[0].dimension == 30);
  const std::string table = manifest_table(kSeed);
  CHECK(table.find("f30") != std::string::npos);
  // the same master seed always renders the same manifest
  CHECK(table == manifest_table(kSeed));
}

TEST_SUITE_END();
