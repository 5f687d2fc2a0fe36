#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tsome/stats.hpp"

using namespace tsome;
using namespace tsome::stats;

TEST_SUITE_BEGIN("stats");

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
  CHECK(normal_cdf(-6.95) == doctest::Approx(1.82e-12).epsilon(5e-3));
  CHECK(normal_cdf(0.213) == doctest::Approx(0.584339).epsilon(1e-5));
  CHECK(normal_cdf(5.0) + normal_cdf(-5.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wilcoxon verdicts on constructed samples") {
  SUBCASE("disjoint supports separate") {
    std::vector<double> a(30), b(30);
    for (int i = 0; i < 30; ++i) {
      a[i] = 1e-6 * (i + 1);
      b[i] = 1.0 + 1e-3 * i;
    }
    CHECK(wilcoxon_verdict(a, b) == Verdict::kPlus);
    CHECK(wilcoxon_verdict(b, a) == Verdict::kMinus);
  }
  SUBCASE("identical samples tie") {
    const std::vector<double> a{0.5, 0.25, 0.125, 0.75};
    CHECK(wilcoxon_verdict(a, a) == Verdict::kEquals);
  }
  SUBCASE("tiny samples cannot reach significance") {
    // exact two-sided p for m = n = 2 is at least 1/3
    const std::vector<double> a{1.0, 2.0}, b{3.0, 4.0};
    CHECK(wilcoxon_verdict(a, b) == Verdict::kEquals);
  }
  SUBCASE("degenerate samples are rejected") {
    const std::vector<double> a{1.0};
    CHECK_THROWS_AS(wilcoxon_verdict(a, {}), std::invalid_argument);
  }
}

TEST_CASE("wilcoxon verdicts are antisymmetric and rank-invariant") {
  RngStream rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(12), b(15);
    const double shift = rng.uniform(-0.5, 0.5);
    for (auto& v : a) v = rng.uniform(0.0, 1.0);
    for (auto& v : b) v = rng.uniform(0.0, 1.0) + shift;
    const Verdict ab = wilcoxon_verdict(a, b);
    const Verdict ba = wilcoxon_verdict(b, a);
    if (ab == Verdict::kPlus) CHECK(ba == Verdict::kMinus);
    if (ab == Verdict::kMinus) CHECK(ba == Verdict::kPlus);
    if (ab == Verdict::kEquals) CHECK(ba == Verdict::kEquals);

    // strictly increasing transforms preserve ranks, hence verdicts
    auto mono = [](double v) { return std::exp(3.0 * v) - 7.0; };
    std::vector<double> am(a.size()), bm(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) am[i] = mono(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) bm[i] = mono(b[i]);
    CHECK(wilcoxon_verdict(am, bm) == ab);
  }
}

TEST_CASE("normal approximation tracks exact enumeration for small samples") {
  // continuous data: ties have measure zero, so the enumeration and the
  // approximation describe the same distribution
  RngStream rng(23);
  int checked = 0;
  for (std::size_t m = 2; m <= 8; ++m) {
    for (std::size_t n = 2; n <= 8; ++n) {
      for (int rep = 0; rep < 12; ++rep) {
        std::vector<double> a(m), b(n);
        const double shift = rng.uniform(-0.4, 0.9);
        for (auto& v : a) v = rng.uniform(0.0, 1.0);
        for (auto& v : b) v = rng.uniform(0.0, 1.0) + shift;
        const double exact = testutil::exact_wilcoxon_two_sided_p(a, b);
        if (std::fabs(exact - 0.05) <= 0.01) continue;  // undecidable band
        const double approx = wilcoxon_two_sided_p(a, b);
        CHECK((approx < 0.05) == (exact < 0.05));
        ++checked;
      }
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("rank scores") {
  SUBCASE("two algorithms, strict dominance") {
    const std::vector<std::vector<double>> means{{0.0, 0.1, 0.2}, {1.0, 1.1, 1.2}};
    const auto r = rank_scores(means);
    CHECK(r[0] == 2.0);
    CHECK(r[1] == 1.0);
  }
  SUBCASE("all tied share the average") {
    const std::vector<std::vector<double>> means{{3.0, 3.0}, {3.0, 3.0}, {3.0, 3.0}};
    const auto r = rank_scores(means);
    CHECK(r[0] == 2.0);
    CHECK(r[1] == 2.0);
    CHECK(r[2] == 2.0);
  }
  SUBCASE("matches a per-problem sorting oracle") {
    RngStream rng(29);
    const std::size_t n_algos = 10, n_problems = 30;
    std::vector<std::vector<double>> means(n_algos, std::vector<double>(n_problems));
    for (auto& row : means) {
      for (auto& v : row) v = std::round(rng.uniform(0.0, 40.0)) / 4.0;
    }
    const auto r = rank_scores(means);
    std::vector<double> oracle(n_algos, 0.0);
    for (std::size_t p = 0; p < n_problems; ++p) {
      for (std::size_t i = 0; i < n_algos; ++i) {
        // position = 1 + number strictly better + half the number tied
        double better = 0.0, tied = 0.0;
        for (std::size_t j = 0; j < n_algos; ++j) {
          if (j == i) continue;
          if (means[j][p] < means[i][p]) ++better;
          if (means[j][p] == means[i][p]) ++tied;
        }
        oracle[i] += static_cast<double>(n_algos) - better - 0.5 * tied;
      }
    }
    for (std::size_t i = 0; i < n_algos; ++i) {
      CHECK(r[i] == doctest::Approx(oracle[i] / n_problems).epsilon(1e-12));
    }
  }
  SUBCASE("invariant under per-problem monotone transforms") {
    RngStream rng(31);
    std::vector<std::vector<double>> means(5, std::vector<double>(8));
    for (auto& row : means) {
      for (auto& v : row) v = rng.uniform(0.0, 1.0);
    }
    auto transformed = means;
    for (std::size_t p = 0; p < 8; ++p) {
      for (std::size_t a = 0; a < 5; ++a) {
        transformed[a][p] = std::pow(10.0, means[a][p]) * (p + 1.0);
      }
    }
    CHECK(rank_scores(means) == rank_scores(transformed));
  }
}

TEST_CASE("holm procedure") {
  SUBCASE("zero gap is accepted") {
    const std::vector<double> ranks{5.0, 5.0};
    const std::vector<std::string> labels{"ref", "other"};
    const auto rows = holm_procedure(ranks, labels, 0, 30, 0.05);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].z == 0.0);
    CHECK(rows[0].p == 0.5);
    CHECK_FALSE(rows[0].rejected);
  }
  SUBCASE("thresholds step down and acceptance cascades") {
    RngStream rng(37);
    std::vector<double> ranks(10);
    for (auto& v : ranks) v = rng.uniform(1.0, 10.0);
    std::vector<std::string> labels;
    for (int i = 0; i < 10; ++i) labels.push_back("a" + std::to_string(i));
    const auto rows = holm_procedure(ranks, labels, 3, 30, 0.05);
    REQUIRE(rows.size() == 9);
    bool seen_accept = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0) {
        CHECK(rows[i].p >= rows[i - 1].p);
        CHECK(rows[i].threshold > rows[i - 1].threshold);
      }
      CHECK(rows[i].j_index == 9 - i);
      CHECK(rows[i].threshold == doctest::Approx(0.05 / (9.0 - i)).epsilon(1e-12));
      if (seen_accept) CHECK_FALSE(rows[i].rejected);
      if (!rows[i].rejected) seen_accept = true;
    }
  }
  SUBCASE("input validation") {
    const std::vector<double> one{1.0};
    const std::vector<std::string> l1{"a"};
    CHECK_THROWS_AS(holm_procedure(one, l1, 0, 30), std::invalid_argument);
    const std::vector<double> two{1.0, 2.0};
    const std::vector<std::string> l2{"a", "b"};
    CHECK_THROWS_AS(holm_procedure(two, l2, 0, 0), std::invalid_argument);
  }
}

TEST_SUITE_END();
