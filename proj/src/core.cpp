#include "tsome/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace tsome {

Domain::Domain(std::vector<double> lo, std::vector<double> up)
    : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("Domain: bound vectors differ in length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw std::invalid_argument("Domain: lower[i] must be < upper[i]");
    }
  }
}

Domain Domain::box(std::size_t n, double lo, double hi) {
  return Domain(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

bool Domain::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

BudgetTracker::BudgetTracker(std::uint64_t limit) : limit_(limit) {
  if (limit == 0) throw std::invalid_argument("BudgetTracker: limit must be positive");
}

void BudgetTracker::charge() {
  if (consumed_ >= limit_) throw BudgetExhausted{};
  ++consumed_;
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) {
  // splitmix64 expansion avoids the all-zero state for every seed value
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + next_double() * (hi - lo);
}

std::size_t RngStream::index_below(std::size_t n) {
  const auto idx = static_cast<std::size_t>(next_double() * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

std::uint64_t hash64(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  std::uint64_t x = seed;
  std::uint64_t h = splitmix64(x);
  x = h ^ fnv1a(tag);
  h = splitmix64(x);
  x = h ^ index;
  return splitmix64(x);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view problem_id,
                              std::string_view algorithm_id, std::uint64_t run_index) {
  std::uint64_t h = hash64(master_seed, problem_id, 0);
  return hash64(h, algorithm_id, run_index);
}

void uniform_sample(const Domain& domain, RngStream& rng, std::span<double> out) {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    out[i] = rng.uniform(domain.lower[i], domain.upper[i]);
  }
}

std::vector<double> uniform_sample(const Domain& domain, RngStream& rng) {
  std::vector<double> x(domain.size());
  uniform_sample(domain, rng, x);
  return x;
}

double toroidal_correct(double v, double lo, double hi) {
  if (v >= lo && v <= hi) return v;
  const double width = hi - lo;
  double m = std::fmod(v - lo, width);
  if (m < 0.0) m += width;
  return lo + m;
}

void toroidal_correct(std::span<double> x, const Domain& domain) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = toroidal_correct(x[i], domain.lower[i], domain.upper[i]);
  }
}

double evaluate(const Problem& problem, std::span<const double> x, BudgetTracker& tracker) {
  tracker.charge();
  return problem.evaluator(x);
}

void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tsome
