#include "monobox/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace monobox {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t CounterRng::word(std::uint64_t counter) const {
  return mix64(seed_ + counter * kGolden);
}

std::uint32_t CounterRng::below(std::uint64_t counter, std::uint32_t bound) const {
  if (bound == 0) throw std::invalid_argument("bound must be >= 1");
  // Multiply-shift; bias is < bound / 2^64, irrelevant at this scale.
  return static_cast<std::uint32_t>((static_cast<unsigned __int128>(word(counter)) * bound) >> 64);
}

CounterRng CounterRng::fork(std::uint64_t tag) const {
  return CounterRng(Seed{mix64(seed_ ^ mix64(tag + kGolden))});
}

std::vector<int> sample_sorted(const CounterRng& rng, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample size out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(i),
                                           static_cast<std::uint32_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

} // namespace monobox
