#pragma once

/*
 * Deterministic counter-based randomness.
 *
 * Every randomized routine takes an explicit Seed and derives values as
 * pure functions of (seed, counter), so a draw for canonical index i never
 * depends on how many draws happened before it.  Serial and parallel fills
 * therefore agree, and equal (op, parameters, seed) yields bytewise equal
 * output everywhere in the library.
 */

#include <cstdint>
#include <vector>

namespace monobox {

struct Seed {
  std::uint64_t value = 0;
};

class CounterRng {
public:
  explicit CounterRng(Seed seed) : seed_(seed.value) {}

  // 64 uniform bits for this counter (splitmix64 finalizer over
  // seed + counter * golden ratio).
  std::uint64_t word(std::uint64_t counter) const;

  // Uniform value in [0, bound) for this counter; bound >= 1.
  std::uint32_t below(std::uint64_t counter, std::uint32_t bound) const;

  // Independent child stream for a tagged sub-task.
  CounterRng fork(std::uint64_t tag) const;

private:
  std::uint64_t seed_;
};

// First k values of a seeded uniform permutation of 0..n-1, sorted
// ascending.  Deterministic in (rng, n, k).
std::vector<int> sample_sorted(const CounterRng& rng, int n, int k);

} // namespace monobox
