#pragma once

/*
 * Longest strictly monotone runs in sequences of distinct reals.
 *
 * Lengths come from patience sorting (O(n log n)).  Among equal-length
 * longest runs the lexicographically-least index set is returned, selected
 * by a greedy pass over per-position "longest run starting here" lengths.
 */

#include <optional>
#include <span>
#include <vector>

namespace monobox {

struct RunCertificate {
  std::vector<int> indices; // strictly ascending positions
  int sign = 1;             // +1 increasing, -1 decreasing
};

// Direct check; throws on out-of-range or unordered indices or on a tied
// input sequence.
bool verify_run(std::span<const double> seq, const RunCertificate& cert);

struct LongestRuns {
  RunCertificate increasing;
  RunCertificate decreasing;
};

// Longest strictly increasing and decreasing runs; each is the
// lexicographically-least index set among its longest runs.  Throws
// std::invalid_argument if seq holds equal values.
LongestRuns longest_monotone(std::span<const double> seq);

// A monotone run of exactly length n (prefix of a longest run, increasing
// preferred), or nullopt if none exists.
std::optional<RunCertificate> monotone_of_length(std::span<const double> seq, int n);

} // namespace monobox
