#pragma once

/*
 * Dense extraction: inside a consistent host, find a target box of side k
 * whose cells all lie in a given vertex set S.
 *
 * One level (d >= 2) runs: keep the prefix fibers holding at least eps*N/2
 * members of S along the last axis; sample last-coordinate values and keep
 * the fibers with enough sampled hits; solve a 1-D problem in each kept
 * fiber (mono clique, resp. monotone run); pigeonhole the solutions on
 * (vertex set, label); recurse one dimension down on the fibers of a
 * winning bucket at a reduced density.  Consistency of the host is what
 * makes the prefix restriction well defined and lets the per-fiber answer
 * transfer to the whole product.
 *
 * Sound always: every certificate is checked before return.  Complete only
 * above thresholds far past desk scale; whenever a closed-form sample size
 * or hit threshold is capped to fit the instance, the trace records it and
 * the completeness guarantee is void.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monobox/model.hpp"
#include "monobox/rng.hpp"

namespace monobox {

struct ExtractionParams {
  double epsilon = 0.25; // claimed density of S, in (0, 1/2)
  int sample_size = 0;   // |A|; 0 = closed-form size for the level, capped at N
  int retries = 8;       // independent samples of A before giving up
  Seed seed;
  std::uint64_t budget = 50'000'000;
};

struct ExtractionTrace {
  int dims = 0;
  std::string stage; // "density", "sampling", "ramsey"/"monotone", "recursion", "complete"
  std::vector<std::int64_t> dense_fibers;   // T: prefix cells dense in S
  std::vector<int> sample;                  // A: accepted last-coordinate sample
  std::vector<std::int64_t> hit_fibers;     // T': members of T with enough sampled hits
  std::vector<int> winning_set;             // B: the pigeonholed vertex set
  std::vector<std::int64_t> winning_fibers; // U: fibers whose 1-D solution was (B, label)
  int winning_label = 0;                    // shared colour (resp. sign)
  bool cap_applied = false;                 // a threshold was capped here or below
  bool budget_exhausted = false;
  std::vector<ExtractionTrace> children; // one per attempted bucket, in try order
};

struct BoxExtraction {
  std::optional<DirectionColourCertificate> certificate;
  ExtractionTrace trace;
};

struct ArrayExtraction {
  std::optional<MonotoneCertificate> certificate;
  ExtractionTrace trace;
};

// Box of side k, monochromatic in every direction, with all cells inside
// S.  `cells` lists S as strictly ascending row-major cell ids of col.
// Throws std::invalid_argument when the host fails is_consistent or S is
// malformed, std::out_of_range when an id escapes the host.
BoxExtraction extract_in_dense(const BoxColouring& col, const std::vector<std::int64_t>& cells,
                               int k, const ExtractionParams& params);

// Monotone subarray of side k with all cells inside S.  Host sides must be
// uniform; same preconditions otherwise.
ArrayExtraction extract_monotone_in_dense(const NumericArray& arr,
                                          const std::vector<std::int64_t>& cells, int k,
                                          const ExtractionParams& params);

// Restriction of the host to its prefix box, taken at last coordinate 0.
// For a consistent host the pin is immaterial, so this is "the" prefix
// restriction; it stays consistent.  Requires dims >= 2.
BoxColouring pinned_prefix(const BoxColouring& col);
NumericArray pinned_prefix(const NumericArray& arr);

} // namespace monobox
