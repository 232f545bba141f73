#pragma once

/*
 * End-to-end searches: prepare a consistent sub-box, restrict its final
 * coordinate, solve a 1-D problem per prefix fiber, pigeonhole the
 * solutions to a dense set, and extract the target inside that set.  A
 * separate two-phase path exists for d=2 colourings as an independent
 * implementation used for differential testing.
 *
 * Every search is sound: a returned certificate always verifies against
 * the input instance.  Completeness holds only above doubly exponential
 * side thresholds; below them every stage still runs with capped
 * parameters and `guarantee_void` is set, so "none" means "not found",
 * never "absent".
 */

#include <cstdint>
#include <optional>
#include <string>

#include "monobox/dense_extraction.hpp"
#include "monobox/model.hpp"
#include "monobox/rng.hpp"

namespace monobox {

struct PipelineParams {
  std::uint64_t master_exponent = 0; // reported threshold exponent, informative only
  std::uint64_t tower_side = 0;      // consistent-box side target; 0 = closed form
  std::uint64_t restriction = 0;     // final-coordinate restriction; 0 = closed form
  double density = 0.0;              // pigeonhole density; 0 = from the used restriction
  bool saturated = false;            // a closed form overflowed its integer type
  int slice_cap = 12;                // consistency-search cap on the first d-1 axes
  int retries = 8;                   // extraction sampling retries
  Seed seed;
  std::uint64_t budget = 50'000'000; // per-stage node limit
};

// Closed-form parameters for a d-dimensional search with r colours (resp.
// an array) at target side n.  d == 1 leaves everything zero; the 1-D
// paths use none of it.
PipelineParams make_colouring_pipeline_params(int d, int r, int n);
PipelineParams make_array_pipeline_params(int d, int n);

struct MonoBoxSearch {
  std::optional<DirectionColourCertificate> certificate;
  std::string stage; // deepest stage reached; "complete" on success
  bool guarantee_void = false;
  bool budget_exhausted = false;
  ExtractionTrace trace; // trace of the last extraction attempt, if any ran
};

struct MonotoneSearch {
  std::optional<MonotoneCertificate> certificate;
  std::string stage;
  bool guarantee_void = false;
  bool budget_exhausted = false;
  ExtractionTrace trace;
};

// Box of side n monochromatic in every direction.  Stages: "consistency",
// "restrict", "fibers", "pigeonhole", "extraction", "complete".
MonoBoxSearch find_mono_box(const BoxColouring& col, int n, const PipelineParams& params = {});

// Two-phase d=2 search (per-row cliques, row pigeonhole, composite-colour
// cliques over rows, column pigeonhole).  Stages: "row-ramsey",
// "row-pigeonhole", "column-ramsey", "column-pigeonhole", "complete".
// Throws std::invalid_argument unless col.dims() == 2.
MonoBoxSearch find_mono_box_2d(const BoxColouring& col, int n, const PipelineParams& params = {});

// Monotone subarray of side n; same stage names as find_mono_box.
MonotoneSearch find_monotone_subarray(const NumericArray& arr, int n,
                                      const PipelineParams& params = {});

// Lex-monotone subarray of side n: all d!*2^d orders in lex_orders order,
// sub-boxes in odometer order per order, first hit wins.  Exact search
// with an early-abort cell walk; deterministic.
std::optional<LexMonotoneCertificate> find_lex_monotone(const NumericArray& arr, int n);

} // namespace monobox
