#pragma once

/*
 * d-consistency: the colour (or value-order) seen between two cells that
 * differ only in coordinates up to i never depends on the shared
 * coordinates after i.
 *
 * Two equivalent checkers are provided.  The recursive one follows the
 * definition: all slices along the last axis carry the same pattern, and
 * one slice is recursively consistent (dimension 1 is vacuous).  The
 * unrolled one checks the projection property direction by direction.
 * They are asserted against each other in debug builds and compared
 * exhaustively in the test suite.
 *
 * find_consistent_* run the pigeonhole recursion: search every slice for a
 * recursively-consistent witness, bucket slices by (pattern, vertex set),
 * and take the product once some bucket reaches the target side.  They are
 * sound (returned witnesses always check) but complete only above
 * thresholds far beyond desk scale, so "no witness" means "not found".
 */

#include <cstdint>
#include <optional>
#include <string>

#include "monobox/model.hpp"

namespace monobox {

bool is_consistent(const BoxColouring& col, const SubBox& box);
bool is_consistent(const NumericArray& arr, const SubBox& box);
bool is_consistent_unrolled(const BoxColouring& col, const SubBox& box);
bool is_consistent_unrolled(const NumericArray& arr, const SubBox& box);

struct ConsistencyParams {
  int slice_side = 0;              // cap M on the first d-1 axes; 0 = uncapped
  std::uint64_t budget = 10'000'000; // slice-search node limit
};

struct ConsistencySearch {
  std::optional<ConsistencyWitness> witness;
  bool budget_exhausted = false;
  bool cap_applied = false;  // slice_side actually truncated an axis
  int patterns_observed = 0; // distinct slice patterns at the outermost level
  std::string failure;       // reason when no witness and budget remains
};

ConsistencySearch find_consistent_box(const BoxColouring& col, int k,
                                      const ConsistencyParams& params = {});
ConsistencySearch find_consistent_array(const NumericArray& arr, int k,
                                        const ConsistencyParams& params = {});

// Reference scan: first sub-box of side k (odometer order over index
// combinations) passing is_consistent.  Exponential; tiny inputs only.
std::optional<ConsistencyWitness> find_consistent_box_exhaustive(const BoxColouring& col, int k);
std::optional<ConsistencyWitness> find_consistent_array_exhaustive(const NumericArray& arr, int k);

} // namespace monobox
