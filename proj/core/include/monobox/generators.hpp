#pragma once

/*
 * Instance generators.  All random draws are keyed by canonical cell/edge
 * index (see rng.hpp), never by draw order.
 */

#include "monobox/model.hpp"
#include "monobox/rng.hpp"

namespace monobox {

// Uniform random r-colouring of the d-dimensional box of side N: the edge
// at canonical index i gets colour below(i, r).
BoxColouring gen_random_colouring(int dims, int side, int colours, Seed seed);

// Deterministic consistent colouring: every direction-i edge gets colour
// i mod r.
BoxColouring gen_direction_colouring(int dims, int side, int colours);

// Seeded uniform random permutation of {1..#cells} laid out row-major.
NumericArray gen_random_array(std::vector<int> sides, Seed seed);

// Rank-normalizes a raw (possibly tied) value map into an injective array:
// cells are ordered by (value, row-major position) and assigned ranks
// 1..#cells, so the strict order of the input is preserved and ties break
// toward the earlier cell.
NumericArray perturb_to_injective(std::vector<int> sides, const std::vector<double>& raw);

} // namespace monobox
