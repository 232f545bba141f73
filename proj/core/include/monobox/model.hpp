#pragma once

/*
 * Core data model.
 *
 * BoxColouring is an r-edge-colouring of a Cartesian product of d complete
 * graphs K_N ("box").  Vertices are cells of [N]^d; an edge joins two cells
 * that differ in exactly one coordinate (its "direction").  Storage is one
 * dense tensor per direction, row-major over (off-coordinates, pair index
 * with x < y), so a direction-i edge is addressed by the d-1 fixed
 * coordinates plus an unordered vertex pair inside factor i.
 *
 * NumericArray is an injective real-valued d-dimensional array, row-major,
 * with per-axis side lengths.  Ties are rejected at construction.
 *
 * SubBox selects a combinatorial sub-box: one strictly increasing index set
 * per axis.  Certificates reference their host implicitly; verifiers take
 * (host, certificate) pairs.
 *
 * Conventions: all indices and colours are 0-based; signs are +1/-1.
 * All types are immutable after construction and safe to share across
 * threads read-only.
 */

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace monobox {

// Number of unordered pairs {x,y} with x < y < n.
constexpr std::int64_t pair_count(std::int64_t n) { return n * (n - 1) / 2; }

// Index of pair (x, y), x < y, in the canonical order
// (0,1),(0,2),...,(0,n-1),(1,2),...
constexpr std::int64_t pair_index(int x, int y, int n) {
  return static_cast<std::int64_t>(x) * n - static_cast<std::int64_t>(x) * (x + 1) / 2 + (y - x - 1);
}

// Row-major cell id for `cell` within a box of the given sides.
std::int64_t cell_id(std::span<const int> cell, std::span<const int> sides);

// Inverse of cell_id.
std::vector<int> cell_of_id(std::int64_t id, std::span<const int> sides);

// Advances c to the lexicographically next k-combination of {0..n-1};
// false past the last one.  An empty c has a single state.
bool next_combination(std::vector<int>& c, int n);

class BoxColouring {
public:
  // All edges colour 0.
  BoxColouring(int dims, int side, int colours);

  // payload is the canonical flat storage: direction-major, then off-cell
  // row-major over [side]^{d-1} (axes ascending, excluding the direction,
  // last varying fastest), then pair index.  Throws std::invalid_argument
  // on size or range mismatch.
  BoxColouring(int dims, int side, int colours, std::vector<std::uint8_t> payload);

  int dims() const { return dims_; }
  int side() const { return side_; }
  int colours() const { return colours_; }

  // Edges in one direction: side^{d-1} * C(side,2).
  std::int64_t edges_per_direction() const { return per_direction_; }
  std::int64_t edge_count() const { return per_direction_ * dims_; }

  // Colour of the direction-`direction` edge between x and y (x != y) whose
  // other coordinates are `off` (d-1 values, axes ascending, skipping
  // `direction`).  Bounds-checked; throws std::out_of_range.
  std::uint8_t colour(int direction, std::span<const int> off, int x, int y) const;

  // Colour of the edge between two adjacent cells (differing in exactly one
  // coordinate).  Throws std::invalid_argument if not adjacent.
  std::uint8_t colour_between(std::span<const int> a, std::span<const int> b) const;

  const std::vector<std::uint8_t>& payload() const { return payload_; }

  bool operator==(const BoxColouring&) const = default;

private:
  int dims_, side_, colours_;
  std::int64_t per_direction_;
  std::vector<std::uint8_t> payload_;

  std::int64_t edge_offset(int direction, std::span<const int> off, int x, int y) const;
};

// Builds a colouring by evaluating fn(direction, off, x, y) -> colour for
// every edge in canonical order.
template <class Fn>
BoxColouring make_colouring(int dims, int side, int colours, Fn&& fn);

class NumericArray {
public:
  // values: row-major over `sides`.  Throws std::invalid_argument on a size
  // mismatch or when two cells hold equal values.
  NumericArray(std::vector<int> sides, std::vector<double> values);

  int dims() const { return static_cast<int>(sides_.size()); }
  const std::vector<int>& sides() const { return sides_; }
  int side(int axis) const { return sides_.at(axis); }
  std::int64_t cell_count() const { return static_cast<std::int64_t>(values_.size()); }

  double value_at(std::span<const int> cell) const;
  const std::vector<double>& values() const { return values_; }

  bool operator==(const NumericArray&) const = default;

private:
  std::vector<int> sides_;
  std::vector<double> values_;
};

struct SubBox {
  // One strictly increasing, non-empty index list per axis.
  std::vector<std::vector<int>> axes;

  int dims() const { return static_cast<int>(axes.size()); }
  std::vector<int> sides() const;
  std::int64_t cell_count() const;

  // True when every axis selects the same number of indices.
  bool uniform() const;

  // The whole box of the given sides.
  static SubBox full(std::span<const int> sides);

  // Throws std::invalid_argument (structure) or std::out_of_range (bounds).
  void validate(std::span<const int> host_sides) const;

  // Maps a cell given in subbox-relative positions to host coordinates.
  std::vector<int> host_cell(std::span<const int> relative) const;

  bool operator==(const SubBox&) const = default;
};

// Walks all cells of `box` in row-major order over relative positions,
// calling fn(relative, host) with both coordinate vectors.
template <class Fn>
void for_each_cell(const SubBox& box, Fn&& fn);

// A sub-box monochromatic in every direction: all direction-i edges of the
// sub-box have colour direction_colours[i].
struct DirectionColourCertificate {
  SubBox subbox;                      // all sides equal
  std::vector<int> direction_colours; // one per axis
};

// A monotone subarray: every 1-dimensional fibre of the sub-box in
// direction i is strictly increasing (signs[i] == +1) or strictly
// decreasing (signs[i] == -1).
struct MonotoneCertificate {
  SubBox subbox;
  std::vector<int> signs; // +1 / -1 per axis
};

// A lex-monotone subarray: values sort exactly like the vectors
// (signs[perm[0]]*p[perm[0]], ..., signs[perm[d-1]]*p[perm[d-1]]) compared
// lexicographically, where p is the subbox-relative position of a cell.
struct LexMonotoneCertificate {
  SubBox subbox;
  std::vector<int> perm;  // permutation of 0..d-1
  std::vector<int> signs; // +1 / -1 per axis
};

// A sub-box whose restriction passes is_consistent, together with the
// canonical pattern encoding of that restriction.
struct ConsistencyWitness {
  SubBox subbox; // all sides equal
  std::string pattern;
};

// All d!*2^d (perm, signs) pairs a LexMonotoneCertificate can carry, in
// deterministic order: permutations ascending lexicographically from the
// identity; within each, sign vectors in binary counting order where bit j
// set means signs[j] = -1.
std::vector<std::pair<std::vector<int>, std::vector<int>>> lex_orders(int d);

// ---- template definitions ----

template <class Fn>
BoxColouring make_colouring(int dims, int side, int colours, Fn&& fn) {
  BoxColouring blank(dims, side, colours);
  std::vector<std::uint8_t> payload;
  payload.reserve(static_cast<std::size_t>(blank.edge_count()));
  std::vector<int> off(static_cast<std::size_t>(dims > 0 ? dims - 1 : 0), 0);
  for (int dir = 0; dir < dims; ++dir) {
    std::fill(off.begin(), off.end(), 0);
    std::int64_t off_cells = 1;
    for (int j = 0; j < dims - 1; ++j) off_cells *= side;
    for (std::int64_t oc = 0; oc < off_cells; ++oc) {
      for (int x = 0; x < side; ++x)
        for (int y = x + 1; y < side; ++y)
          payload.push_back(static_cast<std::uint8_t>(fn(dir, std::span<const int>(off), x, y)));
      // advance off row-major, last axis fastest
      for (int j = dims - 2; j >= 0; --j) {
        if (++off[static_cast<std::size_t>(j)] < side) break;
        off[static_cast<std::size_t>(j)] = 0;
      }
    }
  }
  return BoxColouring(dims, side, colours, std::move(payload));
}

template <class Fn>
void for_each_cell(const SubBox& box, Fn&& fn) {
  const int d = box.dims();
  std::vector<int> rel(static_cast<std::size_t>(d), 0);
  std::vector<int> host(static_cast<std::size_t>(d));
  for (;;) {
    for (int i = 0; i < d; ++i)
      host[static_cast<std::size_t>(i)] =
          box.axes[static_cast<std::size_t>(i)][static_cast<std::size_t>(rel[static_cast<std::size_t>(i)])];
    fn(std::span<const int>(rel), std::span<const int>(host));
    int j = d - 1;
    for (; j >= 0; --j) {
      auto ju = static_cast<std::size_t>(j);
      if (++rel[ju] < static_cast<int>(box.axes[ju].size())) break;
      rel[ju] = 0;
    }
    if (j < 0) break;
  }
}

} // namespace monobox
