#include "monobox/model.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace monobox {

namespace {

constexpr std::int64_t kMaxEdges = 1'000'000'000; // refuse absurd allocations

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && v > kMaxEdges / base) throw std::length_error("box too large");
    v *= base;
  }
  return v;
}

} // namespace

std::int64_t cell_id(std::span<const int> cell, std::span<const int> sides) {
  if (cell.size() != sides.size()) throw std::invalid_argument("cell/sides dimension mismatch");
  std::int64_t id = 0;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (cell[i] < 0 || cell[i] >= sides[i]) throw std::out_of_range("cell coordinate out of range");
    id = id * sides[i] + cell[i];
  }
  return id;
}

std::vector<int> cell_of_id(std::int64_t id, std::span<const int> sides) {
  std::vector<int> cell(sides.size());
  for (std::size_t i = sides.size(); i-- > 0;) {
    cell[i] = static_cast<int>(id % sides[i]);
    id /= sides[i];
  }
  return cell;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - (k - i)) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

BoxColouring::BoxColouring(int dims, int side, int colours)
    : dims_(dims), side_(side), colours_(colours) {
  if (dims < 1) throw std::invalid_argument("dims must be >= 1");
  if (side < 1) throw std::invalid_argument("side must be >= 1");
  if (colours < 1 || colours > 255) throw std::invalid_argument("colours must be in 1..255");
  std::int64_t off_cells = checked_pow(side, dims - 1);
  std::int64_t pairs = pair_count(side);
  if (pairs != 0 && off_cells > kMaxEdges / pairs) throw std::length_error("edge count overflow");
  per_direction_ = off_cells * pairs;
  if (per_direction_ != 0 && dims > kMaxEdges / per_direction_)
    throw std::length_error("edge count overflow");
  payload_.assign(static_cast<std::size_t>(per_direction_ * dims), 0);
}

BoxColouring::BoxColouring(int dims, int side, int colours, std::vector<std::uint8_t> payload)
    : BoxColouring(dims, side, colours) {
  if (payload.size() != payload_.size()) throw std::invalid_argument("payload size mismatch");
  for (std::uint8_t c : payload)
    if (c >= colours_) throw std::invalid_argument("payload colour out of range");
  payload_ = std::move(payload);
}

std::int64_t BoxColouring::edge_offset(int direction, std::span<const int> off, int x, int y) const {
  if (direction < 0 || direction >= dims_) throw std::out_of_range("direction out of range");
  if (static_cast<int>(off.size()) != dims_ - 1) throw std::invalid_argument("off size mismatch");
  if (x == y) throw std::invalid_argument("edge endpoints equal");
  if (x > y) std::swap(x, y);
  if (x < 0 || y >= side_) throw std::out_of_range("edge endpoint out of range");
  std::int64_t oc = 0;
  for (std::size_t i = 0; i < off.size(); ++i) {
    if (off[i] < 0 || off[i] >= side_) throw std::out_of_range("off coordinate out of range");
    oc = oc * side_ + off[i];
  }
  return static_cast<std::int64_t>(direction) * per_direction_ + oc * pair_count(side_) +
         pair_index(x, y, side_);
}

std::uint8_t BoxColouring::colour(int direction, std::span<const int> off, int x, int y) const {
  return payload_[static_cast<std::size_t>(edge_offset(direction, off, x, y))];
}

std::uint8_t BoxColouring::colour_between(std::span<const int> a, std::span<const int> b) const {
  if (static_cast<int>(a.size()) != dims_ || static_cast<int>(b.size()) != dims_)
    throw std::invalid_argument("cell dimension mismatch");
  int direction = -1;
  for (int i = 0; i < dims_; ++i) {
    if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)]) {
      if (direction >= 0) throw std::invalid_argument("cells are not adjacent");
      direction = i;
    }
  }
  if (direction < 0) throw std::invalid_argument("cells are equal");
  std::vector<int> off;
  off.reserve(static_cast<std::size_t>(dims_ - 1));
  for (int i = 0; i < dims_; ++i)
    if (i != direction) off.push_back(a[static_cast<std::size_t>(i)]);
  return colour(direction, off, a[static_cast<std::size_t>(direction)],
                b[static_cast<std::size_t>(direction)]);
}

NumericArray::NumericArray(std::vector<int> sides, std::vector<double> values)
    : sides_(std::move(sides)), values_(std::move(values)) {
  if (sides_.empty()) throw std::invalid_argument("array needs at least one axis");
  std::int64_t cells = 1;
  for (int s : sides_) {
    if (s < 1) throw std::invalid_argument("sides must be >= 1");
    if (cells > kMaxEdges / s) throw std::length_error("array too large");
    cells *= s;
  }
  if (static_cast<std::int64_t>(values_.size()) != cells)
    throw std::invalid_argument("values size mismatch");
  std::vector<double> sorted(values_);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("array values must be injective");
}

double NumericArray::value_at(std::span<const int> cell) const {
  return values_[static_cast<std::size_t>(cell_id(cell, sides_))];
}

std::vector<int> SubBox::sides() const {
  std::vector<int> s;
  s.reserve(axes.size());
  for (const auto& a : axes) s.push_back(static_cast<int>(a.size()));
  return s;
}

std::int64_t SubBox::cell_count() const {
  std::int64_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::int64_t>(a.size());
  return n;
}

bool SubBox::uniform() const {
  for (const auto& a : axes)
    if (a.size() != axes.front().size()) return false;
  return true;
}

SubBox SubBox::full(std::span<const int> sides) {
  SubBox b;
  b.axes.reserve(sides.size());
  for (int s : sides) {
    std::vector<int> axis(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) axis[static_cast<std::size_t>(i)] = i;
    b.axes.push_back(std::move(axis));
  }
  return b;
}

void SubBox::validate(std::span<const int> host_sides) const {
  if (axes.size() != host_sides.size()) throw std::invalid_argument("subbox dimension mismatch");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].empty()) throw std::invalid_argument("subbox axis empty");
    int prev = -1;
    for (int v : axes[i]) {
      if (v <= prev) throw std::invalid_argument("subbox axis not strictly increasing");
      if (v < 0 || v >= host_sides[i]) throw std::out_of_range("subbox index out of host range");
      prev = v;
    }
  }
}

std::vector<int> SubBox::host_cell(std::span<const int> relative) const {
  std::vector<int> host(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i)
    host[i] = axes[i].at(static_cast<std::size_t>(relative[i]));
  return host;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> lex_orders(int d) {
  if (d < 1) throw std::invalid_argument("dims must be >= 1");
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      std::vector<int> signs(static_cast<std::size_t>(d), 1);
      for (int j = 0; j < d; ++j) {
        if (mask & (1u << j)) signs[static_cast<std::size_t>(j)] = -1;
      }
      out.emplace_back(perm, std::move(signs));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

} // namespace monobox
