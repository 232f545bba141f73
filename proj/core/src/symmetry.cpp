#include "monobox/symmetry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace monobox {
namespace {

void check_perm(std::span<const int> perm, int n, const char* what) {
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument(std::string(what) + " permutation has wrong length");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument(std::string(what) + " permutation is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::vector<int> cell_from(int dims, int direction, std::span<const int> off, int v) {
  std::vector<int> cell(static_cast<std::size_t>(dims));
  int oi = 0;
  for (int j = 0; j < dims; ++j) {
    cell[static_cast<std::size_t>(j)] = (j == direction) ? v : off[static_cast<std::size_t>(oi++)];
  }
  return cell;
}

template <class CellMap>
BoxColouring remap_colouring(const BoxColouring& col, CellMap&& map) {
  return make_colouring(col.dims(), col.side(), col.colours(),
                        [&](int direction, std::span<const int> off, int x, int y) {
                          std::vector<int> a = map(cell_from(col.dims(), direction, off, x));
                          std::vector<int> b = map(cell_from(col.dims(), direction, off, y));
                          return col.colour_between(a, b);
                        });
}

template <class CellMap>
NumericArray remap_array(std::vector<int> new_sides, const NumericArray& arr, CellMap&& map) {
  std::int64_t count = 1;
  for (int s : new_sides) {
    count *= s;
  }
  std::vector<double> values(static_cast<std::size_t>(count));
  std::vector<int> cell(new_sides.size(), 0);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    values[static_cast<std::size_t>(idx)] = arr.value_at(map(cell));
    for (int j = static_cast<int>(cell.size()) - 1; j >= 0; --j) {
      if (++cell[static_cast<std::size_t>(j)] < new_sides[static_cast<std::size_t>(j)]) {
        break;
      }
      cell[static_cast<std::size_t>(j)] = 0;
    }
  }
  return NumericArray(std::move(new_sides), std::move(values));
}

} // namespace

BoxColouring permute_colours(const BoxColouring& col, std::span<const int> perm) {
  check_perm(perm, col.colours(), "colour");
  std::vector<std::uint8_t> payload(col.payload().begin(), col.payload().end());
  for (auto& c : payload) {
    c = static_cast<std::uint8_t>(perm[c]);
  }
  return BoxColouring(col.dims(), col.side(), col.colours(), std::move(payload));
}

BoxColouring reverse_axis(const BoxColouring& col, int axis) {
  if (axis < 0 || axis >= col.dims()) {
    throw std::out_of_range("axis out of range");
  }
  int last = col.side() - 1;
  return remap_colouring(col, [&](std::vector<int> cell) {
    cell[static_cast<std::size_t>(axis)] = last - cell[static_cast<std::size_t>(axis)];
    return cell;
  });
}

NumericArray reverse_axis(const NumericArray& arr, int axis) {
  if (axis < 0 || axis >= arr.dims()) {
    throw std::out_of_range("axis out of range");
  }
  int last = arr.sides()[static_cast<std::size_t>(axis)] - 1;
  return remap_array(arr.sides(), arr, [&](std::vector<int> cell) {
    cell[static_cast<std::size_t>(axis)] = last - cell[static_cast<std::size_t>(axis)];
    return cell;
  });
}

BoxColouring permute_axes(const BoxColouring& col, std::span<const int> perm) {
  check_perm(perm, col.dims(), "axis");
  return remap_colouring(col, [&](const std::vector<int>& cell) {
    std::vector<int> old_cell(cell.size());
    for (std::size_t j = 0; j < cell.size(); ++j) {
      old_cell[static_cast<std::size_t>(perm[j])] = cell[j];
    }
    return old_cell;
  });
}

NumericArray permute_axes(const NumericArray& arr, std::span<const int> perm) {
  check_perm(perm, arr.dims(), "axis");
  std::vector<int> new_sides(arr.sides().size());
  for (std::size_t j = 0; j < new_sides.size(); ++j) {
    new_sides[j] = arr.sides()[static_cast<std::size_t>(perm[j])];
  }
  return remap_array(std::move(new_sides), arr, [&](const std::vector<int>& cell) {
    std::vector<int> old_cell(cell.size());
    for (std::size_t j = 0; j < cell.size(); ++j) {
      old_cell[static_cast<std::size_t>(perm[j])] = cell[j];
    }
    return old_cell;
  });
}

NumericArray reverse_values(const NumericArray& arr) {
  std::vector<double> values(arr.values().begin(), arr.values().end());
  for (double& v : values) {
    v = -v;
  }
  return NumericArray(arr.sides(), std::move(values));
}

} // namespace monobox
