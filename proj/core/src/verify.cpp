#include "monobox/verify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace monobox {

namespace {

// Product iteration over the axes of `box` excluding `skip`: fn(off) where
// off holds one host index per remaining axis, ascending axis order,
// last varying fastest.
template <class Fn>
void for_each_off(const SubBox& box, int skip, Fn&& fn) {
  std::vector<const std::vector<int>*> lists;
  for (int i = 0; i < box.dims(); ++i)
    if (i != skip) lists.push_back(&box.axes[static_cast<std::size_t>(i)]);
  std::vector<std::size_t> pos(lists.size(), 0);
  std::vector<int> off(lists.size());
  for (;;) {
    for (std::size_t i = 0; i < lists.size(); ++i) off[i] = (*lists[i])[pos[i]];
    fn(std::span<const int>(off));
    std::size_t j = lists.size();
    while (j-- > 0) {
      if (++pos[j] < lists[j]->size()) break;
      pos[j] = 0;
      if (j == 0) return;
    }
    if (lists.empty()) return;
  }
}

void check_signs(const std::vector<int>& signs, int dims) {
  if (static_cast<int>(signs.size()) != dims) throw std::invalid_argument("signs size mismatch");
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
}

} // namespace

bool verify_mono_box(const BoxColouring& host, const DirectionColourCertificate& cert) {
  const std::vector<int> host_sides(static_cast<std::size_t>(host.dims()), host.side());
  cert.subbox.validate(host_sides);
  if (!cert.subbox.uniform()) throw std::invalid_argument("mono-box subbox must be uniform");
  if (static_cast<int>(cert.direction_colours.size()) != host.dims())
    throw std::invalid_argument("direction_colours size mismatch");
  for (int c : cert.direction_colours)
    if (c < 0 || c >= host.colours()) throw std::invalid_argument("certificate colour out of range");

  for (int dir = 0; dir < host.dims(); ++dir) {
    const auto& axis = cert.subbox.axes[static_cast<std::size_t>(dir)];
    const auto want = static_cast<std::uint8_t>(cert.direction_colours[static_cast<std::size_t>(dir)]);
    bool ok = true;
    for_each_off(cert.subbox, dir, [&](std::span<const int> off) {
      for (std::size_t a = 0; a < axis.size() && ok; ++a)
        for (std::size_t b = a + 1; b < axis.size(); ++b)
          if (host.colour(dir, off, axis[a], axis[b]) != want) {
            ok = false;
            break;
          }
    });
    if (!ok) return false;
  }
  return true;
}

bool verify_monotone(const NumericArray& host, const MonotoneCertificate& cert) {
  cert.subbox.validate(host.sides());
  check_signs(cert.signs, host.dims());

  std::vector<int> cell(static_cast<std::size_t>(host.dims()));
  for (int dir = 0; dir < host.dims(); ++dir) {
    const auto& axis = cert.subbox.axes[static_cast<std::size_t>(dir)];
    const int sign = cert.signs[static_cast<std::size_t>(dir)];
    bool ok = true;
    for_each_off(cert.subbox, dir, [&](std::span<const int> off) {
      if (!ok) return;
      for (std::size_t i = 0, o = 0; i < cell.size(); ++i)
        if (static_cast<int>(i) != dir) cell[i] = off[o++];
      double prev = 0;
      for (std::size_t a = 0; a < axis.size(); ++a) {
        cell[static_cast<std::size_t>(dir)] = axis[a];
        double v = host.value_at(cell);
        if (a > 0 && (sign > 0 ? v <= prev : v >= prev)) {
          ok = false;
          return;
        }
        prev = v;
      }
    });
    if (!ok) return false;
  }
  return true;
}

bool verify_lex_monotone(const NumericArray& host, const LexMonotoneCertificate& cert) {
  cert.subbox.validate(host.sides());
  const int d = host.dims();
  check_signs(cert.signs, d);
  if (static_cast<int>(cert.perm.size()) != d) throw std::invalid_argument("perm size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int p : cert.perm) {
    if (p < 0 || p >= d || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("perm is not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }

  struct Entry {
    std::vector<int> rel;
    double value;
  };
  std::vector<Entry> cells;
  cells.reserve(static_cast<std::size_t>(cert.subbox.cell_count()));
  for_each_cell(cert.subbox, [&](std::span<const int> rel, std::span<const int> hostc) {
    cells.push_back({std::vector<int>(rel.begin(), rel.end()), host.value_at(hostc)});
  });

  auto lex_less = [&](const Entry& x, const Entry& y) {
    for (int i = 0; i < d; ++i) {
      int axis = cert.perm[static_cast<std::size_t>(i)];
      int s = cert.signs[static_cast<std::size_t>(axis)];
      int xv = s * x.rel[static_cast<std::size_t>(axis)];
      int yv = s * y.rel[static_cast<std::size_t>(axis)];
      if (xv != yv) return xv < yv;
    }
    return false;
  };

  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      bool vless = cells[a].value < cells[b].value;
      if (vless != lex_less(cells[a], cells[b])) return false;
    }
  return true;
}

std::string canonical_pattern(const BoxColouring& host, const SubBox& box) {
  const std::vector<int> host_sides(static_cast<std::size_t>(host.dims()), host.side());
  box.validate(host_sides);
  std::string out = "C;";
  out += std::to_string(box.dims());
  out += ';';
  for (int i = 0; i < box.dims(); ++i) {
    if (i) out += ',';
    out += std::to_string(box.axes[static_cast<std::size_t>(i)].size());
  }
  out += ';';
  for (int dir = 0; dir < host.dims(); ++dir) {
    const auto& axis = box.axes[static_cast<std::size_t>(dir)];
    for_each_off(box, dir, [&](std::span<const int> off) {
      for (std::size_t a = 0; a < axis.size(); ++a)
        for (std::size_t b = a + 1; b < axis.size(); ++b) {
          out += std::to_string(host.colour(dir, off, axis[a], axis[b]));
          out += ',';
        }
    });
  }
  return out;
}

std::string canonical_pattern(const NumericArray& host, const SubBox& box) {
  box.validate(host.sides());
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(box.cell_count()));
  for_each_cell(box, [&](std::span<const int>, std::span<const int> hostc) {
    vals.push_back(host.value_at(hostc));
  });
  std::vector<std::size_t> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  std::vector<std::size_t> rank(vals.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  std::string out = "A;";
  out += std::to_string(box.dims());
  out += ';';
  for (int i = 0; i < box.dims(); ++i) {
    if (i) out += ',';
    out += std::to_string(box.axes[static_cast<std::size_t>(i)].size());
  }
  out += ';';
  for (std::size_t r : rank) {
    out += std::to_string(r);
    out += ',';
  }
  return out;
}

} // namespace monobox
