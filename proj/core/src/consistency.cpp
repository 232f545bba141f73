#include "monobox/consistency.hpp"

#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monobox/verify.hpp"

namespace monobox {
namespace {

// Walks the product of box.axes[j] for j != skip, ascending axis order,
// last axis fastest.  fn receives the absolute off-coordinates.
template <class Fn>
void for_each_off(const SubBox& box, int skip, Fn&& fn) {
  int d = box.dims();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    std::vector<int> off;
    off.reserve(static_cast<std::size_t>(d - 1));
    for (int j = 0; j < d; ++j) {
      if (j != skip) {
        off.push_back(box.axes[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
      }
    }
    fn(off);
    int j = d - 1;
    for (; j >= 0; --j) {
      if (j == skip) {
        continue;
      }
      auto ju = static_cast<std::size_t>(j);
      if (++idx[ju] < static_cast<int>(box.axes[ju].size())) {
        break;
      }
      idx[ju] = 0;
    }
    if (j < 0) {
      break;
    }
  }
}

bool unrolled_colouring(const BoxColouring& col, const SubBox& box) {
  int d = box.dims();
  for (int i = 0; i < d; ++i) {
    const auto& ai = box.axes[static_cast<std::size_t>(i)];
    if (ai.size() < 2) {
      continue;
    }
    bool ok = true;
    for_each_off(box, i, [&](const std::vector<int>& off) {
      if (!ok) {
        return;
      }
      // Reset the coordinates after direction i to their first values; the
      // off vector skips axis i, so positions >= i belong to later axes.
      std::vector<int> reset = off;
      for (int j = i + 1; j < d; ++j) {
        reset[static_cast<std::size_t>(j - 1)] = box.axes[static_cast<std::size_t>(j)][0];
      }
      for (std::size_t xi = 0; xi + 1 < ai.size() && ok; ++xi) {
        for (std::size_t yi = xi + 1; yi < ai.size(); ++yi) {
          if (col.colour(i, off, ai[xi], ai[yi]) != col.colour(i, reset, ai[xi], ai[yi])) {
            ok = false;
            break;
          }
        }
      }
    });
    if (!ok) {
      return false;
    }
  }
  return true;
}

bool unrolled_array(const NumericArray& arr, const SubBox& box) {
  int d = box.dims();
  // Condition at index i: for cells agreeing on all coordinates after i,
  // the value order is independent of those shared coordinates.  i = d-1 is
  // vacuous.
  for (int i = 0; i + 1 < d; ++i) {
    // Enumerate prefix cells (axes 0..i) as absolute coordinate stubs.
    std::vector<std::vector<int>> prefixes;
    {
      std::vector<int> idx(static_cast<std::size_t>(i) + 1, 0);
      for (;;) {
        std::vector<int> cell(static_cast<std::size_t>(i) + 1);
        for (int j = 0; j <= i; ++j) {
          cell[static_cast<std::size_t>(j)] =
              box.axes[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        }
        prefixes.push_back(std::move(cell));
        int j = i;
        for (; j >= 0; --j) {
          auto ju = static_cast<std::size_t>(j);
          if (++idx[ju] < static_cast<int>(box.axes[ju].size())) {
            break;
          }
          idx[ju] = 0;
        }
        if (j < 0) {
          break;
        }
      }
    }
    // Enumerate trailing stubs (axes i+1..d-1), first one is the reference.
    std::vector<std::vector<int>> trailings;
    {
      std::vector<int> idx(static_cast<std::size_t>(d - i - 1), 0);
      for (;;) {
        std::vector<int> tail(static_cast<std::size_t>(d - i - 1));
        for (int j = i + 1; j < d; ++j) {
          tail[static_cast<std::size_t>(j - i - 1)] =
              box.axes[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[static_cast<std::size_t>(j - i - 1)])];
        }
        trailings.push_back(std::move(tail));
        int j = d - 1;
        for (; j > i; --j) {
          auto ju = static_cast<std::size_t>(j - i - 1);
          if (++idx[ju] < static_cast<int>(box.axes[static_cast<std::size_t>(j)].size())) {
            break;
          }
          idx[ju] = 0;
        }
        if (j <= i) {
          break;
        }
      }
    }
    std::vector<int> cell_p(static_cast<std::size_t>(d));
    std::vector<int> cell_q(static_cast<std::size_t>(d));
    auto value = [&](const std::vector<int>& prefix, const std::vector<int>& tail,
                     std::vector<int>& cell) {
      for (int j = 0; j <= i; ++j) {
        cell[static_cast<std::size_t>(j)] = prefix[static_cast<std::size_t>(j)];
      }
      for (int j = i + 1; j < d; ++j) {
        cell[static_cast<std::size_t>(j)] = tail[static_cast<std::size_t>(j - i - 1)];
      }
      return arr.value_at(cell);
    };
    for (std::size_t p = 0; p + 1 < prefixes.size(); ++p) {
      for (std::size_t q = p + 1; q < prefixes.size(); ++q) {
        bool ref = value(prefixes[p], trailings[0], cell_p) < value(prefixes[q], trailings[0], cell_q);
        for (std::size_t t = 1; t < trailings.size(); ++t) {
          bool lt = value(prefixes[p], trailings[t], cell_p) < value(prefixes[q], trailings[t], cell_q);
          if (lt != ref) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

template <class Host>
bool recursive_consistent(const Host& host, std::vector<std::vector<int>> axes, int e) {
  if (e <= 1) {
    return true;
  }
  auto& last = axes[static_cast<std::size_t>(e - 1)];
  std::vector<int> values = last;
  std::string base;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    last = {values[vi]};
    std::string pat = canonical_pattern(host, SubBox{axes});
    if (vi == 0) {
      base = std::move(pat);
    } else if (pat != base) {
      return false;
    }
  }
  last = {values[0]};
  return recursive_consistent(host, std::move(axes), e - 1);
}

std::string axes_key(const std::vector<std::vector<int>>& axes) {
  std::ostringstream out;
  for (const auto& axis : axes) {
    for (int v : axis) {
      out << v << ',';
    }
    out << ';';
  }
  return out.str();
}

// Shared pigeonhole recursion for both hosts.  Host adapters provide the
// per-axis side and the pattern encoding.
template <class Host>
struct FindCtx {
  const Host* host;
  int d = 0;
  int k = 0;
  int cap = 0; // leading-axis range limit M; 0 = none
  std::uint64_t budget = 0;
  bool exhausted = false;
  std::set<std::string> top_patterns;

  int range(int e) const {
    int side = host->axis_side(e - 1);
    if (e == d || cap == 0) {
      return side;
    }
    return std::min(side, cap);
  }
};

// Searches for a consistent box of side k in the leading e axes; values of
// axes e..d-1 are pinned to `pinned` (absolute, ascending axis order).
template <class Host>
std::optional<std::vector<std::vector<int>>> find_rec(FindCtx<Host>& ctx, int e,
                                                      std::vector<int>& pinned) {
  if (ctx.budget == 0) {
    ctx.exhausted = true;
    return std::nullopt;
  }
  --ctx.budget;
  int range = ctx.range(e);
  if (ctx.k > range) {
    return std::nullopt;
  }
  if (e == 1) {
    std::vector<int> base(static_cast<std::size_t>(ctx.k));
    for (int i = 0; i < ctx.k; ++i) {
      base[static_cast<std::size_t>(i)] = i;
    }
    return std::vector<std::vector<int>>{std::move(base)};
  }
  // (pattern, vertex-set) -> (witness axes, slice values seen so far)
  std::map<std::pair<std::string, std::string>,
           std::pair<std::vector<std::vector<int>>, std::vector<int>>>
      buckets;
  for (int a = 0; a < range; ++a) {
    pinned.insert(pinned.begin(), a);
    auto sub = find_rec(ctx, e - 1, pinned);
    pinned.erase(pinned.begin());
    if (ctx.exhausted) {
      return std::nullopt;
    }
    if (!sub) {
      continue;
    }
    std::vector<std::vector<int>> slice_axes = *sub;
    slice_axes.push_back({a});
    for (std::size_t j = 0; j < pinned.size(); ++j) {
      slice_axes.push_back({pinned[j]});
    }
    std::string pattern = ctx.host->pattern(slice_axes);
    if (e == ctx.d) {
      ctx.top_patterns.insert(pattern);
    }
    auto key = std::make_pair(std::move(pattern), axes_key(*sub));
    auto& entry = buckets[key];
    if (entry.second.empty()) {
      entry.first = std::move(*sub);
    }
    entry.second.push_back(a);
    if (static_cast<int>(entry.second.size()) == ctx.k) {
      std::vector<std::vector<int>> axes = entry.first;
      axes.push_back(entry.second);
      return axes;
    }
  }
  return std::nullopt;
}

struct ColouringHost {
  const BoxColouring* c;
  int axis_side(int) const { return c->side(); }
  std::string pattern(const std::vector<std::vector<int>>& axes) const {
    return canonical_pattern(*c, SubBox{axes});
  }
};

struct ArrayHost {
  const NumericArray* a;
  int axis_side(int axis) const { return a->side(axis); }
  std::string pattern(const std::vector<std::vector<int>>& axes) const {
    return canonical_pattern(*a, SubBox{axes});
  }
};

template <class Host, class Object>
ConsistencySearch find_impl(const Host& host, const Object& obj, int d, int k,
                            const ConsistencyParams& params) {
  if (k < 1) {
    throw std::invalid_argument("target side must be positive");
  }
  ConsistencySearch out;
  FindCtx<Host> ctx;
  ctx.host = &host;
  ctx.d = d;
  ctx.k = k;
  ctx.cap = params.slice_side;
  ctx.budget = params.budget;
  for (int j = 0; j + 1 < d; ++j) {
    if (params.slice_side > 0 && params.slice_side < host.axis_side(j)) {
      out.cap_applied = true;
    }
  }
  std::vector<int> pinned;
  auto axes = find_rec(ctx, d, pinned);
  out.budget_exhausted = ctx.exhausted;
  out.patterns_observed = static_cast<int>(ctx.top_patterns.size());
  if (!axes) {
    if (ctx.exhausted) {
      out.failure = "budget exhausted";
    } else {
      bool too_big = false;
      for (int e = 1; e <= d; ++e) {
        if (k > ctx.range(e)) {
          too_big = true;
        }
      }
      out.failure = too_big ? "target side exceeds the searchable range"
                            : "no slice bucket reached the target side";
    }
    return out;
  }
  SubBox box{*axes};
  if (!is_consistent(obj, box)) {
    throw std::logic_error("consistency search produced an inconsistent box");
  }
  out.witness = ConsistencyWitness{box, canonical_pattern(obj, box)};
  return out;
}

template <class Object>
std::optional<ConsistencyWitness> exhaustive_impl(const Object& obj, std::span<const int> sides,
                                                  int k) {
  if (k < 1) {
    throw std::invalid_argument("target side must be positive");
  }
  int d = static_cast<int>(sides.size());
  for (int j = 0; j < d; ++j) {
    if (k > sides[static_cast<std::size_t>(j)]) {
      return std::nullopt;
    }
  }
  std::vector<std::vector<int>> combos(static_cast<std::size_t>(d));
  for (auto& c : combos) {
    c.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      c[static_cast<std::size_t>(i)] = i;
    }
  }
  for (;;) {
    SubBox box{combos};
    if (is_consistent(obj, box)) {
      return ConsistencyWitness{box, canonical_pattern(obj, box)};
    }
    int j = d - 1;
    for (; j >= 0; --j) {
      if (next_combination(combos[static_cast<std::size_t>(j)], sides[static_cast<std::size_t>(j)])) {
        break;
      }
      for (int i = 0; i < k; ++i) {
        combos[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = i;
      }
    }
    if (j < 0) {
      return std::nullopt;
    }
  }
}

} // namespace

bool is_consistent(const BoxColouring& col, const SubBox& box) {
  std::vector<int> host_sides(static_cast<std::size_t>(col.dims()), col.side());
  box.validate(host_sides);
  bool rec = recursive_consistent(col, box.axes, box.dims());
  assert(rec == unrolled_colouring(col, box));
  return rec;
}

bool is_consistent(const NumericArray& arr, const SubBox& box) {
  box.validate(arr.sides());
  bool rec = recursive_consistent(arr, box.axes, box.dims());
  assert(rec == unrolled_array(arr, box));
  return rec;
}

bool is_consistent_unrolled(const BoxColouring& col, const SubBox& box) {
  std::vector<int> host_sides(static_cast<std::size_t>(col.dims()), col.side());
  box.validate(host_sides);
  return unrolled_colouring(col, box);
}

bool is_consistent_unrolled(const NumericArray& arr, const SubBox& box) {
  box.validate(arr.sides());
  return unrolled_array(arr, box);
}

ConsistencySearch find_consistent_box(const BoxColouring& col, int k,
                                      const ConsistencyParams& params) {
  ColouringHost host{&col};
  return find_impl(host, col, col.dims(), k, params);
}

ConsistencySearch find_consistent_array(const NumericArray& arr, int k,
                                        const ConsistencyParams& params) {
  ArrayHost host{&arr};
  return find_impl(host, arr, arr.dims(), k, params);
}

std::optional<ConsistencyWitness> find_consistent_box_exhaustive(const BoxColouring& col, int k) {
  std::vector<int> sides(static_cast<std::size_t>(col.dims()), col.side());
  return exhaustive_impl(col, sides, k);
}

std::optional<ConsistencyWitness> find_consistent_array_exhaustive(const NumericArray& arr,
                                                                   int k) {
  return exhaustive_impl(arr, arr.sides(), k);
}

} // namespace monobox
