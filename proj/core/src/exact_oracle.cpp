#include "monobox/exact_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "monobox/params.hpp"
#include "monobox/ramsey1d.hpp"
#include "monobox/verify.hpp"

namespace monobox {
namespace {

void reset_combination(std::vector<int>& c) { std::iota(c.begin(), c.end(), 0); }

// Product odometer over the prefix axes 0..d-2 (each an n-subset of its
// side), last axis fastest.  With d == 1 there is a single empty state.
bool advance_prefix(std::vector<std::vector<int>>& prefix, std::span<const int> sides) {
  for (int j = static_cast<int>(prefix.size()) - 1; j >= 0; --j) {
    auto ju = static_cast<std::size_t>(j);
    if (next_combination(prefix[ju], sides[ju])) return true;
    reset_combination(prefix[ju]);
  }
  return false;
}

constexpr int kNoLabel = -1;

} // namespace

// The scan factors every candidate box A_0 x ... x A_{d-1} through its
// prefix P = A_0 x ... x A_{d-2}: once P is fixed, a last-axis value a is
// usable iff the slice P x {a} is monochromatic per direction (its
// signature), and a set of usable values completes a mono box iff their
// signatures agree and all last-direction edges between them carry one
// colour across every prefix cell.  Grouping by signature and scanning each
// group for a monochromatic n-subset therefore finds a certificate iff one
// exists for this prefix.
BoxDecision decide_R_instance(const BoxColouring& col, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  const int d = col.dims();
  const int N = col.side();
  BoxDecision out;
  if (n > N) return out;
  if (n == 1) {
    DirectionColourCertificate cert;
    cert.subbox.axes.assign(static_cast<std::size_t>(d), {0});
    cert.direction_colours.assign(static_cast<std::size_t>(d), 0);
    out.certificate = std::move(cert);
    return out;
  }

  const std::vector<int> sides(static_cast<std::size_t>(d), N);
  std::vector<std::vector<int>> prefix(static_cast<std::size_t>(d - 1));
  for (auto& c : prefix) {
    c.resize(static_cast<std::size_t>(n));
    reset_combination(c);
  }

  std::vector<int> off(static_cast<std::size_t>(d - 1));
  std::vector<int> sig(static_cast<std::size_t>(d - 1));

  // Per-direction colour vector of the slice prefix x {a}, or nullopt when
  // some direction of the slice is not monochromatic.
  auto slice_signature = [&](int a) -> bool {
    for (int i = 0; i + 1 < d; ++i) {
      const auto& axis = prefix[static_cast<std::size_t>(i)];
      int expected = kNoLabel;
      // odometer over relative positions on the prefix axes other than i
      std::vector<int> rel(static_cast<std::size_t>(d - 1), 0);
      for (;;) {
        // off skips axis i; prefix axes keep their slots, the last axis
        // contributes a at the end
        std::size_t slot = 0;
        for (int j = 0; j + 1 < d; ++j) {
          if (j == i) continue;
          auto ju = static_cast<std::size_t>(j);
          off[slot++] = prefix[ju][static_cast<std::size_t>(rel[ju])];
        }
        off[slot] = a;
        for (int xi = 0; xi < n && expected != -2; ++xi)
          for (int yi = xi + 1; yi < n; ++yi) {
            ++out.nodes;
            int c = col.colour(i, off, axis[static_cast<std::size_t>(xi)],
                               axis[static_cast<std::size_t>(yi)]);
            if (expected == kNoLabel) expected = c;
            if (c != expected) {
              expected = -2;
              break;
            }
          }
        if (expected == -2) return false;
        int j = d - 2;
        for (; j >= 0; --j) {
          if (j == i) continue;
          auto ju = static_cast<std::size_t>(j);
          if (++rel[ju] < n) break;
          rel[ju] = 0;
        }
        if (j < 0) break;
      }
      sig[static_cast<std::size_t>(i)] = expected;
    }
    return true;
  };

  // Colour carried by all last-direction edges between slices a and b, over
  // every prefix cell; kNoLabel when it varies.
  auto pair_label = [&](int a, int b) -> int {
    int expected = kNoLabel;
    std::vector<int> rel(static_cast<std::size_t>(d - 1), 0);
    for (;;) {
      for (int j = 0; j + 1 < d; ++j) {
        auto ju = static_cast<std::size_t>(j);
        off[ju] = prefix[ju][static_cast<std::size_t>(rel[ju])];
      }
      ++out.nodes;
      int c = col.colour(d - 1, off, a, b);
      if (expected == kNoLabel) expected = c;
      if (c != expected) return kNoLabel;
      int j = d - 2;
      for (; j >= 0; --j) {
        auto ju = static_cast<std::size_t>(j);
        if (++rel[ju] < n) break;
        rel[ju] = 0;
      }
      if (j < 0) break;
    }
    return expected;
  };

  do {
    // classify last-axis values by slice signature
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int a = 0; a < N; ++a) {
      if (out.nodes > budget) {
        out.indeterminate = true;
        return out;
      }
      if (slice_signature(a)) groups[sig].push_back(a);
    }
    std::vector<int> label(static_cast<std::size_t>(pair_count(N)), kNoLabel);
    for (const auto& [key, members] : groups) {
      if (static_cast<int>(members.size()) < n) continue;
      for (std::size_t ai = 0; ai < members.size(); ++ai)
        for (std::size_t bi = ai + 1; bi < members.size(); ++bi) {
          if (out.nodes > budget) {
            out.indeterminate = true;
            return out;
          }
          label[static_cast<std::size_t>(pair_index(members[ai], members[bi], N))] =
              pair_label(members[ai], members[bi]);
        }
      // exact scan for an n-subset whose pairs all carry one colour
      std::vector<int> pick(static_cast<std::size_t>(n));
      reset_combination(pick);
      do {
        ++out.nodes;
        if (out.nodes > budget) {
          out.indeterminate = true;
          return out;
        }
        int c = kNoLabel;
        bool ok = true;
        for (int xi = 0; xi < n && ok; ++xi)
          for (int yi = xi + 1; yi < n; ++yi) {
            int a = members[static_cast<std::size_t>(pick[static_cast<std::size_t>(xi)])];
            int b = members[static_cast<std::size_t>(pick[static_cast<std::size_t>(yi)])];
            int l = label[static_cast<std::size_t>(pair_index(a, b, N))];
            if (l == kNoLabel || (c != kNoLabel && l != c)) {
              ok = false;
              break;
            }
            c = l;
          }
        if (ok) {
          DirectionColourCertificate cert;
          cert.subbox.axes = prefix;
          std::vector<int> last;
          for (int idx : pick) last.push_back(members[static_cast<std::size_t>(idx)]);
          cert.subbox.axes.push_back(std::move(last));
          cert.direction_colours = key;
          cert.direction_colours.push_back(c);
          if (!verify_mono_box(col, cert))
            throw std::logic_error("mono-box scan produced a bad certificate");
          out.certificate = std::move(cert);
          return out;
        }
      } while (next_combination(pick, static_cast<int>(members.size())));
    }
  } while (advance_prefix(prefix, sides));
  return out;
}

// Same factoring as decide_R_instance, with order signs in place of
// colours.  Within a signature group the usable pairs are transitive (the
// cellwise value order is), so a longest-chain sweep over consecutive
// labels finds an n-subset whose pairs all carry one sign iff one exists.
MonotoneDecision decide_M_instance(const NumericArray& arr, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  const int d = arr.dims();
  MonotoneDecision out;
  for (int s : arr.sides())
    if (n > s) return out;
  if (n == 1) {
    MonotoneCertificate cert;
    cert.subbox.axes.assign(static_cast<std::size_t>(d), {0});
    cert.signs.assign(static_cast<std::size_t>(d), 1);
    out.certificate = std::move(cert);
    return out;
  }

  const auto& sides = arr.sides();
  const int last_side = sides[static_cast<std::size_t>(d - 1)];
  std::vector<std::vector<int>> prefix(static_cast<std::size_t>(d - 1));
  for (auto& c : prefix) {
    c.resize(static_cast<std::size_t>(n));
    reset_combination(c);
  }

  std::vector<int> cell(static_cast<std::size_t>(d));
  std::vector<int> sig(static_cast<std::size_t>(d - 1));

  // Sign of direction i inside the slice prefix x {a}; 0 when mixed.
  // Consecutive positions suffice: the order is total.
  auto slice_signature = [&](int a) -> bool {
    cell[static_cast<std::size_t>(d - 1)] = a;
    for (int i = 0; i + 1 < d; ++i) {
      const auto& axis = prefix[static_cast<std::size_t>(i)];
      int expected = 0;
      std::vector<int> rel(static_cast<std::size_t>(d - 1), 0);
      for (;;) {
        for (int j = 0; j + 1 < d; ++j) {
          auto ju = static_cast<std::size_t>(j);
          cell[ju] = prefix[ju][static_cast<std::size_t>(rel[ju])];
        }
        for (int t = 0; t + 1 < n; ++t) {
          ++out.nodes;
          cell[static_cast<std::size_t>(i)] = axis[static_cast<std::size_t>(t)];
          double lo = arr.value_at(cell);
          cell[static_cast<std::size_t>(i)] = axis[static_cast<std::size_t>(t + 1)];
          double hi = arr.value_at(cell);
          int s = lo < hi ? 1 : (lo > hi ? -1 : 0);
          if (expected == 0) expected = s;
          if (s == 0 || s != expected) return false;
        }
        int j = d - 2;
        for (; j >= 0; --j) {
          if (j == i) continue;
          auto ju = static_cast<std::size_t>(j);
          if (++rel[ju] < n) break;
          rel[ju] = 0;
        }
        if (j < 0) break;
      }
      sig[static_cast<std::size_t>(i)] = expected;
    }
    return true;
  };

  // Sign shared by value(.., b) - value(.., a) over every prefix cell; 0
  // when it varies.
  auto pair_label = [&](int a, int b) -> int {
    int expected = 0;
    std::vector<int> rel(static_cast<std::size_t>(d - 1), 0);
    for (;;) {
      for (int j = 0; j + 1 < d; ++j) {
        auto ju = static_cast<std::size_t>(j);
        cell[ju] = prefix[ju][static_cast<std::size_t>(rel[ju])];
      }
      ++out.nodes;
      cell[static_cast<std::size_t>(d - 1)] = a;
      double lo = arr.value_at(cell);
      cell[static_cast<std::size_t>(d - 1)] = b;
      double hi = arr.value_at(cell);
      int s = lo < hi ? 1 : (lo > hi ? -1 : 0);
      if (expected == 0) expected = s;
      if (s == 0 || s != expected) return 0;
      int j = d - 2;
      for (; j >= 0; --j) {
        auto ju = static_cast<std::size_t>(j);
        if (++rel[ju] < n) break;
        rel[ju] = 0;
      }
      if (j < 0) break;
    }
    return expected;
  };

  std::vector<int> prefix_sides(sides.begin(), sides.end() - 1);
  do {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int a = 0; a < last_side; ++a) {
      if (out.nodes > budget) {
        out.indeterminate = true;
        return out;
      }
      if (slice_signature(a)) groups[sig].push_back(a);
    }
    for (const auto& [key, members] : groups) {
      const int m = static_cast<int>(members.size());
      if (m < n) continue;
      std::vector<int> lab(static_cast<std::size_t>(m * m), 0);
      for (int ai = 0; ai < m; ++ai)
        for (int bi = ai + 1; bi < m; ++bi) {
          if (out.nodes > budget) {
            out.indeterminate = true;
            return out;
          }
          lab[static_cast<std::size_t>(ai * m + bi)] =
              pair_label(members[static_cast<std::size_t>(ai)],
                         members[static_cast<std::size_t>(bi)]);
        }
      for (int want : {1, -1}) {
        std::vector<int> len(static_cast<std::size_t>(m), 1);
        std::vector<int> pred(static_cast<std::size_t>(m), -1);
        for (int i = 0; i < m; ++i) {
          ++out.nodes;
          auto iu = static_cast<std::size_t>(i);
          for (int j = 0; j < i; ++j) {
            auto ju = static_cast<std::size_t>(j);
            if (lab[static_cast<std::size_t>(j * m + i)] == want && len[ju] + 1 > len[iu]) {
              len[iu] = len[ju] + 1;
              pred[iu] = j;
            }
          }
          if (len[iu] == n) {
            std::vector<int> chain;
            for (int t = i; t >= 0; t = pred[static_cast<std::size_t>(t)])
              chain.push_back(members[static_cast<std::size_t>(t)]);
            std::reverse(chain.begin(), chain.end());
            MonotoneCertificate cert;
            cert.subbox.axes = prefix;
            cert.subbox.axes.push_back(std::move(chain));
            cert.signs = key;
            cert.signs.push_back(want);
            if (!verify_monotone(arr, cert))
              throw std::logic_error("monotone scan produced a bad certificate");
            out.certificate = std::move(cert);
            return out;
          }
        }
      }
    }
  } while (advance_prefix(prefix, prefix_sides));
  return out;
}

// Plain product scan: every sub-box of side n against every (perm, signs)
// order, with the verifier itself as the predicate.
LexDecision decide_L_instance(const NumericArray& arr, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  const int d = arr.dims();
  LexDecision out;
  for (int s : arr.sides())
    if (n > s) return out;
  if (n == 1) {
    LexMonotoneCertificate cert;
    cert.subbox.axes.assign(static_cast<std::size_t>(d), {0});
    cert.perm.resize(static_cast<std::size_t>(d));
    std::iota(cert.perm.begin(), cert.perm.end(), 0);
    cert.signs.assign(static_cast<std::size_t>(d), 1);
    out.certificate = std::move(cert);
    return out;
  }

  const auto orders = lex_orders(d);
  std::vector<std::vector<int>> axes(static_cast<std::size_t>(d));
  for (auto& c : axes) {
    c.resize(static_cast<std::size_t>(n));
    reset_combination(c);
  }
  auto advance = [&]() -> bool {
    for (int j = d - 1; j >= 0; --j) {
      auto ju = static_cast<std::size_t>(j);
      if (next_combination(axes[ju], arr.side(j))) return true;
      reset_combination(axes[ju]);
    }
    return false;
  };

  do {
    for (const auto& [perm, signs] : orders) {
      ++out.nodes;
      if (out.nodes > budget) {
        out.indeterminate = true;
        return out;
      }
      LexMonotoneCertificate cand{SubBox{axes}, perm, signs};
      if (verify_lex_monotone(arr, cand)) {
        out.certificate = std::move(cand);
        return out;
      }
    }
  } while (advance());
  return out;
}

namespace {

// Rank-placement search for an array of side N avoiding every target box.
// Ranks 1..N^d are placed in ascending order, so when a candidate box has a
// single empty cell left, that cell's eventual value already compares above
// every placed one: evaluating the box with the empty read as +infinity is
// exact, and each box gets evaluated exactly once, at the placement that
// fills its second-to-last cell.  Boxes evaluated as target-forced prune
// the branch; the rest are dead for as long as that placement stands.
struct RankDfs {
  NumberFamily family;
  int d, N, n;
  std::int64_t cells = 0;
  int box_size = 0; // n^d
  std::vector<int> sides;

  std::vector<std::vector<int>> combos;      // n-subsets of [N]
  std::vector<std::vector<int>> combos_with; // per value: combo ids through it
  std::int64_t box_count = 0;

  std::vector<std::int64_t> through_flat; // boxes through a cell, cell-major
  std::int64_t through_stride = 0;
  std::vector<std::int64_t> box_cells; // cell ids per box, box-major

  std::vector<int> filled;
  std::vector<char> dead;
  std::vector<int> grid; // rank per cell, 0 = empty
  std::vector<char> rep; // rank-1 candidates: lex-least in spatial orbit

  std::vector<std::vector<std::pair<int, int>>> dir_pairs; // per direction (family M)
  std::vector<std::vector<int>> visit_orders;              // per lex order (family L)

  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;
  std::vector<int> leaf;
  std::vector<std::int64_t> undo_dead; // scratch, per recursion level via size marks

  RankDfs(NumberFamily f, int d_, int N_, int n_, std::uint64_t budget_)
      : family(f), d(d_), N(N_), n(n_), budget(budget_) {
    sides.assign(static_cast<std::size_t>(d), N);
    cells = 1;
    for (int j = 0; j < d; ++j) cells *= N;
    box_size = 1;
    for (int j = 0; j < d; ++j) box_size *= n;

    std::vector<int> c(static_cast<std::size_t>(n));
    reset_combination(c);
    do {
      combos.push_back(c);
    } while (next_combination(c, N));
    combos_with.assign(static_cast<std::size_t>(N), {});
    for (std::size_t ci = 0; ci < combos.size(); ++ci)
      for (int v : combos[ci]) combos_with[static_cast<std::size_t>(v)].push_back(static_cast<int>(ci));

    box_count = 1;
    for (int j = 0; j < d; ++j) box_count *= static_cast<std::int64_t>(combos.size());

    through_stride = 1;
    for (int j = 0; j < d; ++j)
      through_stride *= static_cast<std::int64_t>(combos_with[0].size());
    through_flat.resize(static_cast<std::size_t>(cells * through_stride));
    box_cells.resize(static_cast<std::size_t>(box_count * box_size));

    build_box_tables();
    build_reps();
    if (family == NumberFamily::M) build_dir_pairs();
    else build_visit_orders();

    filled.assign(static_cast<std::size_t>(box_count), 0);
    dead.assign(static_cast<std::size_t>(box_count), 0);
    grid.assign(static_cast<std::size_t>(cells), 0);
  }

  void build_box_tables() {
    // box id = combo ids per axis, mixed radix, last axis fastest
    const auto C = static_cast<std::int64_t>(combos.size());
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::int64_t b = 0; b < box_count; ++b) {
      std::int64_t rem = b;
      for (int j = d - 1; j >= 0; --j) {
        idx[static_cast<std::size_t>(j)] = static_cast<int>(rem % C);
        rem /= C;
      }
      std::vector<int> rel(static_cast<std::size_t>(d), 0);
      for (int t = 0; t < box_size; ++t) {
        std::int64_t id = 0;
        for (int j = 0; j < d; ++j) {
          auto ju = static_cast<std::size_t>(j);
          id = id * N + combos[static_cast<std::size_t>(idx[ju])][static_cast<std::size_t>(rel[ju])];
        }
        box_cells[static_cast<std::size_t>(b * box_size + t)] = id;
        for (int j = d - 1; j >= 0; --j) {
          auto ju = static_cast<std::size_t>(j);
          if (++rel[ju] < n) break;
          rel[ju] = 0;
        }
      }
    }
    // boxes through each cell: product of the per-axis combos containing
    // that coordinate
    for (std::int64_t id = 0; id < cells; ++id) {
      std::vector<int> coord(static_cast<std::size_t>(d));
      std::int64_t rem = id;
      for (int j = d - 1; j >= 0; --j) {
        coord[static_cast<std::size_t>(j)] = static_cast<int>(rem % N);
        rem /= N;
      }
      std::vector<int> pick(static_cast<std::size_t>(d), 0);
      for (std::int64_t t = 0; t < through_stride; ++t) {
        std::int64_t b = 0;
        for (int j = 0; j < d; ++j) {
          auto ju = static_cast<std::size_t>(j);
          const auto& lst = combos_with[static_cast<std::size_t>(coord[ju])];
          b = b * static_cast<std::int64_t>(combos.size()) + lst[static_cast<std::size_t>(pick[ju])];
        }
        through_flat[static_cast<std::size_t>(id * through_stride + t)] = b;
        for (int j = d - 1; j >= 0; --j) {
          auto ju = static_cast<std::size_t>(j);
          if (++pick[ju] < static_cast<int>(combos_with[static_cast<std::size_t>(coord[ju])].size()))
            break;
          pick[ju] = 0;
        }
      }
    }
  }

  // Rank 1 may start only at cells that are lexicographically least in
  // their orbit under axis permutations and reversals: any avoiding array
  // maps to an avoiding array under those, so completeness is kept.
  void build_reps() {
    rep.assign(static_cast<std::size_t>(cells), 1);
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::vector<int> coord(static_cast<std::size_t>(d)), image(static_cast<std::size_t>(d));
    for (std::int64_t id = 0; id < cells; ++id) {
      std::int64_t rem = id;
      for (int j = d - 1; j >= 0; --j) {
        coord[static_cast<std::size_t>(j)] = static_cast<int>(rem % N);
        rem /= N;
      }
      std::iota(perm.begin(), perm.end(), 0);
      bool least = true;
      do {
        for (unsigned mask = 0; mask < (1u << d) && least; ++mask) {
          for (int j = 0; j < d; ++j) {
            auto ju = static_cast<std::size_t>(j);
            int v = coord[static_cast<std::size_t>(perm[ju])];
            image[ju] = (mask >> j) & 1u ? N - 1 - v : v;
          }
          if (std::lexicographical_compare(image.begin(), image.end(), coord.begin(), coord.end()))
            least = false;
        }
      } while (least && std::next_permutation(perm.begin(), perm.end()));
      rep[static_cast<std::size_t>(id)] = least ? 1 : 0;
    }
  }

  void build_dir_pairs() {
    dir_pairs.assign(static_cast<std::size_t>(d), {});
    for (int i = 0; i < d; ++i) {
      int stride = 1;
      for (int j = i + 1; j < d; ++j) stride *= n;
      for (int t = 0; t < box_size; ++t) {
        int coord_i = (t / stride) % n;
        if (coord_i + 1 < n)
          dir_pairs[static_cast<std::size_t>(i)].push_back({t, t + stride});
      }
    }
  }

  void build_visit_orders() {
    const auto orders = lex_orders(d);
    std::vector<std::vector<int>> rel_of(static_cast<std::size_t>(box_size));
    for (int t = 0; t < box_size; ++t) {
      std::vector<int> rel(static_cast<std::size_t>(d));
      int rem = t;
      for (int j = d - 1; j >= 0; --j) {
        rel[static_cast<std::size_t>(j)] = rem % n;
        rem /= n;
      }
      rel_of[static_cast<std::size_t>(t)] = std::move(rel);
    }
    for (const auto& [perm, signs] : orders) {
      std::vector<int> order(static_cast<std::size_t>(box_size));
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ra = rel_of[static_cast<std::size_t>(a)];
        const auto& rb = rel_of[static_cast<std::size_t>(b)];
        for (int j = 0; j < d; ++j) {
          auto pj = static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]);
          int ka = signs[pj] * ra[pj], kb = signs[pj] * rb[pj];
          if (ka != kb) return ka < kb;
        }
        return false;
      });
      visit_orders.push_back(std::move(order));
    }
  }

  // Evaluates a box with at most one empty cell, the empty read as larger
  // than everything placed; exact for the finished array.
  bool target_forced(std::int64_t b) const {
    const std::int64_t* cs = box_cells.data() + b * box_size;
    const int inf = static_cast<int>(cells) + 1;
    if (family == NumberFamily::M) {
      for (int i = 0; i < d; ++i) {
        bool up = true, down = true;
        for (auto [ta, tb] : dir_pairs[static_cast<std::size_t>(i)]) {
          int va = grid[static_cast<std::size_t>(cs[ta])];
          int vb = grid[static_cast<std::size_t>(cs[tb])];
          if (va == 0) va = inf;
          if (vb == 0) vb = inf;
          if (va < vb) down = false;
          else up = false;
          if (!up && !down) break;
        }
        if (!up && !down) return false;
      }
      return true;
    }
    for (const auto& order : visit_orders) {
      bool ok = true;
      int prev = 0;
      for (int t : order) {
        int v = grid[static_cast<std::size_t>(cs[t])];
        if (v == 0) v = inf;
        if (v <= prev) {
          ok = false;
          break;
        }
        prev = v;
      }
      if (ok) return true;
    }
    return false;
  }

  // Returns true when the placement forces a target box (the caller then
  // unplaces immediately).  undo_dead records boxes newly marked dead.
  bool place(std::int64_t cell, int rank, std::size_t& dead_mark) {
    grid[static_cast<std::size_t>(cell)] = rank;
    dead_mark = undo_dead.size();
    bool forced = false;
    const std::int64_t* bs = through_flat.data() + cell * through_stride;
    for (std::int64_t t = 0; t < through_stride; ++t) {
      std::int64_t b = bs[t];
      int f = ++filled[static_cast<std::size_t>(b)];
      if (forced || f != box_size - 1 || dead[static_cast<std::size_t>(b)]) continue;
      if (target_forced(b)) {
        forced = true;
      } else {
        dead[static_cast<std::size_t>(b)] = 1;
        undo_dead.push_back(b);
      }
    }
    return forced;
  }

  void unplace(std::int64_t cell, std::size_t dead_mark) {
    const std::int64_t* bs = through_flat.data() + cell * through_stride;
    for (std::int64_t t = 0; t < through_stride; ++t)
      --filled[static_cast<std::size_t>(bs[t])];
    while (undo_dead.size() > dead_mark) {
      dead[static_cast<std::size_t>(undo_dead.back())] = 0;
      undo_dead.pop_back();
    }
    grid[static_cast<std::size_t>(cell)] = 0;
  }

  enum class Outcome { exhausted, leaf, out_of_budget };

  Outcome run() { return descend(1); }

  Outcome descend(int rank) {
    if (rank > cells) {
      leaf = grid;
      return Outcome::leaf;
    }
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      if (grid[static_cast<std::size_t>(cell)] != 0) continue;
      if (rank == 1 && !rep[static_cast<std::size_t>(cell)]) continue;
      if (++nodes > budget) return Outcome::out_of_budget;
      std::size_t mark = 0;
      bool forced = place(cell, rank, mark);
      if (!forced) {
        Outcome sub = descend(rank + 1);
        if (sub != Outcome::exhausted) return sub;
      }
      unplace(cell, mark);
    }
    return Outcome::exhausted;
  }

  NumericArray make_witness() const {
    std::vector<double> values(leaf.begin(), leaf.end());
    return NumericArray(sides, std::move(values));
  }
};

// Memory bound for the DFS box tables; beyond it the query is reported
// indeterminate rather than thrashing.
constexpr std::int64_t kMaxBoxTable = 10'000'000;

NumberResult compute_array_number(const NumberQuery& q) {
  NumberResult out;
  std::optional<NumericArray> prev;
  int prev_side = 0;
  for (int N = q.n; N <= q.side_cap; ++N) {
    std::uint64_t spent = out.nodes;
    if (spent >= q.node_budget) {
      out.kind = NumberResult::Kind::indeterminate;
      return out;
    }
    std::uint64_t table = 1;
    for (int j = 0; j < q.d; ++j)
      table = sat_mul(table, binomial_capped(static_cast<std::uint64_t>(N),
                                             static_cast<std::uint64_t>(q.n)));
    table = sat_mul(table, sat_pow(static_cast<std::uint64_t>(q.n),
                                   static_cast<std::uint64_t>(q.d)));
    if (table > static_cast<std::uint64_t>(kMaxBoxTable)) {
      out.kind = NumberResult::Kind::indeterminate;
      out.instance_count = table;
      return out;
    }
    RankDfs dfs(q.family, q.d, N, q.n, q.node_budget - spent);
    RankDfs::Outcome res = dfs.run();
    out.nodes += dfs.nodes;
    if (res == RankDfs::Outcome::out_of_budget) {
      out.kind = NumberResult::Kind::indeterminate;
      return out;
    }
    if (res == RankDfs::Outcome::leaf) {
      NumericArray w = dfs.make_witness();
      bool has_target;
      if (q.family == NumberFamily::M) {
        auto dec = decide_M_instance(w, q.n);
        out.nodes += dec.nodes;
        has_target = dec.certificate.has_value();
      } else {
        auto dec = decide_L_instance(w, q.n);
        out.nodes += dec.nodes;
        has_target = dec.certificate.has_value();
      }
      if (has_target) throw std::logic_error("avoidance search produced a bad witness");
      if (N == q.side_cap) {
        out.kind = NumberResult::Kind::lower_bound_witness;
        out.value = N;
        out.witness = std::move(w);
        out.witness_side = N;
        return out;
      }
      prev = std::move(w);
      prev_side = N;
      continue;
    }
    out.kind = NumberResult::Kind::value;
    out.value = N;
    if (prev) {
      out.witness = std::move(*prev);
      out.witness_side = prev_side;
    }
    return out;
  }
  throw std::logic_error("side march left the cap range");
}

// Canonical colour assignment: the first occurrence of each colour class,
// read in payload order, is the next unused id.  One representative per
// colour-permutation orbit; target presence is invariant under recolouring.
bool advance_rgs(std::vector<std::uint8_t>& pay, int r) {
  const int E = static_cast<int>(pay.size());
  for (int i = E - 1; i >= 0; --i) {
    int maxpre = 0;
    for (int j = 0; j < i; ++j)
      maxpre = std::max(maxpre, static_cast<int>(pay[static_cast<std::size_t>(j)]) + 1);
    int cap = std::min(maxpre, r - 1);
    if (static_cast<int>(pay[static_cast<std::size_t>(i)]) < cap) {
      ++pay[static_cast<std::size_t>(i)];
      std::fill(pay.begin() + i + 1, pay.end(), 0);
      return true;
    }
  }
  return false;
}

NumberResult compute_colouring_number(const NumberQuery& q) {
  if (q.d == 1) {
    RamseyNumberResult res = classical_ramsey_exact(q.colours, q.n, q.side_cap, q.node_budget);
    NumberResult out;
    out.nodes = res.nodes;
    auto convert = [&](const EdgeColouring& ec) {
      out.witness = BoxColouring(1, ec.n, q.colours, ec.colour);
      out.witness_side = ec.n;
    };
    switch (res.kind) {
      case RamseyNumberResult::Kind::value:
        out.kind = NumberResult::Kind::value;
        out.value = res.value;
        if (res.witness) convert(*res.witness);
        break;
      case RamseyNumberResult::Kind::above_cap:
        out.kind = NumberResult::Kind::lower_bound_witness;
        out.value = q.side_cap;
        if (res.witness) convert(*res.witness);
        break;
      case RamseyNumberResult::Kind::budget_exhausted:
        out.kind = NumberResult::Kind::indeterminate;
        break;
    }
    return out;
  }

  NumberResult out;
  std::optional<BoxColouring> prev;
  int prev_side = 0;
  for (int N = q.n; N <= q.side_cap; ++N) {
    const std::uint64_t edges = sat_mul(
        sat_mul(static_cast<std::uint64_t>(q.d),
                sat_pow(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(q.d - 1))),
        static_cast<std::uint64_t>(pair_count(N)));
    const std::uint64_t population =
        sat_pow(static_cast<std::uint64_t>(q.colours), edges);
    if (population > q.node_budget - std::min(q.node_budget, out.nodes)) {
      out.kind = NumberResult::Kind::indeterminate;
      out.instance_count = population;
      return out;
    }
    std::vector<std::uint8_t> pay(static_cast<std::size_t>(edges), 0);
    std::optional<BoxColouring> found;
    do {
      ++out.nodes;
      BoxColouring col(q.d, N, q.colours, pay);
      std::uint64_t left = q.node_budget - std::min(q.node_budget, out.nodes);
      BoxDecision dec = decide_R_instance(col, q.n, left);
      out.nodes += dec.nodes;
      if (dec.indeterminate) {
        out.kind = NumberResult::Kind::indeterminate;
        return out;
      }
      if (!dec.certificate) {
        found = std::move(col);
        break;
      }
    } while (advance_rgs(pay, q.colours));
    if (found) {
      if (N == q.side_cap) {
        out.kind = NumberResult::Kind::lower_bound_witness;
        out.value = N;
        out.witness = std::move(*found);
        out.witness_side = N;
        return out;
      }
      prev = std::move(found);
      prev_side = N;
      continue;
    }
    out.kind = NumberResult::Kind::value;
    out.value = N;
    if (prev) {
      BoxDecision dec = decide_R_instance(*prev, q.n);
      out.nodes += dec.nodes;
      if (dec.certificate) throw std::logic_error("recorded witness contains a target box");
      out.witness = std::move(*prev);
      out.witness_side = prev_side;
    }
    return out;
  }
  throw std::logic_error("side march left the cap range");
}

} // namespace

NumberResult compute_number(const NumberQuery& q) {
  if (q.d < 1) throw std::invalid_argument("dims must be >= 1");
  if (q.n < 1) throw std::invalid_argument("target side must be >= 1");
  if (q.side_cap < q.n) throw std::invalid_argument("side cap below target side");
  if (q.family == NumberFamily::R && (q.colours < 1 || q.colours > 255))
    throw std::invalid_argument("colours must be in 1..255");
  if (q.n == 1) {
    // a single cell is a target in every instance, so the number is 1
    NumberResult out;
    out.kind = NumberResult::Kind::value;
    out.value = 1;
    return out;
  }
  if (q.family == NumberFamily::R) return compute_colouring_number(q);
  return compute_array_number(q);
}

} // namespace monobox
