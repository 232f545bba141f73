#include "monobox/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monobox/consistency.hpp"
#include "monobox/monotone1d.hpp"
#include "monobox/params.hpp"
#include "monobox/ramsey1d.hpp"
#include "monobox/verify.hpp"

namespace monobox {
namespace {

// Stage ladder for the general pipelines; results report the deepest stage
// any attempt reached.
constexpr const char* kStages[] = {"consistency", "restrict", "fibers",
                                   "pigeonhole", "extraction", "complete"};

// ExtractionParams accepts only epsilon < 1/2; densities evaluate to
// exactly 1/2 on degenerate parameter corners.
double usable_density(double eps) {
  return std::min(eps, std::nextafter(0.5, 0.0));
}

// Restriction of col to a uniform sub-box, in sub-box-relative indexing.
BoxColouring restrict_colouring(const BoxColouring& col, const SubBox& w) {
  const int d = col.dims();
  const int s = static_cast<int>(w.axes[0].size());
  std::vector<int> hoff(static_cast<std::size_t>(d - 1));
  return make_colouring(d, s, col.colours(),
                        [&](int dir, std::span<const int> off, int x, int y) {
                          std::size_t slot = 0;
                          for (int j = 0; j < d; ++j) {
                            if (j == dir) continue;
                            hoff[slot] = w.axes[static_cast<std::size_t>(j)]
                                                [static_cast<std::size_t>(off[slot])];
                            ++slot;
                          }
                          const auto& axis = w.axes[static_cast<std::size_t>(dir)];
                          return col.colour(dir, hoff, axis[static_cast<std::size_t>(x)],
                                            axis[static_cast<std::size_t>(y)]);
                        });
}

NumericArray restrict_array(const NumericArray& arr, const SubBox& w) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(w.cell_count()));
  for_each_cell(w, [&](std::span<const int>, std::span<const int> host) {
    vals.push_back(arr.value_at(host));
  });
  return NumericArray(w.sides(), std::move(vals));
}

// Sub-box-relative certificate axes back to host coordinates.
SubBox map_axes(const SubBox& rel, const SubBox& w) {
  SubBox host;
  for (std::size_t j = 0; j < rel.axes.size(); ++j) {
    std::vector<int> axis;
    axis.reserve(rel.axes[j].size());
    for (int v : rel.axes[j]) axis.push_back(w.axes[j][static_cast<std::size_t>(v)]);
    host.axes.push_back(std::move(axis));
  }
  return host;
}

using Bucket = std::pair<const std::pair<std::vector<int>, int>, std::vector<std::int64_t>>;

// Decreasing size, then ascending key (the map order).
std::vector<const Bucket*> bucket_order(
    const std::map<std::pair<std::vector<int>, int>, std::vector<std::int64_t>>& buckets) {
  std::vector<const Bucket*> order;
  order.reserve(buckets.size());
  for (const auto& entry : buckets) order.push_back(&entry);
  std::stable_sort(order.begin(), order.end(), [](const Bucket* a, const Bucket* b) {
    return a->second.size() > b->second.size();
  });
  return order;
}

} // namespace

PipelineParams make_colouring_pipeline_params(int d, int r, int n) {
  if (d < 1) throw std::invalid_argument("dims must be >= 1");
  if (r < 1 || r > 255) throw std::invalid_argument("colours must be in 1..255");
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  PipelineParams p;
  if (d == 1) return p;
  p.master_exponent = master_c_colouring(d, r);
  p.tower_side = tower_side_colouring(d, r, n);
  p.restriction = restriction_colouring(r, n);
  p.saturated = p.master_exponent == kSaturated || p.tower_side == kSaturated ||
                p.restriction == kSaturated;
  return p;
}

PipelineParams make_array_pipeline_params(int d, int n) {
  if (d < 1) throw std::invalid_argument("dims must be >= 1");
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  PipelineParams p;
  if (d == 1) return p;
  p.master_exponent = master_c_array(d);
  p.tower_side = tower_side_array(d, n);
  p.restriction = restriction_array(n);
  p.saturated = p.master_exponent == kSaturated || p.tower_side == kSaturated ||
                p.restriction == kSaturated;
  return p;
}

MonoBoxSearch find_mono_box(const BoxColouring& col, int n, const PipelineParams& params) {
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  const int d = col.dims();
  const int N = col.side();
  const int r = col.colours();
  MonoBoxSearch out;
  out.stage = kStages[0];
  if (n > N) return out;

  if (n == 1) {
    DirectionColourCertificate cert;
    cert.subbox.axes.assign(static_cast<std::size_t>(d), {0});
    cert.direction_colours.assign(static_cast<std::size_t>(d), 0);
    if (!verify_mono_box(col, cert)) throw std::logic_error("bad trivial certificate");
    out.certificate = std::move(cert);
    out.stage = "complete";
    return out;
  }

  if (d == 1) {
    // the box is one complete graph; exact clique search is complete here
    EdgeColouring ec = make_edge_colouring(N, r, [&](int x, int y) {
      return col.colour(0, std::span<const int>(), x, y);
    });
    auto clique = find_mono_clique(ec, n, CliqueStrategy::exact);
    if (!clique) {
      out.stage = "fibers";
      return out;
    }
    DirectionColourCertificate cert;
    cert.subbox.axes.push_back(clique->vertices);
    cert.direction_colours = {clique->colour};
    if (!verify_mono_box(col, cert)) throw std::logic_error("bad clique certificate");
    out.certificate = std::move(cert);
    out.stage = "complete";
    return out;
  }

  PipelineParams p = params;
  if (p.master_exponent == 0) p.master_exponent = master_c_colouring(d, r);
  if (p.tower_side == 0) p.tower_side = tower_side_colouring(d, r, n);
  if (p.restriction == 0) p.restriction = restriction_colouring(r, n);

  // completeness needs N >= r^(r^(C_d * r * n^d)); below that every miss is
  // just "not found"
  const std::uint64_t inner = sat_mul(
      p.master_exponent,
      sat_mul(static_cast<std::uint64_t>(r), sat_pow(static_cast<std::uint64_t>(n),
                                                     static_cast<std::uint64_t>(d))));
  const std::uint64_t threshold =
      sat_pow(static_cast<std::uint64_t>(r), sat_pow(static_cast<std::uint64_t>(r), inner));
  out.guarantee_void = static_cast<std::uint64_t>(N) < threshold;

  const int s_top =
      p.tower_side > static_cast<std::uint64_t>(N) ? N : static_cast<int>(p.tower_side);
  int deepest = 0;
  CounterRng rng(p.seed);
  int attempt = 0;
  for (int s = s_top; s >= n; --s, ++attempt) {
    ConsistencyParams cp;
    cp.slice_side = p.slice_cap;
    cp.budget = p.budget;
    ConsistencySearch cs = find_consistent_box(col, s, cp);
    out.budget_exhausted = out.budget_exhausted || cs.budget_exhausted;
    out.guarantee_void = out.guarantee_void || cs.cap_applied;
    if (!cs.witness) continue;
    const SubBox& w = cs.witness->subbox;
    const BoxColouring R = restrict_colouring(col, w);
    deepest = std::max(deepest, 1);

    const std::uint64_t want =
        std::max(p.restriction, static_cast<std::uint64_t>(n));
    const int u_eff =
        want > static_cast<std::uint64_t>(s) ? s : static_cast<int>(want);
    out.guarantee_void =
        out.guarantee_void || static_cast<std::uint64_t>(u_eff) < p.restriction;
    deepest = std::max(deepest, 2);

    // one exact clique per prefix fiber over the restricted last axis
    std::int64_t prefix_count = 1;
    for (int j = 0; j + 1 < d; ++j) prefix_count *= s;
    std::map<std::pair<std::vector<int>, int>, std::vector<std::int64_t>> buckets;
    std::vector<int> off(static_cast<std::size_t>(d - 1));
    for (std::int64_t t = 0; t < prefix_count; ++t) {
      std::int64_t rem = t;
      for (int j = d - 2; j >= 0; --j) {
        off[static_cast<std::size_t>(j)] = static_cast<int>(rem % s);
        rem /= s;
      }
      EdgeColouring ec = make_edge_colouring(u_eff, r, [&](int a, int b) {
        return R.colour(d - 1, off, a, b);
      });
      auto clique = find_mono_clique(ec, n, CliqueStrategy::exact);
      if (!clique) continue;
      buckets[{clique->vertices, clique->colour}].push_back(t);
    }
    if (buckets.empty()) continue;
    deepest = std::max(deepest, 3);

    const double eps =
        usable_density(p.density > 0.0 ? p.density : density_colouring(r, u_eff, n));
    const BoxColouring Rp = pinned_prefix(R);
    int rank = 0;
    for (const Bucket* bucket : bucket_order(buckets)) {
      deepest = std::max(deepest, 4);
      ExtractionParams ep;
      ep.epsilon = eps;
      ep.retries = p.retries;
      ep.budget = p.budget;
      ep.seed = Seed{rng.word((static_cast<std::uint64_t>(attempt) << 32) |
                              static_cast<std::uint64_t>(rank))};
      BoxExtraction ex = extract_in_dense(Rp, bucket->second, n, ep);
      out.guarantee_void = out.guarantee_void || ex.trace.cap_applied;
      out.budget_exhausted = out.budget_exhausted || ex.trace.budget_exhausted;
      out.trace = std::move(ex.trace);
      ++rank;
      if (!ex.certificate) continue;
      DirectionColourCertificate rel = std::move(*ex.certificate);
      rel.subbox.axes.push_back(bucket->first.first);
      rel.direction_colours.push_back(bucket->first.second);
      DirectionColourCertificate cert{map_axes(rel.subbox, w), rel.direction_colours};
      if (!verify_mono_box(col, cert))
        throw std::logic_error("pipeline produced a bad box certificate");
      out.certificate = std::move(cert);
      out.stage = "complete";
      return out;
    }
  }
  out.stage = kStages[deepest];
  return out;
}

MonoBoxSearch find_mono_box_2d(const BoxColouring& col, int n, const PipelineParams&) {
  if (col.dims() != 2) throw std::invalid_argument("two-phase search needs dims == 2");
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  const int N = col.side();
  const int r = col.colours();
  MonoBoxSearch out;
  out.stage = "row-ramsey";
  if (n > N) return out;
  // this path states no completeness threshold of its own
  out.guarantee_void = true;

  if (n == 1) {
    DirectionColourCertificate cert;
    cert.subbox.axes.assign(2, {0});
    cert.direction_colours.assign(2, 0);
    if (!verify_mono_box(col, cert)) throw std::logic_error("bad trivial certificate");
    out.certificate = std::move(cert);
    out.stage = "complete";
    return out;
  }

  // column-set size m: the final per-column pigeonhole over r colours needs
  // r*(n-1)+1 columns to force n equal ones
  const int m_top = std::min(N, r * (n - 1) + 1);
  const char* stages[] = {"row-ramsey", "row-pigeonhole", "column-ramsey",
                          "column-pigeonhole", "complete"};
  int deepest = 0;
  for (int m = m_top; m >= n; --m) {
    // phase 1: a monochromatic column set per row
    std::map<std::pair<std::vector<int>, int>, std::vector<std::int64_t>> rows;
    for (int y = 0; y < N; ++y) {
      const int offv[1] = {y};
      EdgeColouring ec = make_edge_colouring(N, r, [&](int x, int xp) {
        return col.colour(0, offv, x, xp);
      });
      auto clique = find_mono_clique(ec, m, CliqueStrategy::exact);
      if (clique) rows[{clique->vertices, clique->colour}].push_back(y);
    }
    if (rows.empty()) continue;
    deepest = std::max(deepest, 1);

    for (const Bucket* bucket : bucket_order(rows)) {
      const std::vector<int>& cols = bucket->first.first;
      const int row_colour = bucket->first.second;
      const std::vector<std::int64_t>& members = bucket->second;
      const int a = static_cast<int>(members.size());
      if (a < n) continue;
      deepest = std::max(deepest, 2);

      // phase 2: over the bucket's rows, colour each row pair by the tuple
      // of its column edge colours, then find n rows sharing one tuple
      std::map<std::vector<int>, int> comp_ids;
      std::vector<std::vector<int>> comp_vecs;
      std::vector<int> comp(static_cast<std::size_t>(a * a), -1);
      std::vector<int> tuple(cols.size());
      for (int i = 0; i < a; ++i)
        for (int j = i + 1; j < a; ++j) {
          for (std::size_t b = 0; b < cols.size(); ++b) {
            const int offc[1] = {cols[b]};
            tuple[b] = col.colour(1, offc, static_cast<int>(members[static_cast<std::size_t>(i)]),
                                  static_cast<int>(members[static_cast<std::size_t>(j)]));
          }
          auto [it, fresh] = comp_ids.try_emplace(tuple, static_cast<int>(comp_vecs.size()));
          if (fresh) comp_vecs.push_back(tuple);
          comp[static_cast<std::size_t>(i * a + j)] = it->second;
        }
      std::vector<int> pick(static_cast<std::size_t>(n));
      std::iota(pick.begin(), pick.end(), 0);
      bool found = false;
      int comp_id = -1;
      do {
        comp_id = -1;
        bool ok = true;
        for (int xi = 0; xi < n && ok; ++xi)
          for (int yi = xi + 1; yi < n; ++yi) {
            int c = comp[static_cast<std::size_t>(pick[static_cast<std::size_t>(xi)] * a +
                                                   pick[static_cast<std::size_t>(yi)])];
            if (comp_id == -1) comp_id = c;
            if (c != comp_id) {
              ok = false;
              break;
            }
          }
        if (ok) {
          found = true;
          break;
        }
      } while (next_combination(pick, a));
      if (!found) continue;
      deepest = std::max(deepest, 3);

      // phase 3: n columns whose tuple entries agree
      const std::vector<int>& vec = comp_vecs[static_cast<std::size_t>(comp_id)];
      std::map<int, std::vector<int>> classes;
      for (std::size_t b = 0; b < cols.size(); ++b) classes[vec[b]].push_back(cols[b]);
      const std::vector<int>* best = nullptr;
      int best_colour = -1;
      for (const auto& [colour, cls] : classes)
        if (static_cast<int>(cls.size()) >= n &&
            (best == nullptr || cls.size() > best->size()))
          best = &cls, best_colour = colour;
      if (best == nullptr) continue;

      DirectionColourCertificate cert;
      cert.subbox.axes.push_back(std::vector<int>(best->begin(), best->begin() + n));
      std::vector<int> row_axis;
      for (int idx : pick)
        row_axis.push_back(static_cast<int>(members[static_cast<std::size_t>(idx)]));
      cert.subbox.axes.push_back(std::move(row_axis));
      cert.direction_colours = {row_colour, best_colour};
      if (!verify_mono_box(col, cert))
        throw std::logic_error("two-phase search produced a bad certificate");
      out.certificate = std::move(cert);
      out.stage = "complete";
      return out;
    }
  }
  out.stage = stages[deepest];
  return out;
}

MonotoneSearch find_monotone_subarray(const NumericArray& arr, int n,
                                      const PipelineParams& params) {
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  const int d = arr.dims();
  MonotoneSearch out;
  out.stage = kStages[0];
  for (int s : arr.sides())
    if (n > s) return out;

  if (n == 1) {
    MonotoneCertificate cert;
    cert.subbox.axes.assign(static_cast<std::size_t>(d), {0});
    cert.signs.assign(static_cast<std::size_t>(d), 1);
    if (!verify_monotone(arr, cert)) throw std::logic_error("bad trivial certificate");
    out.certificate = std::move(cert);
    out.stage = "complete";
    return out;
  }

  if (d == 1) {
    auto run = monotone_of_length(arr.values(), n);
    if (!run) {
      out.stage = "fibers";
      return out;
    }
    MonotoneCertificate cert;
    cert.subbox.axes.push_back(run->indices);
    cert.signs = {run->sign};
    if (!verify_monotone(arr, cert)) throw std::logic_error("bad run certificate");
    out.certificate = std::move(cert);
    out.stage = "complete";
    return out;
  }

  PipelineParams p = params;
  if (p.master_exponent == 0) p.master_exponent = master_c_array(d);
  if (p.tower_side == 0) p.tower_side = tower_side_array(d, n);
  if (p.restriction == 0) p.restriction = restriction_array(n);

  // completeness needs side >= 2^(2^(C_d * n^(d-1)))
  const std::uint64_t inner =
      sat_mul(p.master_exponent,
              sat_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d - 1)));
  const std::uint64_t threshold = sat_pow(2, sat_pow(2, inner));
  const int n_min = *std::min_element(arr.sides().begin(), arr.sides().end());
  out.guarantee_void = static_cast<std::uint64_t>(n_min) < threshold;

  const int s_top =
      p.tower_side > static_cast<std::uint64_t>(n_min) ? n_min : static_cast<int>(p.tower_side);
  int deepest = 0;
  CounterRng rng(p.seed);
  int attempt = 0;
  for (int s = s_top; s >= n; --s, ++attempt) {
    ConsistencyParams cp;
    cp.slice_side = p.slice_cap;
    cp.budget = p.budget;
    ConsistencySearch cs = find_consistent_array(arr, s, cp);
    out.budget_exhausted = out.budget_exhausted || cs.budget_exhausted;
    out.guarantee_void = out.guarantee_void || cs.cap_applied;
    if (!cs.witness) continue;
    const SubBox& w = cs.witness->subbox;
    const NumericArray R = restrict_array(arr, w);
    deepest = std::max(deepest, 1);

    const std::uint64_t want = std::max(p.restriction, static_cast<std::uint64_t>(n));
    const int u_eff =
        want > static_cast<std::uint64_t>(s) ? s : static_cast<int>(want);
    out.guarantee_void =
        out.guarantee_void || static_cast<std::uint64_t>(u_eff) < p.restriction;
    deepest = std::max(deepest, 2);

    // one longest-run query per prefix fiber over the restricted last axis
    std::int64_t prefix_count = 1;
    for (int j = 0; j + 1 < d; ++j) prefix_count *= s;
    std::map<std::pair<std::vector<int>, int>, std::vector<std::int64_t>> buckets;
    std::vector<int> cell(static_cast<std::size_t>(d));
    for (std::int64_t t = 0; t < prefix_count; ++t) {
      std::int64_t rem = t;
      for (int j = d - 2; j >= 0; --j) {
        cell[static_cast<std::size_t>(j)] = static_cast<int>(rem % s);
        rem /= s;
      }
      std::vector<double> seq;
      seq.reserve(static_cast<std::size_t>(u_eff));
      for (int a = 0; a < u_eff; ++a) {
        cell[static_cast<std::size_t>(d - 1)] = a;
        seq.push_back(R.value_at(cell));
      }
      auto run = monotone_of_length(seq, n);
      if (!run) continue;
      buckets[{run->indices, run->sign}].push_back(t);
    }
    if (buckets.empty()) continue;
    deepest = std::max(deepest, 3);

    const double eps =
        usable_density(p.density > 0.0 ? p.density : density_array(u_eff, n));
    const NumericArray Rp = pinned_prefix(R);
    int rank = 0;
    for (const Bucket* bucket : bucket_order(buckets)) {
      deepest = std::max(deepest, 4);
      ExtractionParams ep;
      ep.epsilon = eps;
      ep.retries = p.retries;
      ep.budget = p.budget;
      ep.seed = Seed{rng.word((static_cast<std::uint64_t>(attempt) << 32) |
                              static_cast<std::uint64_t>(rank))};
      ArrayExtraction ex = extract_monotone_in_dense(Rp, bucket->second, n, ep);
      out.guarantee_void = out.guarantee_void || ex.trace.cap_applied;
      out.budget_exhausted = out.budget_exhausted || ex.trace.budget_exhausted;
      out.trace = std::move(ex.trace);
      ++rank;
      if (!ex.certificate) continue;
      MonotoneCertificate rel = std::move(*ex.certificate);
      rel.subbox.axes.push_back(bucket->first.first);
      rel.signs.push_back(bucket->first.second);
      MonotoneCertificate cert{map_axes(rel.subbox, w), rel.signs};
      if (!verify_monotone(arr, cert))
        throw std::logic_error("pipeline produced a bad monotone certificate");
      out.certificate = std::move(cert);
      out.stage = "complete";
      return out;
    }
  }
  out.stage = kStages[deepest];
  return out;
}

std::optional<LexMonotoneCertificate> find_lex_monotone(const NumericArray& arr, int n) {
  if (n < 1) throw std::invalid_argument("target side must be >= 1");
  const int d = arr.dims();
  for (int s : arr.sides())
    if (n > s) return std::nullopt;

  if (n == 1) {
    LexMonotoneCertificate cert;
    cert.subbox.axes.assign(static_cast<std::size_t>(d), {0});
    cert.perm.resize(static_cast<std::size_t>(d));
    std::iota(cert.perm.begin(), cert.perm.end(), 0);
    cert.signs.assign(static_cast<std::size_t>(d), 1);
    return cert;
  }

  int box_size = 1;
  for (int j = 0; j < d; ++j) box_size *= n;
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

  std::vector<int> host(static_cast<std::size_t>(d));
  for (const auto& [perm, signs] : lex_orders(d)) {
    // relative cells in the order this (perm, signs) pair ranks them
    std::vector<int> visit(static_cast<std::size_t>(box_size));
    std::iota(visit.begin(), visit.end(), 0);
    std::sort(visit.begin(), visit.end(), [&](int a, int b) {
      const auto& ra = rel_of[static_cast<std::size_t>(a)];
      const auto& rb = rel_of[static_cast<std::size_t>(b)];
      for (int j = 0; j < d; ++j) {
        auto pj = static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]);
        const int ka = signs[pj] * ra[pj], kb = signs[pj] * rb[pj];
        if (ka != kb) return ka < kb;
      }
      return false;
    });

    std::vector<std::vector<int>> axes(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      axes[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(n));
      std::iota(axes[static_cast<std::size_t>(j)].begin(), axes[static_cast<std::size_t>(j)].end(),
                0);
    }
    auto advance = [&]() -> bool {
      for (int j = d - 1; j >= 0; --j) {
        auto ju = static_cast<std::size_t>(j);
        if (next_combination(axes[ju], arr.side(j))) return true;
        std::iota(axes[ju].begin(), axes[ju].end(), 0);
      }
      return false;
    };
    do {
      double prev = -std::numeric_limits<double>::infinity();
      bool ok = true;
      for (int t : visit) {
        const auto& rel = rel_of[static_cast<std::size_t>(t)];
        for (int j = 0; j < d; ++j)
          host[static_cast<std::size_t>(j)] =
              axes[static_cast<std::size_t>(j)][static_cast<std::size_t>(rel[static_cast<std::size_t>(j)])];
        const double v = arr.value_at(host);
        if (!(v > prev)) {
          ok = false;
          break;
        }
        prev = v;
      }
      if (ok) {
        LexMonotoneCertificate cert{SubBox{axes}, perm, signs};
        if (!verify_lex_monotone(arr, cert))
          throw std::logic_error("lex search produced a bad certificate");
        return cert;
      }
    } while (advance());
  }
  return std::nullopt;
}

} // namespace monobox
