#include "monobox/dense_extraction.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "monobox/consistency.hpp"
#include "monobox/monotone1d.hpp"
#include "monobox/params.hpp"
#include "monobox/ramsey1d.hpp"
#include "monobox/verify.hpp"

namespace monobox {
namespace {

struct Ctx {
  std::uint64_t used = 0;
  std::uint64_t budget = 0;
  bool spend(std::uint64_t units) {
    used += units;
    return used <= budget;
  }
};

void check_params(const ExtractionParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 0.5))
    throw std::invalid_argument("epsilon must be in (0, 1/2)");
  if (p.sample_size < 0) throw std::invalid_argument("sample size must be >= 0");
  if (p.retries < 1) throw std::invalid_argument("retries must be >= 1");
  if (p.budget < 1) throw std::invalid_argument("budget must be >= 1");
}

void check_cells(std::int64_t cell_count, const std::vector<std::int64_t>& cells) {
  std::int64_t prev = -1;
  for (std::int64_t c : cells) {
    if (c < 0 || c >= cell_count) throw std::out_of_range("cell id out of range");
    if (c <= prev) throw std::invalid_argument("cell ids must be strictly ascending");
    prev = c;
  }
}

// Closed-form |A| = (10/eps) * unit, capped at N.
int resolve_sample(const ExtractionParams& p, std::uint64_t unit, int n, bool& capped) {
  double want = p.sample_size > 0
                    ? static_cast<double>(p.sample_size)
                    : std::ceil(10.0 / p.epsilon * static_cast<double>(unit));
  if (want > static_cast<double>(n)) {
    capped = true;
    return n;
  }
  return std::max(1, static_cast<int>(want));
}

// Per-fiber hit requirement, capped at the sample size.
int resolve_hits(std::uint64_t unit, int sample_n, bool& capped) {
  if (unit > static_cast<std::uint64_t>(sample_n)) {
    capped = true;
    return sample_n;
  }
  return std::max(1, static_cast<int>(unit));
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else ++n, ++i, ++j;
  }
  return n;
}

// Members of S per prefix fiber; index = prefix cell id, entries = sorted
// last-coordinate values.
std::vector<std::vector<int>> split_fibers(const std::vector<std::int64_t>& cells,
                                           std::int64_t prefix_count, int n) {
  std::vector<std::vector<int>> fiber(static_cast<std::size_t>(prefix_count));
  for (std::int64_t id : cells)
    fiber[static_cast<std::size_t>(id / n)].push_back(static_cast<int>(id % n));
  return fiber;
}

BoxExtraction extract_box_level(const BoxColouring& col, const std::vector<std::int64_t>& cells,
                                int k, const ExtractionParams& params, Ctx& ctx);
ArrayExtraction extract_array_level(const NumericArray& arr,
                                    const std::vector<std::int64_t>& cells, int k,
                                    const ExtractionParams& params, Ctx& ctx);

BoxExtraction extract_box_level(const BoxColouring& col, const std::vector<std::int64_t>& cells,
                                int k, const ExtractionParams& params, Ctx& ctx) {
  const int d = col.dims();
  const int N = col.side();
  const int r = col.colours();
  const std::vector<int> sides(static_cast<std::size_t>(d), N);
  BoxExtraction out;
  out.trace.dims = d;

  if (cells.empty()) {
    out.trace.stage = "density";
    return out;
  }
  if (k == 1) {
    std::vector<int> coord = cell_of_id(cells.front(), sides);
    DirectionColourCertificate cert;
    for (int v : coord) cert.subbox.axes.push_back({v});
    cert.direction_colours.assign(static_cast<std::size_t>(d), 0);
    if (!verify_mono_box(col, cert))
      throw std::logic_error("extraction produced a bad trivial certificate");
    out.certificate = std::move(cert);
    out.trace.stage = "complete";
    return out;
  }
  if (d == 1) {
    std::vector<int> verts(cells.begin(), cells.end());
    if (!ctx.spend(verts.size())) {
      out.trace.budget_exhausted = true;
      out.trace.stage = "ramsey";
      return out;
    }
    EdgeColouring ec = make_edge_colouring(
        static_cast<int>(verts.size()), r, [&](int x, int y) {
          return col.colour(0, std::span<const int>(), verts[static_cast<std::size_t>(x)],
                            verts[static_cast<std::size_t>(y)]);
        });
    auto clique = find_mono_clique(ec, k, CliqueStrategy::exact);
    if (!clique) {
      out.trace.stage = "ramsey";
      return out;
    }
    DirectionColourCertificate cert;
    std::vector<int> axis;
    for (int v : clique->vertices) axis.push_back(verts[static_cast<std::size_t>(v)]);
    cert.subbox.axes.push_back(std::move(axis));
    cert.direction_colours = {clique->colour};
    if (!verify_mono_box(col, cert))
      throw std::logic_error("extraction produced a bad base certificate");
    out.certificate = std::move(cert);
    out.trace.stage = "complete";
    return out;
  }

  std::int64_t prefix_count = 1;
  for (int j = 0; j + 1 < d; ++j) prefix_count *= N;
  const auto fiber = split_fibers(cells, prefix_count, N);

  const double need = params.epsilon * N / 2.0;
  std::vector<std::int64_t> dense;
  for (std::int64_t p = 0; p < prefix_count; ++p)
    if (static_cast<double>(fiber[static_cast<std::size_t>(p)].size()) >= need)
      dense.push_back(p);
  out.trace.dense_fibers = dense;
  if (dense.empty()) {
    out.trace.stage = "density";
    return out;
  }

  CounterRng rng(params.seed);
  bool capped = false;
  const std::uint64_t unit =
      sat_pow(static_cast<std::uint64_t>(r),
              sat_mul(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(k)));
  const int sample_n = resolve_sample(params, unit, N, capped);
  const int hits_need = resolve_hits(unit, sample_n, capped);
  out.trace.cap_applied = capped;

  std::vector<int> sample;
  std::vector<std::int64_t> hit;
  bool sampled = false;
  for (int t = 0; t < params.retries && !sampled; ++t) {
    if (!ctx.spend(1 + dense.size())) {
      out.trace.budget_exhausted = true;
      out.trace.stage = "sampling";
      return out;
    }
    sample = sample_sorted(rng.fork(static_cast<std::uint64_t>(t)), N, sample_n);
    hit.clear();
    for (std::int64_t p : dense)
      if (intersection_size(fiber[static_cast<std::size_t>(p)], sample) >=
          static_cast<std::size_t>(hits_need))
        hit.push_back(p);
    sampled = 3 * hit.size() >= 2 * dense.size();
  }
  out.trace.sample = sample;
  out.trace.hit_fibers = hit;
  if (!sampled) {
    out.trace.stage = "sampling";
    return out;
  }

  // one clique search per surviving fiber, pigeonholed on (set, colour)
  std::map<std::pair<std::vector<int>, int>, std::vector<std::int64_t>> buckets;
  std::vector<int> off(static_cast<std::size_t>(d - 1));
  for (std::int64_t p : hit) {
    if (!ctx.spend(1)) {
      out.trace.budget_exhausted = true;
      out.trace.stage = "ramsey";
      return out;
    }
    std::vector<int> in_sample = intersect_sorted(fiber[static_cast<std::size_t>(p)], sample);
    if (static_cast<int>(in_sample.size()) < k) continue;
    std::int64_t rem = p;
    for (int j = d - 2; j >= 0; --j) {
      off[static_cast<std::size_t>(j)] = static_cast<int>(rem % N);
      rem /= N;
    }
    EdgeColouring ec = make_edge_colouring(
        static_cast<int>(in_sample.size()), r, [&](int x, int y) {
          return col.colour(d - 1, off, in_sample[static_cast<std::size_t>(x)],
                            in_sample[static_cast<std::size_t>(y)]);
        });
    auto clique = find_mono_clique(ec, k, CliqueStrategy::exact);
    if (!clique) continue;
    std::vector<int> set;
    for (int v : clique->vertices) set.push_back(in_sample[static_cast<std::size_t>(v)]);
    buckets[{std::move(set), clique->colour}].push_back(p);
  }
  if (buckets.empty()) {
    out.trace.stage = "ramsey";
    return out;
  }

  std::vector<const std::pair<const std::pair<std::vector<int>, int>, std::vector<std::int64_t>>*>
      order;
  for (const auto& entry : buckets) order.push_back(&entry);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->second.size() > b->second.size(); });

  const BoxColouring child = pinned_prefix(col);
#ifndef NDEBUG
  {
    const std::vector<int> child_sides(static_cast<std::size_t>(d - 1), N);
    assert(is_consistent(child, SubBox::full(child_sides)));
  }
#endif
  const double child_eps = recursion_density(params.epsilon, k, r);
  int rank = 0;
  for (const auto* entry : order) {
    if (!ctx.spend(1)) {
      out.trace.budget_exhausted = true;
      break;
    }
    ExtractionParams cp = params;
    cp.epsilon = child_eps;
    cp.seed = Seed{rng.word(0x10000 + static_cast<std::uint64_t>(rank))};
    BoxExtraction sub = extract_box_level(child, entry->second, k, cp, ctx);
    out.trace.cap_applied = out.trace.cap_applied || sub.trace.cap_applied;
    out.trace.budget_exhausted = out.trace.budget_exhausted || sub.trace.budget_exhausted;
    out.trace.children.push_back(std::move(sub.trace));
    if (sub.certificate) {
      DirectionColourCertificate cert = std::move(*sub.certificate);
      cert.subbox.axes.push_back(entry->first.first);
      cert.direction_colours.push_back(entry->first.second);
      if (!verify_mono_box(col, cert))
        throw std::logic_error("extraction produced a bad product certificate");
      out.trace.winning_set = entry->first.first;
      out.trace.winning_label = entry->first.second;
      out.trace.winning_fibers = entry->second;
      out.trace.stage = "complete";
      out.certificate = std::move(cert);
      return out;
    }
    ++rank;
  }
  out.trace.stage = "recursion";
  return out;
}

ArrayExtraction extract_array_level(const NumericArray& arr,
                                    const std::vector<std::int64_t>& cells, int k,
                                    const ExtractionParams& params, Ctx& ctx) {
  const int d = arr.dims();
  const int N = arr.side(0);
  ArrayExtraction out;
  out.trace.dims = d;

  if (cells.empty()) {
    out.trace.stage = "density";
    return out;
  }
  if (k == 1) {
    std::vector<int> coord = cell_of_id(cells.front(), arr.sides());
    MonotoneCertificate cert;
    for (int v : coord) cert.subbox.axes.push_back({v});
    cert.signs.assign(static_cast<std::size_t>(d), 1);
    if (!verify_monotone(arr, cert))
      throw std::logic_error("extraction produced a bad trivial certificate");
    out.certificate = std::move(cert);
    out.trace.stage = "complete";
    return out;
  }
  if (d == 1) {
    std::vector<int> verts(cells.begin(), cells.end());
    if (!ctx.spend(verts.size())) {
      out.trace.budget_exhausted = true;
      out.trace.stage = "monotone";
      return out;
    }
    std::vector<double> seq;
    std::vector<int> cell(1);
    for (int v : verts) {
      cell[0] = v;
      seq.push_back(arr.value_at(cell));
    }
    auto run = monotone_of_length(seq, k);
    if (!run) {
      out.trace.stage = "monotone";
      return out;
    }
    MonotoneCertificate cert;
    std::vector<int> axis;
    for (int i : run->indices) axis.push_back(verts[static_cast<std::size_t>(i)]);
    cert.subbox.axes.push_back(std::move(axis));
    cert.signs = {run->sign};
    if (!verify_monotone(arr, cert))
      throw std::logic_error("extraction produced a bad base certificate");
    out.certificate = std::move(cert);
    out.trace.stage = "complete";
    return out;
  }

  std::int64_t prefix_count = 1;
  for (int j = 0; j + 1 < d; ++j) prefix_count *= N;
  const auto fiber = split_fibers(cells, prefix_count, N);

  const double need = params.epsilon * N / 2.0;
  std::vector<std::int64_t> dense;
  for (std::int64_t p = 0; p < prefix_count; ++p)
    if (static_cast<double>(fiber[static_cast<std::size_t>(p)].size()) >= need)
      dense.push_back(p);
  out.trace.dense_fibers = dense;
  if (dense.empty()) {
    out.trace.stage = "density";
    return out;
  }

  CounterRng rng(params.seed);
  bool capped = false;
  const std::uint64_t unit =
      sat_mul(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(k));
  const int sample_n = resolve_sample(params, unit, N, capped);
  const int hits_need = resolve_hits(unit, sample_n, capped);
  out.trace.cap_applied = capped;

  std::vector<int> sample;
  std::vector<std::int64_t> hit;
  bool sampled = false;
  for (int t = 0; t < params.retries && !sampled; ++t) {
    if (!ctx.spend(1 + dense.size())) {
      out.trace.budget_exhausted = true;
      out.trace.stage = "sampling";
      return out;
    }
    sample = sample_sorted(rng.fork(static_cast<std::uint64_t>(t)), N, sample_n);
    hit.clear();
    for (std::int64_t p : dense)
      if (intersection_size(fiber[static_cast<std::size_t>(p)], sample) >=
          static_cast<std::size_t>(hits_need))
        hit.push_back(p);
    sampled = 3 * hit.size() >= 2 * dense.size();
  }
  out.trace.sample = sample;
  out.trace.hit_fibers = hit;
  if (!sampled) {
    out.trace.stage = "sampling";
    return out;
  }

  // one run search per surviving fiber, pigeonholed on (set, sign)
  std::map<std::pair<std::vector<int>, int>, std::vector<std::int64_t>> buckets;
  std::vector<int> cell(static_cast<std::size_t>(d));
  for (std::int64_t p : hit) {
    if (!ctx.spend(1)) {
      out.trace.budget_exhausted = true;
      out.trace.stage = "monotone";
      return out;
    }
    std::vector<int> in_sample = intersect_sorted(fiber[static_cast<std::size_t>(p)], sample);
    if (static_cast<int>(in_sample.size()) < k) continue;
    std::int64_t rem = p;
    for (int j = d - 2; j >= 0; --j) {
      cell[static_cast<std::size_t>(j)] = static_cast<int>(rem % N);
      rem /= N;
    }
    std::vector<double> seq;
    for (int a : in_sample) {
      cell[static_cast<std::size_t>(d - 1)] = a;
      seq.push_back(arr.value_at(cell));
    }
    auto run = monotone_of_length(seq, k);
    if (!run) continue;
    std::vector<int> set;
    for (int i : run->indices) set.push_back(in_sample[static_cast<std::size_t>(i)]);
    buckets[{std::move(set), run->sign}].push_back(p);
  }
  if (buckets.empty()) {
    out.trace.stage = "monotone";
    return out;
  }

  std::vector<const std::pair<const std::pair<std::vector<int>, int>, std::vector<std::int64_t>>*>
      order;
  for (const auto& entry : buckets) order.push_back(&entry);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->second.size() > b->second.size(); });

  const NumericArray child = pinned_prefix(arr);
  const double child_eps = recursion_density(params.epsilon, k, 2);
  int rank = 0;
  for (const auto* entry : order) {
    if (!ctx.spend(1)) {
      out.trace.budget_exhausted = true;
      break;
    }
    ExtractionParams cp = params;
    cp.epsilon = child_eps;
    cp.seed = Seed{rng.word(0x10000 + static_cast<std::uint64_t>(rank))};
    ArrayExtraction sub = extract_array_level(child, entry->second, k, cp, ctx);
    out.trace.cap_applied = out.trace.cap_applied || sub.trace.cap_applied;
    out.trace.budget_exhausted = out.trace.budget_exhausted || sub.trace.budget_exhausted;
    out.trace.children.push_back(std::move(sub.trace));
    if (sub.certificate) {
      MonotoneCertificate cert = std::move(*sub.certificate);
      cert.subbox.axes.push_back(entry->first.first);
      cert.signs.push_back(entry->first.second);
      if (!verify_monotone(arr, cert))
        throw std::logic_error("extraction produced a bad product certificate");
      out.trace.winning_set = entry->first.first;
      out.trace.winning_label = entry->first.second;
      out.trace.winning_fibers = entry->second;
      out.trace.stage = "complete";
      out.certificate = std::move(cert);
      return out;
    }
    ++rank;
  }
  out.trace.stage = "recursion";
  return out;
}

} // namespace

BoxColouring pinned_prefix(const BoxColouring& col) {
  const int d = col.dims();
  if (d < 2) throw std::invalid_argument("prefix restriction needs dims >= 2");
  return make_colouring(d - 1, col.side(), col.colours(),
                        [&](int dir, std::span<const int> off, int x, int y) {
                          std::vector<int> full(off.begin(), off.end());
                          full.push_back(0);
                          return col.colour(dir, full, x, y);
                        });
}

NumericArray pinned_prefix(const NumericArray& arr) {
  const int d = arr.dims();
  if (d < 2) throw std::invalid_argument("prefix restriction needs dims >= 2");
  const int n = arr.side(0);
  std::int64_t prefix_count = 1;
  for (int j = 0; j + 1 < d; ++j) prefix_count *= n;
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(prefix_count));
  std::vector<int> cell(static_cast<std::size_t>(d), 0);
  for (std::int64_t id = 0; id < prefix_count; ++id) {
    std::int64_t rem = id;
    for (int j = d - 2; j >= 0; --j) {
      cell[static_cast<std::size_t>(j)] = static_cast<int>(rem % n);
      rem /= n;
    }
    vals.push_back(arr.value_at(cell));
  }
  return NumericArray(std::vector<int>(static_cast<std::size_t>(d - 1), n), std::move(vals));
}

BoxExtraction extract_in_dense(const BoxColouring& col, const std::vector<std::int64_t>& cells,
                               int k, const ExtractionParams& params) {
  check_params(params);
  if (k < 1) throw std::invalid_argument("target side must be >= 1");
  const std::vector<int> sides(static_cast<std::size_t>(col.dims()), col.side());
  std::int64_t total = 1;
  for (int s : sides) total *= s;
  check_cells(total, cells);
  if (!is_consistent(col, SubBox::full(sides)))
    throw std::invalid_argument("host colouring is not consistent");
  Ctx ctx{0, params.budget};
  return extract_box_level(col, cells, k, params, ctx);
}

ArrayExtraction extract_monotone_in_dense(const NumericArray& arr,
                                          const std::vector<std::int64_t>& cells, int k,
                                          const ExtractionParams& params) {
  check_params(params);
  if (k < 1) throw std::invalid_argument("target side must be >= 1");
  for (int s : arr.sides())
    if (s != arr.side(0)) throw std::invalid_argument("host sides must be uniform");
  check_cells(arr.cell_count(), cells);
  if (!is_consistent(arr, SubBox::full(arr.sides())))
    throw std::invalid_argument("host array is not consistent");
  Ctx ctx{0, params.budget};
  return extract_array_level(arr, cells, k, params, ctx);
}

} // namespace monobox
