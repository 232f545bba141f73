#include "monobox/ramsey1d.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace monobox {

namespace {

void check_colouring(const EdgeColouring& col) {
  if (col.n < 0 || col.r < 1) throw std::invalid_argument("bad edge colouring header");
  if (static_cast<std::int64_t>(col.colour.size()) != pair_count(col.n))
    throw std::invalid_argument("edge colouring payload size mismatch");
  for (auto c : col.colour)
    if (c >= col.r) throw std::invalid_argument("edge colour out of range");
}

// Vertices of `verts` ordered by repeated minimum-degree removal in the
// colour-c subgraph.
std::vector<int> degeneracy_order(const EdgeColouring& col, int c, const std::vector<int>& verts) {
  std::vector<int> order;
  std::vector<int> alive(verts);
  while (!alive.empty()) {
    std::size_t best = 0;
    int best_deg = static_cast<int>(alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
      int deg = 0;
      for (std::size_t j = 0; j < alive.size(); ++j)
        if (i != j && col.at(alive[i], alive[j]) == c) ++deg;
      if (deg < best_deg) {
        best_deg = deg;
        best = i;
      }
    }
    order.push_back(alive[best]);
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

bool extend_clique(const EdgeColouring& col, int c, int k, std::vector<int>& chosen,
                   const std::vector<int>& cand) {
  if (static_cast<int>(chosen.size()) == k) return true;
  if (static_cast<int>(chosen.size() + cand.size()) < k) return false;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    chosen.push_back(cand[i]);
    std::vector<int> next;
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (col.at(cand[i], cand[j]) == c) next.push_back(cand[j]);
    if (extend_clique(col, c, k, chosen, next)) return true;
    chosen.pop_back();
  }
  return false;
}

std::optional<CliqueCertificate> exact_search(const EdgeColouring& col, int k) {
  std::vector<int> all(static_cast<std::size_t>(col.n));
  std::iota(all.begin(), all.end(), 0);
  for (int c = 0; c < col.r; ++c) {
    std::vector<int> order = degeneracy_order(col, c, all);
    std::vector<int> chosen;
    if (extend_clique(col, c, k, chosen, order)) {
      std::sort(chosen.begin(), chosen.end());
      return CliqueCertificate{std::move(chosen), c};
    }
  }
  return std::nullopt;
}

std::optional<CliqueCertificate> greedy_search(const EdgeColouring& col, int k) {
  std::vector<int> remaining(static_cast<std::size_t>(col.n));
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> pivots;
  std::vector<int> pivot_colour; // -1 for the final pivot with no successors
  while (!remaining.empty()) {
    int pivot = remaining.front();
    remaining.erase(remaining.begin());
    pivots.push_back(pivot);
    if (remaining.empty()) {
      pivot_colour.push_back(-1);
      break;
    }
    std::vector<int> count(static_cast<std::size_t>(col.r), 0);
    for (int v : remaining) ++count[col.at(pivot, v)];
    int c = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
    pivot_colour.push_back(c);
    std::vector<int> next;
    for (int v : remaining)
      if (col.at(pivot, v) == c) next.push_back(v);
    remaining = std::move(next);
  }
  // Pairs of pivots are coloured by the earlier pivot's recorded colour, so
  // k-1 pivots of colour c plus any later pivot form a mono K_k.
  for (int c = 0; c < col.r; ++c) {
    std::vector<int> verts;
    std::size_t last_idx = 0;
    for (std::size_t i = 0; i < pivots.size() && static_cast<int>(verts.size()) < k - 1; ++i)
      if (pivot_colour[i] == c) {
        verts.push_back(pivots[i]);
        last_idx = i;
      }
    if (static_cast<int>(verts.size()) == k - 1 && last_idx + 1 < pivots.size()) {
      verts.push_back(pivots[last_idx + 1]);
      std::sort(verts.begin(), verts.end());
      return CliqueCertificate{std::move(verts), c};
    }
  }
  return std::nullopt;
}

} // namespace

bool verify_clique(const EdgeColouring& col, int k, const CliqueCertificate& cert) {
  check_colouring(col);
  if (static_cast<int>(cert.vertices.size()) != k)
    throw std::invalid_argument("clique size mismatch");
  if (cert.colour < 0 || cert.colour >= col.r) throw std::invalid_argument("clique colour out of range");
  int prev = -1;
  for (int v : cert.vertices) {
    if (v <= prev) throw std::invalid_argument("clique vertices not strictly increasing");
    if (v < 0 || v >= col.n) throw std::invalid_argument("clique vertex out of range");
    prev = v;
  }
  for (std::size_t i = 0; i < cert.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < cert.vertices.size(); ++j)
      if (col.at(cert.vertices[i], cert.vertices[j]) != cert.colour) return false;
  return true;
}

std::optional<CliqueCertificate> find_mono_clique(const EdgeColouring& col, int k,
                                                  CliqueStrategy strategy) {
  check_colouring(col);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > col.n) return std::nullopt;
  if (k == 1) return CliqueCertificate{{0}, 0};
  return strategy == CliqueStrategy::exact ? exact_search(col, k) : greedy_search(col, k);
}

namespace {

// Looks for a colour-c K_{need} inside `verts` (all pairwise edges already
// assigned) of the partial colouring `col`.
bool partial_clique(const std::vector<std::vector<int>>& col, int c, int need,
                    const std::vector<int>& verts, std::size_t from, int got) {
  if (got == need) return true;
  if (static_cast<int>(verts.size() - from) < need - got) return false;
  for (std::size_t i = from; i < verts.size(); ++i) {
    std::vector<int> next;
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (col[static_cast<std::size_t>(verts[j])][static_cast<std::size_t>(verts[i])] == c)
        next.push_back(verts[j]);
    if (partial_clique(col, c, need, next, 0, got + 1)) return true;
  }
  return false;
}

struct RamseyDfs {
  int n, r, k;
  std::uint64_t budget, nodes = 0;
  bool out_of_budget = false;
  std::vector<std::pair<int, int>> edges; // (x, y) vertex-incremental order
  std::vector<std::vector<int>> col;      // col[y][x], y > x, -1 unassigned

  bool creates_clique(int x, int y, int c) {
    // Mono K_k through the freshly coloured edge (x, y): needs K_{k-2} of
    // colour c among earlier vertices adjacent in c to both.
    std::vector<int> common;
    for (int w = 0; w < x; ++w)
      if (col[static_cast<std::size_t>(x)][static_cast<std::size_t>(w)] == c &&
          col[static_cast<std::size_t>(y)][static_cast<std::size_t>(w)] == c)
        common.push_back(w);
    if (k == 2) return true;
    return partial_clique(col, c, k - 2, common, 0, 0);
  }

  // True if a clique-free completion exists from edge index `e`.
  bool search(std::size_t e, int used_colours) {
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    if (e == edges.size()) return true;
    auto [x, y] = edges[e];
    int limit = std::min(r, used_colours + 1);
    for (int c = 0; c < limit; ++c) {
      if (creates_clique(x, y, c)) continue;
      col[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = c;
      if (search(e + 1, std::max(used_colours, c + 1))) return true;
      col[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = -1;
      if (out_of_budget) return false;
    }
    return false;
  }
};

} // namespace

RamseyNumberResult classical_ramsey_exact(int r, int k, int n_cap, std::uint64_t node_budget) {
  if (r < 1 || k < 1 || n_cap < 1) throw std::invalid_argument("bad classical Ramsey query");
  RamseyNumberResult res;
  if (k == 1) {
    res.kind = RamseyNumberResult::Kind::value;
    res.value = 1;
    return res;
  }
  std::uint64_t nodes_total = 0;
  for (int n = 1; n <= n_cap; ++n) {
    RamseyDfs dfs;
    dfs.n = n;
    dfs.r = r;
    dfs.k = k;
    dfs.budget = node_budget;
    dfs.col.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int y = 1; y < n; ++y)
      for (int x = 0; x < y; ++x) dfs.edges.emplace_back(x, y);
    bool witness = dfs.search(0, 0);
    nodes_total += dfs.nodes;
    if (dfs.out_of_budget) {
      res.kind = RamseyNumberResult::Kind::budget_exhausted;
      res.nodes = nodes_total;
      return res;
    }
    if (!witness) {
      res.kind = RamseyNumberResult::Kind::value;
      res.value = n;
      res.nodes = nodes_total;
      return res;
    }
    res.witness = make_edge_colouring(n, r, [&](int x, int y) {
      int c = dfs.col[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      return c < 0 ? 0 : c;
    });
    res.witness_n = n;
  }
  res.kind = RamseyNumberResult::Kind::above_cap;
  res.value = n_cap;
  res.nodes = nodes_total;
  return res;
}

} // namespace monobox
