#pragma once

/*
 * Monochromatic cliques in r-edge-coloured complete graphs, plus exact
 * classical Ramsey thresholds at desk scale.
 *
 * The exact strategy is complete backtracking per colour class with
 * degeneracy-ordered branching.  The greedy strategy is the constructive
 * stepping-down argument: repeatedly take the lowest remaining vertex as
 * pivot and keep its majority-colour neighbourhood (ties to the lowest
 * colour id).  Greedy is sound but may miss cliques on small inputs; it
 * cannot miss once n >= r^{rk}.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "monobox/model.hpp"

namespace monobox {

// r-colouring of the edges of K_n, pair-indexed with x < y.
struct EdgeColouring {
  int n = 0;
  int r = 1;
  std::vector<std::uint8_t> colour;

  std::uint8_t at(int x, int y) const {
    if (x > y) std::swap(x, y);
    return colour[static_cast<std::size_t>(pair_index(x, y, n))];
  }
};

// Builds an n-vertex colouring from fn(x, y) -> colour, x < y.
template <class Fn>
EdgeColouring make_edge_colouring(int n, int r, Fn&& fn) {
  EdgeColouring ec{n, r, {}};
  ec.colour.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) ec.colour.push_back(static_cast<std::uint8_t>(fn(x, y)));
  return ec;
}

struct CliqueCertificate {
  std::vector<int> vertices; // ascending
  int colour = 0;            // 0 for the vacuous single-vertex clique
};

// Direct check against the colouring; throws on malformed input.
bool verify_clique(const EdgeColouring& col, int k, const CliqueCertificate& cert);

enum class CliqueStrategy { exact, greedy };

// A monochromatic K_k, or nullopt.  k > n returns nullopt; an invalid
// colouring (payload size or colour range) throws std::invalid_argument.
// Deterministic for fixed inputs.
std::optional<CliqueCertificate> find_mono_clique(const EdgeColouring& col, int k,
                                                  CliqueStrategy strategy);

struct RamseyNumberResult {
  enum class Kind { value, above_cap, budget_exhausted } kind = Kind::value;
  int value = 0;                        // least N forcing a mono K_k (kind == value)
  std::optional<EdgeColouring> witness; // clique-free colouring one below / at cap
  int witness_n = 0;
  std::uint64_t nodes = 0;
};

// Least N <= n_cap such that every r-colouring of K_N contains a mono K_k,
// by exhaustive search over colourings quotiented by colour permutation
// (restricted-growth assignment) with prune-on-completed-clique.
RamseyNumberResult classical_ramsey_exact(int r, int k, int n_cap,
                                          std::uint64_t node_budget = 50'000'000);

} // namespace monobox
