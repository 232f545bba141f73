#pragma once

/*
 * Ground-truth brute force.
 *
 * decide_*_instance settle whether one given instance contains the target
 * structure, by complete enumeration (no heuristics, no sampling).  They
 * are the reference the pipeline searches are tested against.
 *
 * compute_number marches the side length upward: at each N it hunts for an
 * instance lacking the target (a lower-bound witness); when none exists the
 * current N is the exact threshold.  Colouring instances are enumerated up
 * to colour permutation; array order types are explored by a rank-placement
 * DFS that prunes branches as soon as some target box is forced, with the
 * first rank's cell restricted to representatives of the spatial symmetry
 * orbits.  Each quotient symmetry has its own invariance test; nothing else
 * is quotiented.
 */

#include <cstdint>
#include <optional>
#include <variant>

#include "monobox/model.hpp"

namespace monobox {

inline constexpr std::uint64_t kDefaultDecideBudget = 50'000'000;

struct BoxDecision {
  std::optional<DirectionColourCertificate> certificate;
  bool indeterminate = false; // budget ran out before the scan finished
  std::uint64_t nodes = 0;
};

struct MonotoneDecision {
  std::optional<MonotoneCertificate> certificate;
  bool indeterminate = false;
  std::uint64_t nodes = 0;
};

struct LexDecision {
  std::optional<LexMonotoneCertificate> certificate;
  bool indeterminate = false;
  std::uint64_t nodes = 0;
};

// Is there a sub-box of side n monochromatic in every direction?
BoxDecision decide_R_instance(const BoxColouring& col, int n,
                              std::uint64_t budget = kDefaultDecideBudget);

// Is there a monotone subarray of side n?
MonotoneDecision decide_M_instance(const NumericArray& arr, int n,
                                   std::uint64_t budget = kDefaultDecideBudget);

// Is there a lex-monotone subarray of side n?
LexDecision decide_L_instance(const NumericArray& arr, int n,
                              std::uint64_t budget = kDefaultDecideBudget);

enum class NumberFamily { R, M, L }; // mono box / monotone / lex-monotone

struct NumberQuery {
  NumberFamily family = NumberFamily::M;
  int colours = 2; // family R only
  int d = 1;
  int n = 2;
  int side_cap = 6;
  std::uint64_t node_budget = 200'000'000;
};

struct NumberResult {
  enum class Kind { value, lower_bound_witness, indeterminate };
  Kind kind = Kind::indeterminate;
  // Kind::value: the least side where every instance contains the target.
  // Kind::lower_bound_witness: the largest side checked, which still has an
  // instance lacking the target (so the number exceeds it).
  int value = 0;
  // Instance lacking the target: at value-1 for Kind::value (absent when
  // value-1 < n, where no target fits anyway), at `value` otherwise.
  std::variant<std::monostate, BoxColouring, NumericArray> witness;
  int witness_side = 0;
  std::uint64_t nodes = 0;
  // Size of the enumeration or table that made the query infeasible, when
  // that is why the result is indeterminate.
  std::uint64_t instance_count = 0;
};

NumberResult compute_number(const NumberQuery& q);

} // namespace monobox
