#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <span>
#include <vector>

#include "monobox/consistency.hpp"
#include "monobox/generators.hpp"
#include "monobox/model.hpp"
#include "monobox/rng.hpp"
#include "monobox/verify.hpp"

using namespace monobox;

namespace {

SubBox full_box(const BoxColouring& col) {
  std::vector<std::vector<int>> axes(static_cast<std::size_t>(col.dims()));
  for (auto& axis : axes) {
    for (int v = 0; v < col.side(); ++v) axis.push_back(v);
  }
  return SubBox{std::move(axes)};
}

SubBox full_box(const NumericArray& arr) {
  std::vector<std::vector<int>> axes(static_cast<std::size_t>(arr.dims()));
  for (int i = 0; i < arr.dims(); ++i) {
    for (int v = 0; v < arr.side(i); ++v) axes[static_cast<std::size_t>(i)].push_back(v);
  }
  return SubBox{std::move(axes)};
}

} // namespace

TEST_CASE("direction colourings are consistent in both formulations") {
  for (int d = 1; d <= 3; ++d) {
    const BoxColouring col = gen_direction_colouring(d, 4, 3);
    const SubBox box = full_box(col);
    CHECK(is_consistent(col, box));
    CHECK(is_consistent_unrolled(col, box));
  }
}

TEST_CASE("recursive and unrolled checkers agree on random colourings") {
  int consistent = 0;
  for (int i = 0; i < 400; ++i) {
    const BoxColouring col = gen_random_colouring(2, 3, 2, Seed{900u + static_cast<std::uint64_t>(i)});
    const SubBox box = full_box(col);
    const bool rec = is_consistent(col, box);
    CHECK(rec == is_consistent_unrolled(col, box));
    consistent += rec ? 1 : 0;
  }
  // A random full box is almost never consistent.
  CHECK(consistent < 40);
}

TEST_CASE("recursive and unrolled checkers agree on random arrays") {
  for (int i = 0; i < 400; ++i) {
    const NumericArray arr = gen_random_array({3, 3}, Seed{1700u + static_cast<std::uint64_t>(i)});
    const SubBox box = full_box(arr);
    CHECK(is_consistent(arr, box) == is_consistent_unrolled(arr, box));
  }
}

TEST_CASE("pigeonhole search is sound and never beats the exhaustive scan") {
  // Below the completeness thresholds the pigeonhole recursion may miss
  // witnesses the reference scan finds, but never the other way round.
  int exact_hits = 0;
  int search_hits = 0;
  for (int i = 0; i < 200; ++i) {
    const BoxColouring col = gen_random_colouring(2, 4, 2, Seed{3000u + static_cast<std::uint64_t>(i)});
    for (int k = 2; k <= 4; ++k) {
      const auto exact = find_consistent_box_exhaustive(col, k);
      const ConsistencySearch search = find_consistent_box(col, k);
      REQUIRE_FALSE(search.budget_exhausted);
      exact_hits += exact.has_value() ? 1 : 0;
      if (search.witness) {
        ++search_hits;
        CHECK(exact.has_value());
        CHECK(is_consistent(col, search.witness->subbox));
        CHECK(canonical_pattern(col, search.witness->subbox) == search.witness->pattern);
        CHECK(search.patterns_observed <= col.side());
      }
      if (exact) CHECK(is_consistent(col, exact->subbox));
    }
  }
  CHECK(exact_hits > 0);
  CHECK(exact_hits >= search_hits);
}

TEST_CASE("pigeonhole search is sound on arrays") {
  int exact_hits = 0;
  for (int i = 0; i < 120; ++i) {
    const NumericArray arr = gen_random_array({4, 4}, Seed{4200u + static_cast<std::uint64_t>(i)});
    for (int k = 2; k <= 3; ++k) {
      const auto exact = find_consistent_array_exhaustive(arr, k);
      const ConsistencySearch search = find_consistent_array(arr, k);
      REQUIRE_FALSE(search.budget_exhausted);
      exact_hits += exact.has_value() ? 1 : 0;
      if (search.witness) {
        CHECK(exact.has_value());
        CHECK(is_consistent(arr, search.witness->subbox));
        CHECK(canonical_pattern(arr, search.witness->subbox) == search.witness->pattern);
      }
    }
  }
  CHECK(exact_hits > 0);
}

TEST_CASE("repeated slice patterns make the pigeonhole succeed") {
  // Direction-0 colours depend only on the endpoints, so all slices along
  // the last axis carry one pattern and every target side must be found.
  const BoxColouring col = make_colouring(2, 4, 2, [](int dir, std::span<const int>, int x, int y) {
    return dir == 0 ? (x + y) % 2 : 1;
  });
  for (int k = 2; k <= 4; ++k) {
    const auto exact = find_consistent_box_exhaustive(col, k);
    const ConsistencySearch search = find_consistent_box(col, k);
    REQUIRE(exact.has_value());
    REQUIRE(search.witness.has_value());
    CHECK(is_consistent(col, search.witness->subbox));
    CHECK(canonical_pattern(col, search.witness->subbox) == search.witness->pattern);
  }
}

TEST_CASE("consistency is hereditary") {
  // Dropping indices from every axis of a consistent box keeps it consistent.
  const BoxColouring col = gen_direction_colouring(2, 5, 3);
  const SubBox box = full_box(col);
  REQUIRE(is_consistent(col, box));
  CounterRng rng(Seed{71});
  for (std::uint64_t i = 0; i < 50; ++i) {
    std::vector<std::vector<int>> axes;
    for (int a = 0; a < 2; ++a) {
      const auto keep = sample_sorted(rng.fork(i * 2 + static_cast<std::uint64_t>(a)), 5, 3);
      axes.push_back(keep);
    }
    CHECK(is_consistent(col, SubBox{std::move(axes)}));
  }
}

TEST_CASE("slice cap is reported") {
  const BoxColouring col = gen_direction_colouring(2, 6, 2);
  ConsistencyParams params;
  params.slice_side = 3;
  const ConsistencySearch capped = find_consistent_box(col, 2, params);
  CHECK(capped.cap_applied);
  const ConsistencySearch uncapped = find_consistent_box(col, 2);
  CHECK_FALSE(uncapped.cap_applied);
  REQUIRE(uncapped.witness.has_value());
}

TEST_CASE("search failure carries a reason") {
  // Direction-0 colours depend on the axis-1 coordinate, so the only side-2
  // sub-box (the whole box) is inconsistent and the search says why.
  const BoxColouring col = make_colouring(2, 2, 4, [](int dir, std::span<const int> off, int a, int b) {
    (void)a;
    (void)b;
    return dir == 0 ? (off[0] == 0 ? 0 : 1) : (off[0] == 0 ? 2 : 3);
  });
  const auto exact = find_consistent_box_exhaustive(col, 2);
  const ConsistencySearch search = find_consistent_box(col, 2);
  CHECK_FALSE(exact.has_value());
  CHECK_FALSE(search.witness.has_value());
  CHECK_FALSE(search.budget_exhausted);
  CHECK_FALSE(search.failure.empty());
}
