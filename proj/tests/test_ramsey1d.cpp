#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "monobox/ramsey1d.hpp"
#include "monobox/rng.hpp"

using namespace monobox;

namespace {

// 2-colouring of K_5 with unit distances one colour and diagonals the
// other; the classical witness with no monochromatic triangle.
EdgeColouring pentagon() {
  return make_edge_colouring(5, 2, [](int x, int y) {
    const int d = y - x;
    return (d == 1 || d == 4) ? 0 : 1;
  });
}

} // namespace

TEST_CASE("verify_clique checks colours and bounds") {
  const EdgeColouring all0 = make_edge_colouring(4, 2, [](int, int) { return 0; });
  CHECK(verify_clique(all0, 3, {{0, 1, 3}, 0}));
  CHECK_FALSE(verify_clique(all0, 3, {{0, 1, 3}, 1}));
  CHECK_THROWS((void)verify_clique(all0, 3, {{0, 1}, 0}));      // size mismatch
  CHECK_THROWS((void)verify_clique(all0, 3, {{0, 1, 7}, 0}));   // out of range
  CHECK_THROWS((void)verify_clique(all0, 3, {{1, 0, 2}, 0}));   // unordered
}

TEST_CASE("the pentagon colouring has no monochromatic triangle") {
  CHECK_FALSE(find_mono_clique(pentagon(), 3, CliqueStrategy::exact).has_value());
}

TEST_CASE("every 2-colouring of K_6 has a monochromatic triangle") {
  for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
    int bit = 0;
    std::vector<std::uint8_t> edges(15);
    for (auto& e : edges) e = (mask >> bit++) & 1u;
    EdgeColouring col{6, 2, edges};
    auto clique = find_mono_clique(col, 3, CliqueStrategy::exact);
    REQUIRE(clique.has_value());
    CHECK(verify_clique(col, 3, *clique));
  }
}

TEST_CASE("greedy cliques are sound when they appear") {
  const CounterRng rng(Seed{17});
  int found = 0;
  for (int i = 0; i < 300; ++i) {
    EdgeColouring col = make_edge_colouring(8, 3, [&](int x, int y) {
      return static_cast<int>(rng.below(static_cast<std::uint64_t>(i * 64 + x * 8 + y), 3));
    });
    auto clique = find_mono_clique(col, 3, CliqueStrategy::greedy);
    if (clique) {
      ++found;
      CHECK(verify_clique(col, 3, *clique));
    }
    auto exact = find_mono_clique(col, 3, CliqueStrategy::exact);
    if (clique) CHECK(exact.has_value()); // greedy hits imply exact hits
    if (exact) CHECK(verify_clique(col, 3, *exact));
  }
  CHECK(found > 0);
}

TEST_CASE("oversized or trivial clique requests") {
  const EdgeColouring all0 = make_edge_colouring(3, 2, [](int, int) { return 0; });
  CHECK_FALSE(find_mono_clique(all0, 4, CliqueStrategy::exact).has_value());
  auto one = find_mono_clique(all0, 1, CliqueStrategy::exact);
  REQUIRE(one.has_value());
  CHECK(one->vertices.size() == 1);
}

TEST_CASE("the 2-colour triangle threshold is 6") {
  const RamseyNumberResult res = classical_ramsey_exact(2, 3, 6);
  CHECK(res.kind == RamseyNumberResult::Kind::value);
  CHECK(res.value == 6);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness_n == 5);
  CHECK_FALSE(find_mono_clique(*res.witness, 3, CliqueStrategy::exact).has_value());
}

TEST_CASE("caps and budgets are reported, not hidden") {
  const RamseyNumberResult capped = classical_ramsey_exact(2, 3, 4);
  CHECK(capped.kind == RamseyNumberResult::Kind::above_cap);
  CHECK(capped.witness_n == 4);
  REQUIRE(capped.witness.has_value());
  CHECK_FALSE(find_mono_clique(*capped.witness, 3, CliqueStrategy::exact).has_value());

  const RamseyNumberResult starved = classical_ramsey_exact(2, 4, 18, 10);
  CHECK(starved.kind == RamseyNumberResult::Kind::budget_exhausted);
}
