#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "monobox/model.hpp"

using namespace monobox;

TEST_CASE("pair indexing is a bijection") {
  const int n = 6;
  CHECK(pair_count(n) == 15);
  std::set<std::int64_t> seen;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const std::int64_t idx = pair_index(x, y, n);
      CHECK(idx >= 0);
      CHECK(idx < pair_count(n));
      seen.insert(idx);
    }
  CHECK(seen.size() == 15);
}

TEST_CASE("cell ids are row-major and round trip") {
  const std::vector<int> sides{2, 3, 4};
  for (std::int64_t id = 0; id < 24; ++id) {
    const std::vector<int> cell = cell_of_id(id, sides);
    CHECK(cell_id(cell, sides) == id);
  }
  // last axis fastest
  CHECK(cell_of_id(0, sides) == std::vector<int>{0, 0, 0});
  CHECK(cell_of_id(1, sides) == std::vector<int>{0, 0, 1});
  CHECK(cell_of_id(4, sides) == std::vector<int>{0, 1, 0});
  CHECK(cell_of_id(12, sides) == std::vector<int>{1, 0, 0});
}

TEST_CASE("next_combination walks lexicographically") {
  std::vector<int> c{0, 1, 2};
  const std::vector<std::vector<int>> expect{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3},
                                             {0, 2, 4}, {0, 3, 4}, {1, 2, 3}, {1, 2, 4},
                                             {1, 3, 4}, {2, 3, 4}};
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(c == expect[i]);
    const bool more = next_combination(c, 5);
    CHECK(more == (i + 1 < expect.size()));
  }

  std::vector<int> empty;
  CHECK_FALSE(next_combination(empty, 4));
}

TEST_CASE("colouring accessor matches its defining function") {
  const int d = 2, side = 3, r = 3;
  auto fn = [](int dir, std::span<const int> off, int x, int y) {
    int acc = dir * 7 + x * 3 + y;
    for (int v : off) acc += v * 11;
    return acc % 3;
  };
  const BoxColouring col = make_colouring(d, side, r, fn);
  CHECK(col.dims() == d);
  CHECK(col.side() == side);
  CHECK(col.colours() == r);
  CHECK(col.edge_count() == 2 * 3 * 3);
  for (int dir = 0; dir < d; ++dir)
    for (int o = 0; o < side; ++o)
      for (int x = 0; x < side; ++x)
        for (int y = x + 1; y < side; ++y) {
          const int off[1] = {o};
          CHECK(col.colour(dir, off, x, y) == fn(dir, off, x, y));
          // endpoint order is immaterial
          CHECK(col.colour(dir, off, y, x) == col.colour(dir, off, x, y));
        }
}

TEST_CASE("colour_between infers the direction") {
  const BoxColouring col = make_colouring(
      2, 3, 2, [](int dir, std::span<const int>, int, int) { return dir; });
  const int a[2] = {0, 1};
  const int b[2] = {2, 1};
  const int c[2] = {0, 2};
  CHECK(col.colour_between(a, b) == 0);
  CHECK(col.colour_between(a, c) == 1);
  CHECK_THROWS_AS((void)col.colour_between(a, a), std::invalid_argument);
  const int far[2] = {1, 2};
  CHECK_THROWS_AS((void)col.colour_between(a, far), std::invalid_argument);
}

TEST_CASE("colouring constructor validates") {
  CHECK_THROWS_AS(BoxColouring(0, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(BoxColouring(2, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(BoxColouring(2, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(BoxColouring(2, 3, 256), std::invalid_argument);
  std::vector<std::uint8_t> bad(18, 2); // colour id == colours
  CHECK_THROWS_AS(BoxColouring(2, 3, 2, bad), std::invalid_argument);
  std::vector<std::uint8_t> short_payload(17, 0);
  CHECK_THROWS_AS(BoxColouring(2, 3, 2, short_payload), std::invalid_argument);
}

TEST_CASE("numeric array is row-major and rejects ties") {
  std::vector<double> vals{1, 2, 3, 4, 5, 6};
  const NumericArray arr({2, 3}, vals);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      const int cell[2] = {i, j};
      CHECK(arr.value_at(cell) == vals[static_cast<std::size_t>(i * 3 + j)]);
    }
  CHECK_THROWS_AS(NumericArray({2, 2}, {1, 2, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(NumericArray({2, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("subbox shape queries and validation") {
  const std::vector<int> host{4, 5};
  SubBox box;
  box.axes = {{0, 2, 3}, {1, 4}};
  CHECK(box.dims() == 2);
  CHECK(box.sides() == std::vector<int>{3, 2});
  CHECK(box.cell_count() == 6);
  CHECK_FALSE(box.uniform());
  box.validate(host);

  const SubBox whole = SubBox::full(host);
  CHECK(whole.cell_count() == 20);
  CHECK(whole.axes[0] == std::vector<int>{0, 1, 2, 3});

  SubBox unsorted;
  unsorted.axes = {{2, 0}, {1}};
  CHECK_THROWS_AS(unsorted.validate(host), std::invalid_argument);

  SubBox escape;
  escape.axes = {{0, 4}, {1}};
  CHECK_THROWS_AS(escape.validate(host), std::out_of_range);

  SubBox empty_axis;
  empty_axis.axes = {{}, {1}};
  CHECK_THROWS_AS(empty_axis.validate(host), std::invalid_argument);

  const int rel[2] = {1, 0};
  CHECK(box.host_cell(rel) == std::vector<int>{2, 1});
}

TEST_CASE("for_each_cell covers the box row-major") {
  SubBox box;
  box.axes = {{1, 3}, {0, 2}};
  std::vector<std::vector<int>> hosts;
  for_each_cell(box, [&](std::span<const int> rel, std::span<const int> host) {
    CHECK(rel.size() == 2);
    hosts.emplace_back(host.begin(), host.end());
  });
  const std::vector<std::vector<int>> expect{{1, 0}, {1, 2}, {3, 0}, {3, 2}};
  CHECK(hosts == expect);
}

TEST_CASE("lex orders enumerate perms then sign masks") {
  const auto one = lex_orders(1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == std::pair<std::vector<int>, std::vector<int>>{{0}, {1}});
  CHECK(one[1] == std::pair<std::vector<int>, std::vector<int>>{{0}, {-1}});

  const auto two = lex_orders(2);
  REQUIRE(two.size() == 8);
  CHECK(two[0].first == std::vector<int>{0, 1});
  CHECK(two[0].second == std::vector<int>{1, 1});
  CHECK(two[1].second == std::vector<int>{-1, 1}); // masks count binary, bit 0 first
  CHECK(two[7].first == std::vector<int>{1, 0});
  CHECK(two[7].second == std::vector<int>{-1, -1});

  std::set<std::pair<std::vector<int>, std::vector<int>>> uniq(two.begin(), two.end());
  CHECK(uniq.size() == 8);
  CHECK(lex_orders(3).size() == 48);
}
