#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "monobox/consistency.hpp"
#include "monobox/exact_oracle.hpp"
#include "monobox/generators.hpp"
#include "monobox/model.hpp"

using namespace monobox;

TEST_CASE("random colourings are seed-deterministic") {
  const BoxColouring a = gen_random_colouring(2, 5, 3, Seed{11});
  const BoxColouring b = gen_random_colouring(2, 5, 3, Seed{11});
  const BoxColouring c = gen_random_colouring(2, 5, 3, Seed{12});
  CHECK(a.payload() == b.payload());
  CHECK(a.payload() != c.payload());
  for (std::uint8_t v : a.payload()) CHECK(v < 3);
}

TEST_CASE("direction colouring colours every edge by its direction") {
  const BoxColouring col = gen_direction_colouring(3, 4, 2);
  for (int dir = 0; dir < 3; ++dir) {
    const int off[2] = {1, 2};
    CHECK(col.colour(dir, off, 0, 3) == dir % 2);
  }
  CHECK(is_consistent(col, SubBox::full(std::vector<int>{4, 4, 4})));
}

TEST_CASE("random arrays are rank permutations") {
  const NumericArray arr = gen_random_array({3, 4}, Seed{5});
  std::vector<double> vals = arr.values();
  std::sort(vals.begin(), vals.end());
  for (int i = 0; i < 12; ++i) CHECK(vals[static_cast<std::size_t>(i)] == i + 1);

  const NumericArray again = gen_random_array({3, 4}, Seed{5});
  CHECK(arr.values() == again.values());
  const NumericArray other = gen_random_array({3, 4}, Seed{6});
  CHECK(arr.values() != other.values());
}

TEST_CASE("rank normalization preserves strict order and breaks ties early") {
  const std::vector<double> raw{2.5, 2.5, -1.0, 7.0};
  const NumericArray arr = perturb_to_injective({4}, raw);
  const auto& v = arr.values();
  // -1 < first 2.5 < second 2.5 < 7, ties toward the earlier cell
  CHECK(v == std::vector<double>{2, 3, 1, 4});
}

TEST_CASE("rank normalization keeps multidimensional layout") {
  const std::vector<double> raw{0.5, 0.5, 0.25, 0.75};
  const NumericArray arr = perturb_to_injective({2, 2}, raw);
  CHECK(arr.sides() == std::vector<int>{2, 2});
  CHECK(arr.values() == std::vector<double>{2, 3, 1, 4});
}

TEST_CASE("a frozen seed whose 3x3 draw avoids every mono 2x2 box") {
  // Found by sweeping seeds upward from zero; 11 is the first avoider.  At
  // side 6 no avoider exists among the first 10000 seeds, so small-side
  // fixtures are the only reproducible "search misses" a seed can pin.
  const BoxColouring avoid = gen_random_colouring(2, 3, 2, Seed{11});
  CHECK_FALSE(decide_R_instance(avoid, 2).certificate.has_value());

  const BoxColouring hit = gen_random_colouring(2, 3, 2, Seed{0});
  CHECK(decide_R_instance(hit, 2).certificate.has_value());
}
