#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "monobox/exact_oracle.hpp"
#include "monobox/generators.hpp"
#include "monobox/model.hpp"
#include "monobox/symmetry.hpp"

using namespace monobox;

// Every transform must preserve presence of its target structure; the
// exact-number enumeration quotients by these, so drift here would corrupt
// computed thresholds silently.

TEST_CASE("mono-box presence is invariant under colouring transforms") {
  const std::vector<int> rot{1, 2, 0};
  const std::vector<int> flip_axes{1, 0};
  for (int i = 0; i < 100; ++i) {
    const BoxColouring col = gen_random_colouring(2, 4, 3, Seed{11'000u + static_cast<std::uint64_t>(i)});
    const bool base = decide_R_instance(col, 2).certificate.has_value();
    CHECK(decide_R_instance(permute_colours(col, rot), 2).certificate.has_value() == base);
    CHECK(decide_R_instance(reverse_axis(col, 0), 2).certificate.has_value() == base);
    CHECK(decide_R_instance(reverse_axis(col, 1), 2).certificate.has_value() == base);
    CHECK(decide_R_instance(permute_axes(col, flip_axes), 2).certificate.has_value() == base);
  }
}

TEST_CASE("monotone presence is invariant under array transforms") {
  const std::vector<int> flip_axes{1, 0};
  for (int i = 0; i < 100; ++i) {
    const NumericArray arr = gen_random_array({4, 4}, Seed{12'000u + static_cast<std::uint64_t>(i)});
    const bool base = decide_M_instance(arr, 2).certificate.has_value();
    CHECK(decide_M_instance(reverse_axis(arr, 0), 2).certificate.has_value() == base);
    CHECK(decide_M_instance(reverse_axis(arr, 1), 2).certificate.has_value() == base);
    CHECK(decide_M_instance(permute_axes(arr, flip_axes), 2).certificate.has_value() == base);
    CHECK(decide_M_instance(reverse_values(arr), 2).certificate.has_value() == base);
  }
}

TEST_CASE("lex-monotone presence is invariant under array transforms") {
  const std::vector<int> flip_axes{1, 0};
  for (int i = 0; i < 100; ++i) {
    const NumericArray arr = gen_random_array({3, 3}, Seed{13'000u + static_cast<std::uint64_t>(i)});
    const bool base = decide_L_instance(arr, 2).certificate.has_value();
    CHECK(decide_L_instance(reverse_axis(arr, 0), 2).certificate.has_value() == base);
    CHECK(decide_L_instance(reverse_axis(arr, 1), 2).certificate.has_value() == base);
    CHECK(decide_L_instance(permute_axes(arr, flip_axes), 2).certificate.has_value() == base);
    CHECK(decide_L_instance(reverse_values(arr), 2).certificate.has_value() == base);
  }
}

TEST_CASE("transforms compose with uneven sides") {
  const NumericArray arr = gen_random_array({2, 3, 4}, Seed{99});
  const std::vector<int> perm{2, 0, 1}; // result axis j carries input axis perm[j]
  const NumericArray moved = permute_axes(arr, perm);
  CHECK(moved.side(0) == arr.side(2));
  CHECK(moved.side(1) == arr.side(0));
  CHECK(moved.side(2) == arr.side(1));
  const bool base = decide_M_instance(arr, 2).certificate.has_value();
  CHECK(decide_M_instance(moved, 2).certificate.has_value() == base);
}

TEST_CASE("colour permutation leaves structure intact") {
  const BoxColouring col = gen_direction_colouring(2, 3, 2);
  const std::vector<int> swap01{1, 0};
  const BoxColouring swapped = permute_colours(col, swap01);
  const int off0[1]{0};
  CHECK(swapped.colour(0, off0, 0, 1) == 1);
  CHECK(swapped.colour(1, off0, 0, 1) == 0);
  CHECK(permute_colours(swapped, swap01) == col);
}
