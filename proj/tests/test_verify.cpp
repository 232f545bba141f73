#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "monobox/generators.hpp"
#include "monobox/model.hpp"
#include "monobox/verify.hpp"

using namespace monobox;

namespace {

SubBox box_of(std::vector<std::vector<int>> axes) {
  SubBox b;
  b.axes = std::move(axes);
  return b;
}

} // namespace

TEST_CASE("verify_mono_box accepts exactly the claimed colours") {
  const BoxColouring col = gen_direction_colouring(2, 4, 2); // direction i edges get colour i
  DirectionColourCertificate cert{box_of({{0, 2}, {1, 3}}), {0, 1}};
  CHECK(verify_mono_box(col, cert));

  DirectionColourCertificate wrong{box_of({{0, 2}, {1, 3}}), {1, 1}};
  CHECK_FALSE(verify_mono_box(col, wrong));
}

TEST_CASE("verify_mono_box rejects malformed certificates by throwing") {
  const BoxColouring col = gen_direction_colouring(2, 4, 2);
  DirectionColourCertificate ragged{box_of({{0, 1, 2}, {1, 3}}), {0, 1}};
  CHECK_THROWS_AS((void)verify_mono_box(col, ragged), std::invalid_argument);

  DirectionColourCertificate misdim{box_of({{0, 2}, {1, 3}}), {0}};
  CHECK_THROWS_AS((void)verify_mono_box(col, misdim), std::invalid_argument);

  DirectionColourCertificate escape{box_of({{0, 4}, {1, 3}}), {0, 1}};
  CHECK_THROWS_AS((void)verify_mono_box(col, escape), std::out_of_range);
}

TEST_CASE("verify_monotone checks every fibre's sign") {
  const NumericArray arr({2, 2}, {1, 2, 3, 4}); // increasing along both axes
  CHECK(verify_monotone(arr, {box_of({{0, 1}, {0, 1}}), {1, 1}}));
  CHECK_FALSE(verify_monotone(arr, {box_of({{0, 1}, {0, 1}}), {-1, 1}}));

  // 2,1 / 4,3: rising along axis 0, falling along axis 1
  const NumericArray mixed({2, 2}, {2, 1, 4, 3});
  CHECK(verify_monotone(mixed, {box_of({{0, 1}, {0, 1}}), {1, -1}}));
  CHECK_FALSE(verify_monotone(mixed, {box_of({{0, 1}, {0, 1}}), {1, 1}}));

  // 1,4 / 3,2: axis-0 fibres disagree (1<3 but 4>2), so no sign fits
  const NumericArray split({2, 2}, {1, 4, 3, 2});
  CHECK_FALSE(verify_monotone(split, {box_of({{0, 1}, {0, 1}}), {1, 1}}));
  CHECK_FALSE(verify_monotone(split, {box_of({{0, 1}, {0, 1}}), {1, -1}}));
  CHECK_FALSE(verify_monotone(split, {box_of({{0, 1}, {0, 1}}), {-1, 1}}));
  CHECK_FALSE(verify_monotone(split, {box_of({{0, 1}, {0, 1}}), {-1, -1}}));

  CHECK_THROWS_AS((void)verify_monotone(arr, {box_of({{0, 1}, {0, 1}}), {0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)verify_monotone(arr, {box_of({{0, 1}, {0, 1}}), {1}}),
                  std::invalid_argument);
}

TEST_CASE("verify_lex_monotone matches value order against coordinate order") {
  const NumericArray arr({2, 2}, {1, 2, 3, 4}); // row-major sorted
  CHECK(verify_lex_monotone(arr, {box_of({{0, 1}, {0, 1}}), {0, 1}, {1, 1}}));
  // axis-1-major visiting order reads 1,3,2,4: not sorted
  CHECK_FALSE(verify_lex_monotone(arr, {box_of({{0, 1}, {0, 1}}), {1, 0}, {1, 1}}));

  const NumericArray rev({2, 2}, {4, 3, 2, 1});
  CHECK(verify_lex_monotone(rev, {box_of({{0, 1}, {0, 1}}), {0, 1}, {-1, -1}}));

  CHECK_THROWS_AS(
      (void)verify_lex_monotone(arr, {box_of({{0, 1}, {0, 1}}), {0, 0}, {1, 1}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)verify_lex_monotone(arr, {box_of({{0, 1}, {0, 1}}), {0, 1}, {1, 0}}),
      std::invalid_argument);
}

TEST_CASE("colouring patterns are position-independent for a uniform colouring") {
  const BoxColouring col = gen_direction_colouring(2, 5, 3);
  const std::string a = canonical_pattern(col, box_of({{0, 1}, {2, 3}}));
  const std::string b = canonical_pattern(col, box_of({{2, 4}, {0, 4}}));
  CHECK(a == b);
  CHECK(a.substr(0, 2) == "C;");
}

TEST_CASE("array patterns depend only on the order type") {
  const NumericArray small({2, 2}, {1, 2, 3, 4});
  const NumericArray scaled({2, 2}, {10, 25, 300, 4000});
  const NumericArray other({2, 2}, {2, 1, 3, 4});
  const SubBox full = SubBox::full(std::vector<int>{2, 2});
  CHECK(canonical_pattern(small, full) == canonical_pattern(scaled, full));
  CHECK(canonical_pattern(small, full) != canonical_pattern(other, full));
}
