#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "monobox/dense_extraction.hpp"
#include "monobox/generators.hpp"
#include "monobox/model.hpp"
#include "monobox/verify.hpp"

using namespace monobox;

namespace {

std::vector<std::int64_t> all_cells(std::int64_t count) {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(count));
  std::iota(ids.begin(), ids.end(), std::int64_t{0});
  return ids;
}

bool cell_in(const std::vector<std::int64_t>& cells, std::int64_t id) {
  return std::binary_search(cells.begin(), cells.end(), id);
}

} // namespace

TEST_CASE("extraction finds a box in a fully dense consistent host") {
  const BoxColouring col = gen_direction_colouring(2, 6, 2);
  const auto cells = all_cells(36);
  ExtractionParams params;
  params.seed = Seed{400};
  const BoxExtraction out = extract_in_dense(col, cells, 2, params);
  REQUIRE(out.certificate.has_value());
  CHECK(verify_mono_box(col, *out.certificate));
  const std::vector<int> sides{6, 6};
  for_each_cell(out.certificate->subbox, [&](std::span<const int>, std::span<const int> host) {
    CHECK(cell_in(cells, cell_id(host, sides)));
  });
  CHECK(out.trace.stage == "complete");
}

TEST_CASE("certificate cells stay inside a half-density set") {
  const BoxColouring col = gen_direction_colouring(2, 8, 2);
  // S = cells whose id is even: density 1/2 along every fiber.
  std::vector<std::int64_t> cells;
  for (std::int64_t id = 0; id < 64; id += 2) cells.push_back(id);
  ExtractionParams params;
  params.seed = Seed{401};
  params.epsilon = 0.4;
  params.retries = 16;
  const BoxExtraction out = extract_in_dense(col, cells, 2, params);
  if (out.certificate) {
    CHECK(verify_mono_box(col, *out.certificate));
    const std::vector<int> sides{8, 8};
    for_each_cell(out.certificate->subbox, [&](std::span<const int>, std::span<const int> host) {
      CHECK(cell_in(cells, cell_id(host, sides)));
    });
  }
}

TEST_CASE("monotone extraction in a dense set") {
  std::vector<double> ramp(36);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  const NumericArray arr({6, 6}, ramp); // row-major sorted, consistent
  ExtractionParams params;
  params.seed = Seed{402};
  const ArrayExtraction out = extract_monotone_in_dense(arr, all_cells(36), 2, params);
  REQUIRE(out.certificate.has_value());
  CHECK(verify_monotone(arr, *out.certificate));
  CHECK(out.certificate->signs == std::vector<int>{1, 1});
}

TEST_CASE("one-dimensional hosts fall through to the clique search") {
  const BoxColouring col = gen_direction_colouring(1, 8, 2);
  ExtractionParams params;
  params.seed = Seed{403};
  const BoxExtraction out = extract_in_dense(col, all_cells(8), 3, params);
  REQUIRE(out.certificate.has_value());
  CHECK(verify_mono_box(col, *out.certificate));
}

TEST_CASE("k = 1 needs one member of S") {
  const BoxColouring col = gen_direction_colouring(2, 4, 2);
  ExtractionParams params;
  params.seed = Seed{404};
  const BoxExtraction out = extract_in_dense(col, {std::int64_t{7}}, 1, params);
  REQUIRE(out.certificate.has_value());
  const std::vector<int> sides{4, 4};
  for_each_cell(out.certificate->subbox, [&](std::span<const int>, std::span<const int> host) {
    CHECK(cell_id(host, sides) == 7);
  });
}

TEST_CASE("same seed, same trace") {
  const BoxColouring col = gen_direction_colouring(2, 6, 2);
  std::vector<std::int64_t> cells;
  for (std::int64_t id = 0; id < 36; ++id)
    if (id % 3 != 1) cells.push_back(id);
  ExtractionParams params;
  params.seed = Seed{405};
  params.epsilon = 0.3;
  const BoxExtraction a = extract_in_dense(col, cells, 2, params);
  const BoxExtraction b = extract_in_dense(col, cells, 2, params);
  CHECK(a.certificate.has_value() == b.certificate.has_value());
  CHECK(a.trace.stage == b.trace.stage);
  CHECK(a.trace.sample == b.trace.sample);
  CHECK(a.trace.dense_fibers == b.trace.dense_fibers);
  CHECK(a.trace.winning_set == b.trace.winning_set);
}

TEST_CASE("invalid inputs are rejected") {
  const BoxColouring col = gen_direction_colouring(2, 4, 2);
  ExtractionParams params;
  params.seed = Seed{406};

  // inconsistent host
  const BoxColouring bad = make_colouring(2, 4, 2, [](int dir, std::span<const int> off, int, int) {
    return dir == 0 ? off[0] % 2 : 0;
  });
  CHECK_THROWS_AS((void)extract_in_dense(bad, all_cells(16), 2, params), std::invalid_argument);

  // unsorted and out-of-range cell lists
  CHECK_THROWS_AS((void)extract_in_dense(col, {std::int64_t{3}, std::int64_t{1}}, 2, params),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)extract_in_dense(col, {std::int64_t{16}}, 2, params),
                  std::out_of_range);

  // k out of range and bad density
  CHECK_THROWS_AS((void)extract_in_dense(col, all_cells(16), 0, params), std::invalid_argument);
  ExtractionParams bad_eps = params;
  bad_eps.epsilon = 0.7;
  CHECK_THROWS_AS((void)extract_in_dense(col, all_cells(16), 2, bad_eps), std::invalid_argument);
}

TEST_CASE("pinned prefix drops the last axis and stays consistent") {
  const BoxColouring col = gen_direction_colouring(3, 4, 3);
  const BoxColouring prefix = pinned_prefix(col);
  CHECK(prefix.dims() == 2);
  CHECK(prefix.side() == 4);
  const int off0[1]{0};
  CHECK(prefix.colour(0, off0, 0, 1) == 0);
  CHECK(prefix.colour(1, off0, 0, 1) == 1);
  CHECK_THROWS_AS((void)pinned_prefix(gen_direction_colouring(1, 4, 2)), std::invalid_argument);

  std::vector<double> ramp(16);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  const NumericArray arr({4, 4}, ramp);
  const NumericArray ap = pinned_prefix(arr);
  CHECK(ap.dims() == 1);
  CHECK(ap.side(0) == 4);
  // last coordinate pinned at 0: first column
  CHECK(ap.values() == std::vector<double>{1, 5, 9, 13});
}
