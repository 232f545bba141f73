#include "monobox/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace monobox {

BoxColouring gen_random_colouring(int dims, int side, int colours, Seed seed) {
  BoxColouring blank(dims, side, colours); // validates parameters and sizing
  CounterRng rng(seed);
  std::vector<std::uint8_t> payload(static_cast<std::size_t>(blank.edge_count()));
  for (std::size_t i = 0; i < payload.size(); ++i)
    payload[i] = static_cast<std::uint8_t>(rng.below(i, static_cast<std::uint32_t>(colours)));
  return BoxColouring(dims, side, colours, std::move(payload));
}

BoxColouring gen_direction_colouring(int dims, int side, int colours) {
  return make_colouring(dims, side, colours,
                        [&](int dir, std::span<const int>, int, int) { return dir % colours; });
}

NumericArray gen_random_array(std::vector<int> sides, Seed seed) {
  std::int64_t cells = 1;
  for (int s : sides) {
    if (s < 1) throw std::invalid_argument("sides must be >= 1");
    cells *= s;
  }
  CounterRng rng(seed);
  std::vector<double> values(static_cast<std::size_t>(cells));
  std::iota(values.begin(), values.end(), 1.0);
  for (std::int64_t i = cells - 1; i > 0; --i) {
    auto j = rng.below(static_cast<std::uint64_t>(i), static_cast<std::uint32_t>(i + 1));
    std::swap(values[static_cast<std::size_t>(i)], values[j]);
  }
  return NumericArray(std::move(sides), std::move(values));
}

NumericArray perturb_to_injective(std::vector<int> sides, const std::vector<double>& raw) {
  std::int64_t cells = 1;
  for (int s : sides) {
    if (s < 1) throw std::invalid_argument("sides must be >= 1");
    cells *= s;
  }
  if (static_cast<std::int64_t>(raw.size()) != cells)
    throw std::invalid_argument("raw size mismatch");
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  std::vector<double> values(raw.size());
  for (std::size_t r = 0; r < order.size(); ++r) values[order[r]] = static_cast<double>(r + 1);
  return NumericArray(std::move(sides), std::move(values));
}

} // namespace monobox
