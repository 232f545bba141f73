#include "monobox/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace monobox {
namespace {

void check_positive(int v, const char* what) {
  if (v < 1) {
    throw std::invalid_argument(std::string(what) + " must be positive");
  }
}

// Smallest admissible density: keeps comparisons strict without ever
// reporting an exactly-zero threshold.
double floor_density(double x) {
  double lo = std::numeric_limits<double>::min();
  if (!(x > lo)) {
    return lo;
  }
  return x < 0.5 ? x : 0.5;
}

} // namespace

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  if (a > kSaturated / b) {
    return kSaturated;
  }
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  std::uint64_t sq = base;
  while (exp > 0) {
    if (exp & 1) {
      acc = sat_mul(acc, sq);
    }
    exp >>= 1;
    if (exp > 0) {
      sq = sat_mul(sq, sq);
    }
  }
  return acc;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  if (k > n - k) {
    k = n - k;
  }
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n-k+i) is divisible by i because acc holds C(n-k+i-1, i-1).
    std::uint64_t term = n - k + i;
    if (acc > kSaturated / term) {
      return kSaturated;
    }
    acc = acc * term / i;
  }
  return acc;
}

std::uint64_t threshold_f(int d) {
  check_positive(d, "dimension");
  std::uint64_t acc = sat_pow(2, static_cast<std::uint64_t>(d - 1));
  for (int i = 2; i <= d; ++i) {
    acc = sat_mul(acc, static_cast<std::uint64_t>(i));
  }
  return acc;
}

std::uint64_t slice_g_colouring(int d, int r) {
  check_positive(d, "dimension");
  check_positive(r, "colour count");
  return sat_pow(12 + 2 * static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(d - 1));
}

std::uint64_t slice_g_array(int d) {
  check_positive(d, "dimension");
  return sat_mul(2, sat_pow(15, static_cast<std::uint64_t>(d - 1)));
}

std::uint64_t master_c_colouring(int d, int r) {
  if (d < 2) {
    throw std::invalid_argument("master exponent needs dimension >= 2");
  }
  std::uint64_t gd = slice_g_colouring(d - 1, r);
  return sat_add(sat_add(sat_mul(3 * static_cast<std::uint64_t>(d), gd), threshold_f(d)), 1);
}

std::uint64_t master_c_array(int d) {
  if (d < 2) {
    throw std::invalid_argument("master exponent needs dimension >= 2");
  }
  std::uint64_t gd = slice_g_array(d - 1);
  return sat_add(sat_mul(4 * static_cast<std::uint64_t>(d), gd), threshold_f(d));
}

std::uint64_t tower_side_colouring(int d, int r, int n) {
  if (d < 2) {
    throw std::invalid_argument("tower side needs dimension >= 2");
  }
  check_positive(r, "colour count");
  check_positive(n, "target side");
  std::uint64_t e = sat_mul(sat_mul(3, slice_g_colouring(d - 1, r)),
                            sat_mul(static_cast<std::uint64_t>(r),
                                    sat_pow(static_cast<std::uint64_t>(n),
                                            static_cast<std::uint64_t>(d))));
  return sat_pow(static_cast<std::uint64_t>(r), e);
}

std::uint64_t tower_side_array(int d, int n) {
  if (d < 2) {
    throw std::invalid_argument("tower side needs dimension >= 2");
  }
  check_positive(n, "target side");
  std::uint64_t e = sat_mul(sat_mul(3, slice_g_array(d - 1)),
                            sat_pow(static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(d - 1)));
  return sat_pow(static_cast<std::uint64_t>(n), e);
}

std::uint64_t restriction_colouring(int r, int n) {
  check_positive(r, "colour count");
  check_positive(n, "target side");
  return sat_pow(static_cast<std::uint64_t>(r),
                 sat_mul(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(n)));
}

std::uint64_t restriction_array(int n) {
  check_positive(n, "target side");
  return sat_mul(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n));
}

double density_colouring(int r, std::uint64_t u, int n) {
  check_positive(r, "colour count");
  check_positive(n, "target side");
  if (u == 0) {
    throw std::invalid_argument("restriction size must be positive");
  }
  double denom = static_cast<double>(r) * std::pow(static_cast<double>(u), n);
  return floor_density(1.0 / denom);
}

double density_array(std::uint64_t u, int n) {
  check_positive(n, "target side");
  std::uint64_t c = binomial_capped(u, static_cast<std::uint64_t>(n));
  if (c == 0) {
    throw std::invalid_argument("restriction smaller than target side");
  }
  return floor_density(1.0 / (2.0 * static_cast<double>(c)));
}

double recursion_density(double eps, int k, int r) {
  check_positive(k, "target side");
  check_positive(r, "colour count");
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("density must lie in (0,1)");
  }
  // Evaluate in log space; the direct product underflows for small eps.
  double log_val = std::log(eps / 3.0) + 9.0 * k * std::log(eps) -
                   (static_cast<double>(r) * k * k + 1.0) * std::log(static_cast<double>(r));
  return floor_density(std::exp(log_val));
}

} // namespace monobox
