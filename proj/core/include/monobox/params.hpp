#pragma once

/*
 * Closed-form size parameters shared by the consistency, extraction, and
 * pipeline layers, plus saturating integer helpers.
 *
 * Every integer formula saturates at UINT64_MAX instead of overflowing;
 * callers treat a saturated value as "larger than any runnable cap".  The
 * density helpers return doubles clamped into (0, 1/2] from below so that
 * threshold comparisons stay well defined even when the exact expression
 * underflows.
 */

#include <cstdint>

namespace monobox {

inline constexpr std::uint64_t kSaturated = ~static_cast<std::uint64_t>(0);

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp);

// C(n, k), saturating.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k);

// f(d) = 2^{d-1} * d!, the consistency threshold exponent.
std::uint64_t threshold_f(int d);

// Slice bounds g(d) for the dense-extraction recursion.  The colouring form
// is (12+2r)^{d-1}; it depends on the colour count even though only d varies
// in its name, so it is keyed by both.
std::uint64_t slice_g_colouring(int d, int r);
std::uint64_t slice_g_array(int d); // 2 * 15^{d-1}

// Master exponents C_d for the end-to-end pipelines.
std::uint64_t master_c_colouring(int d, int r); // 3d*g(d-1) + f(d) + 1
std::uint64_t master_c_array(int d);            // 4d*g(d-1) + f(d)

// Intermediate consistent-box side t and final-coordinate restriction u.
std::uint64_t tower_side_colouring(int d, int r, int n); // r^{3*g(d-1)*r*n^d}
std::uint64_t tower_side_array(int d, int n);            // n^{3*g(d-1)*n^{d-1}}
std::uint64_t restriction_colouring(int r, int n);       // r^{r*n}
std::uint64_t restriction_array(int n);                  // n^2

// Pigeonhole densities, evaluated from the definitions on the values that
// were actually used (callers pass the possibly capped restriction size).
double density_colouring(int r, std::uint64_t u, int n); // 1/(r*u^n)
double density_array(std::uint64_t u, int n);            // 1/(2*C(u,n))

// Recursion density for dense extraction: (eps/3)*eps^{9k}*r^{-rk^2-1}.
double recursion_density(double eps, int k, int r);

} // namespace monobox
