#pragma once

/*
 * Instance transforms that preserve existence of the target structures.
 * The exact-number search quotients its enumeration by these, so each one
 * carries its own invariance test; nothing here is quotiented on faith.
 */

#include <span>

#include "monobox/model.hpp"

namespace monobox {

// Relabel colours; perm must be a bijection on [colours].
BoxColouring permute_colours(const BoxColouring& col, std::span<const int> perm);

// Mirror one axis (index i becomes side-1-i along that axis).
BoxColouring reverse_axis(const BoxColouring& col, int axis);
NumericArray reverse_axis(const NumericArray& arr, int axis);

// Axis j of the result carries axis perm[j] of the input.  For arrays the
// sides move along, so unequal sides are allowed.
BoxColouring permute_axes(const BoxColouring& col, std::span<const int> perm);
NumericArray permute_axes(const NumericArray& arr, std::span<const int> perm);

// Negate all values, reversing the global order.
NumericArray reverse_values(const NumericArray& arr);

} // namespace monobox
