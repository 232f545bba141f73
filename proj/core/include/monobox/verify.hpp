#pragma once

/*
 * Certificate verifiers and the canonical pattern encoding.
 *
 * Verifiers are the ground truth for every search routine in this library:
 * they check certificates directly against the definitions, sharing no code
 * with the searches.  Malformed certificates (out-of-bounds sub-boxes, bad
 * colours, non-permutations) raise exceptions; a well-formed certificate
 * that fails its condition returns false.
 *
 * canonical_pattern encodes the restriction of a host object to a sub-box
 * over subbox-relative positions, so two restrictions get equal encodings
 * exactly when they have identical colour patterns (resp. order patterns).
 * Host vertex identities are deliberately not part of the encoding; callers
 * that pigeonhole on (pattern, vertex set) track the sets separately.
 */

#include "monobox/model.hpp"

namespace monobox {

// True iff every direction-i edge of the sub-box has colour
// direction_colours[i].  Requires a uniform sub-box.
bool verify_mono_box(const BoxColouring& host, const DirectionColourCertificate& cert);

// True iff every 1-dimensional fibre of the sub-box in direction i is
// strictly monotone with sign signs[i].
bool verify_monotone(const NumericArray& host, const MonotoneCertificate& cert);

// True iff for all cells x, y of the sub-box, value(x) < value(y) exactly
// when (signs[perm[i]] * x_rel[perm[i]])_i lexicographically precedes the
// same vector for y.
bool verify_lex_monotone(const NumericArray& host, const LexMonotoneCertificate& cert);

// Canonical encoding of the restriction of `host` to `box`.
std::string canonical_pattern(const BoxColouring& host, const SubBox& box);
std::string canonical_pattern(const NumericArray& host, const SubBox& box);

} // namespace monobox
