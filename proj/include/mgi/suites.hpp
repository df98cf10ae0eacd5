#pragma once

#include <cstdint>

#include "mgi/report.hpp"
#include "mgi/ring.hpp"

namespace mgi {

// Exhaustive check of the transvection relations and the two diagonal
// conjugation identities over every parameter choice in the (finite) spec.
Report steinberg_suite(const RingSpec& spec, std::uint32_t n);

// Decomposition round-trips: exhaustive over det-1 matrices for finite
// fields (within `cap`), seeded random invertible matrices over the
// rationals. NotField for non-field specs.
Report decompose_suite(const RingSpec& spec, std::uint32_t n,
                       std::uint64_t seed = 20250816,
                       std::uint64_t cap = 200000);

// Ring-in-group interpretations: the carrier isomorphism over every host
// kind, plus the group-to-interpreted-group map on seeded pairs and the
// field map on all element pairs.
Report interp_suite(const RingSpec& spec, std::uint32_t n,
                    std::uint64_t seed = 20250816);

// Definable-subgroup formulas against enumerated references: diagonal
// recovery in T (and GL when small enough), the reduced-torus recovery in
// K, the one-parameter diagonal slices, the conjugation-stabilizer set, and
// derived subgroups. Odd characteristic only (CharTwo otherwise).
Report definable_suite(const RingSpec& spec, std::uint32_t n,
                       std::uint64_t cap = 200000);

// The subgroup-sequence indices, the isogeny kernel size, and the diagonal
// power identity.
Report a4_suite(const RingSpec& spec, std::uint32_t n,
                std::uint64_t cap = 200000);

// Extension classes and coboundary certification: the gcd class-count
// grid, frozen extension-group shapes, the unit-group domain class count
// when enumerable, the carry cocycle's non-splitting, and seeded
// coboundary round-trips.
Report cohom_suite(const RingSpec& spec, std::uint32_t n,
                   std::uint64_t seed = 20250816);

// Deformed triangular instances: the trivial-cocycle collapse onto the
// enumerated triangular group, and (odd q) the carry-twisted instance's
// order, center, derived subgroup, and distinguisher verdict.
Report deform_suite(const RingSpec& spec, std::uint32_t n,
                    std::uint64_t cap = 2048);

}  // namespace mgi
