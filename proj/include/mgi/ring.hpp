#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mgi/error.hpp"

namespace mgi {

using rational = boost::multiprecision::cpp_rational;

enum class ring_kind { prime_field, modular_ring, rationals };

// Commutative unital coefficient ring: GF(p), Z/m, or Q. A value type small
// enough to copy freely; the modulus is runtime data.
struct RingSpec {
  ring_kind kind = ring_kind::prime_field;
  std::uint32_t modulus = 2;  // ignored for rationals

  bool finite() const { return kind != ring_kind::rationals; }
  bool field() const { return kind != ring_kind::modular_ring; }
  // Characteristic: p for GF(p), m for Z/m, 0 for Q.
  std::uint64_t characteristic() const {
    return finite() ? modulus : 0;
  }
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

RingSpec make_ring(ring_kind kind, std::uint32_t modulus = 0);
RingSpec parse_ring(const std::string& s);  // "gf:5" | "zmod:6" | "q"
std::string ring_to_string(const RingSpec& spec);

// Canonical element: residue in [0, m) for finite rings, reduced fraction
// with positive denominator for Q. Equality is representation equality.
using RingElem = std::variant<std::uint64_t, rational>;

RingElem ring_zero(const RingSpec& spec);
RingElem ring_one(const RingSpec& spec);
// Canonicalize an integer (negatives allowed) into the ring.
RingElem ring_of(const RingSpec& spec, long long v);
RingElem ring_of(const RingSpec& spec, const rational& q);

bool is_zero(const RingSpec& spec, const RingElem& a);
bool is_one(const RingSpec& spec, const RingElem& a);

RingElem ring_add(const RingSpec& spec, const RingElem& a, const RingElem& b);
RingElem ring_sub(const RingSpec& spec, const RingElem& a, const RingElem& b);
RingElem ring_mul(const RingSpec& spec, const RingElem& a, const RingElem& b);
RingElem ring_neg(const RingSpec& spec, const RingElem& a);
RingElem ring_inv(const RingSpec& spec, const RingElem& a);  // throws NonUnit
RingElem ring_pow(const RingSpec& spec, const RingElem& a, std::uint64_t e);

bool is_unit(const RingSpec& spec, const RingElem& a);

// All elements / all units, canonically sorted. Throw InfiniteRing over Q.
std::vector<RingElem> ring_elements(const RingSpec& spec);
std::vector<RingElem> units(const RingSpec& spec);

// The subgroup {u^n : u a unit} of the unit group of a finite field, plus its
// index; for GF(q) the index is gcd(n, q-1).
struct PowerClasses {
  std::vector<RingElem> powers;  // sorted
  std::uint64_t index = 1;
};
PowerClasses nth_power_classes(const RingSpec& spec, std::uint64_t n);

// Residue value of a finite-ring element (asserts the variant alternative).
std::uint64_t residue(const RingElem& a);

std::string elem_to_string(const RingSpec& spec, const RingElem& a);
// Accepts an optionally signed integer or "p/q" (Q only).
RingElem elem_from_string(const RingSpec& spec, const std::string& s);

std::size_t elem_hash(const RingElem& a);

bool is_prime(std::uint64_t m);

}  // namespace mgi
