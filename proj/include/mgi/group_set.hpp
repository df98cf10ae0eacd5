#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mgi/matrix.hpp"

namespace mgi {

using bigint = boost::multiprecision::cpp_int;

// The named subgroup families of GL_n. K is the subgroup of T with last
// diagonal entry 1 (the semidirect product of UT with the first n-1 diagonal
// one-parameter subgroups).
enum class group_kind { GL, SL, T, UT, D, scalar, K };

std::string group_kind_name(group_kind k);

namespace detail {

// Fixed-capacity matrix of residues mod a small modulus: the fast kernel for
// enumeration and exhaustive searches. 0-based indices, row-major.
struct FinMat {
  std::uint32_t n = 0;
  std::uint32_t mod = 0;
  std::uint32_t e[25] = {};

  static FinMat ident(std::uint32_t n, std::uint32_t mod);
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return e[i * n + j]; }
  void set(std::uint32_t i, std::uint32_t j, std::uint32_t v) { e[i * n + j] = v; }

  bool is_identity() const;
  std::uint64_t key() const;  // packed base-mod integer, row-major digits
  static FinMat from_key(std::uint64_t key, std::uint32_t n, std::uint32_t mod);

  friend FinMat operator*(const FinMat& a, const FinMat& b);
  friend bool operator==(const FinMat& a, const FinMat& b);
};

FinMat to_finmat(const Matrix& m);                            // finite spec only
Matrix from_finmat(const RingSpec& spec, const FinMat& m);
std::uint32_t fin_det(const FinMat& m);
std::optional<FinMat> fin_inv(const FinMat& m);               // nullopt: det not a unit
FinMat fin_commutator(const FinMat& a, const FinMat& b);      // a,b invertible

}  // namespace detail

// True when every n x n matrix over the spec packs into a single uint64 key.
bool packable(const RingSpec& spec, std::uint32_t n);

// Exact order of the named subgroup of GL_n over the (finite) spec.
bigint predicted_order(const RingSpec& spec, std::uint32_t n, group_kind which);

// A finite set of matrices over one (spec, n). Storage is either a sorted
// vector of packed keys (preferred) or explicit matrices (fallback for
// shapes that do not fit a 64-bit key).
class GroupSet {
 public:
  GroupSet() = default;

  static GroupSet packed_set(RingSpec spec, std::uint32_t n,
                             std::vector<std::uint64_t> keys, bool closed,
                             std::vector<detail::FinMat> gens = {});
  static GroupSet explicit_set(RingSpec spec, std::uint32_t n,
                               std::vector<Matrix> mats, bool closed);

  const RingSpec& ring() const { return spec_; }
  std::uint32_t n() const { return n_; }
  std::size_t size() const;
  bool closed() const { return closed_; }
  bool packed() const { return packed_; }

  bool contains(const Matrix& m) const;
  bool contains_key(std::uint64_t key) const;  // packed storage only
  Matrix at(std::size_t idx) const;
  detail::FinMat fin_at(std::size_t idx) const;  // packed storage only

  const std::vector<std::uint64_t>& keys() const { return keys_; }
  const std::vector<Matrix>& explicit_elements() const { return mats_; }
  const std::vector<detail::FinMat>& generators() const { return gens_; }

  // Set equality regardless of storage form.
  bool same_elements(const GroupSet& other) const;

 private:
  RingSpec spec_;
  std::uint32_t n_ = 0;
  bool packed_ = true;
  bool closed_ = false;
  std::vector<std::uint64_t> keys_;        // sorted when packed
  std::vector<Matrix> mats_;               // explicit fallback
  std::vector<detail::FinMat> gens_;       // generators when produced by closure
};

// Predicate per the classical definitions; independent of any GroupSet.
bool membership(const Matrix& a, group_kind which);

// Breadth-first closure from the family's generators. Requires a finite spec
// and predicted order within `cap` (TooLarge otherwise, message carries the
// predicted order).
GroupSet enumerate_group(const RingSpec& spec, std::uint32_t n, group_kind which,
                         std::uint64_t cap = 200000);

// Brute-force center: elements commuting with the recorded generators (or
// with every element when no generators were recorded).
GroupSet center_of(const GroupSet& g);

// Closed-form center: scalars with unit entry (GL, T), scalars with nth power
// one (SL), the (1,n) one-parameter subgroup (UT), everything (D, scalar).
GroupSet analytic_center(const RingSpec& spec, std::uint32_t n, group_kind which);

// Coset representatives modulo the center, with the induced product.
struct QuotientGroup {
  GroupSet reps;
  GroupSet center;
  Matrix canon(const Matrix& x) const;   // canonical representative of xZ
  Matrix product(const Matrix& a, const Matrix& b) const;
};

QuotientGroup quotient_by_center(const GroupSet& g);

// Kernel of (h, z) -> h·z on SL_n x Z(GL_n): block-diagonal pairs
// (wI_n, w^{-1}I_n) over all w with w^n = 1, realized inside GL_{2n}.
GroupSet isogeny_kernel(const RingSpec& spec, std::uint32_t n);

}  // namespace mgi
