#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgi/report.hpp"

namespace mgi {

// Finite abelian group presented as a product of cyclic groups Z/m_1 x ... x
// Z/m_k. Elements are residue tuples, addressed by a mixed-radix index with
// coordinate 0 least significant; index 0 is the identity. The group is
// written multiplicatively in reports but additively internally.
struct FinAbGroup {
  std::vector<std::uint32_t> orders;  // each >= 1

  std::uint64_t size() const;
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg(std::uint32_t x) const;
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const;
  std::vector<std::uint32_t> tuple(std::uint32_t idx) const;
  std::uint32_t index(const std::vector<std::uint32_t>& t) const;
  std::uint64_t element_order(std::uint32_t x) const;
  std::string describe() const;  // "Z/2 x Z/3"; "1" for the trivial group

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

// A total table B x B -> A of codomain indices. Construction validates only
// the shape (sizes, entry ranges, |B| and |A| at most 64); the cocycle axioms
// themselves are judged by cocycle_check so that invalid tables can be
// represented and reported.
struct Cocycle {
  FinAbGroup domain;    // B
  FinAbGroup codomain;  // A
  std::vector<std::uint32_t> table;  // |B|^2 entries, row-major in (x, y)
  bool symmetric_flag = true;

  std::uint32_t at(std::uint32_t x, std::uint32_t y) const;
};

Cocycle make_cocycle(FinAbGroup b, FinAbGroup a, std::vector<std::uint32_t> table,
                     bool symmetric = true);
Cocycle trivial_cocycle(const FinAbGroup& b, const FinAbGroup& a);

// Pointwise product / inverse in Z^2(B, A); shapes must agree.
Cocycle cocycle_product(const Cocycle& f, const Cocycle& g);
Cocycle cocycle_inverse(const Cocycle& f);

// Verifies normalization f(1,x) = f(x,1) = 1, the cocycle identity
// f(xy,z) f(x,y) = f(x,yz) f(y,z) over all triples, and symmetry when
// flagged. Violations are tallied, with the first offending triple named.
Report cocycle_check(const Cocycle& f);

// g(x,y) = psi(xy) psi(x)^-1 psi(y)^-1 for a total psi: B -> A with
// psi(1) = 1 (InvalidCocycle otherwise). Always a symmetric cocycle.
Cocycle coboundary_from(const FinAbGroup& b, const FinAbGroup& a,
                        const std::vector<std::uint32_t>& psi);

// Searches for a witness psi with f = coboundary_from(psi). Returns the
// witness, or nullopt when none exists (in particular for tables that are
// not symmetric cocycles at all, since every coboundary over an abelian
// domain is one). The search picks a section of the extension group
// generator by generator, so it stays linear in |B| + |A| per generator.
std::optional<std::vector<std::uint32_t>> is_coboundary(const Cocycle& f);

struct CohomologousResult {
  bool equivalent = false;
  std::vector<std::uint32_t> psi;  // witness with f1 = f2 * d(psi) when equivalent
};

// Tests f1 ~ f2 by applying is_coboundary to f1 * f2^-1.
CohomologousResult cohomologous(const Cocycle& f1, const Cocycle& f2);

// Multiplication table of the central extension E(f) = B x A with
// (b1,a1)(b2,a2) = (b1 b2, a1 a2 f(b1,b2)). Group axioms are verified on
// construction (InvalidCocycle when f fails its axioms; TooLarge above 1024
// elements).
struct TableGroup {
  std::uint32_t size = 0;
  std::uint32_t identity = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> labels;  // (b, a)
  std::vector<std::uint32_t> mult;  // size x size, row-major

  std::uint32_t product(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inverse_of(std::uint32_t x) const;
  std::uint64_t element_order(std::uint32_t x) const;
  std::vector<std::uint64_t> order_multiset() const;  // sorted
  bool abelian() const;
};

TableGroup extension_group(const Cocycle& f);

// Representatives of Ext(B, A) = S^2(B,A) / (S^2(B,A) n B^2(B,A)) by
// explicit enumeration of normalized symmetric cocycles and coset
// decomposition by coboundaries. The class count is cross-checked against
// the independent arithmetic oracle prod_{i,j} gcd(m_i, n_j)
// (SpecMismatch on disagreement). TooLarge when the enumeration would
// exceed `cap` candidates.
struct ExtClasses {
  std::vector<Cocycle> reps;  // lexicographically least table per class
  std::uint64_t order = 0;
};

ExtClasses ext_group(const FinAbGroup& b, const FinAbGroup& a,
                     std::uint64_t cap = 1000000);

// A direct decomposition of the domain by coordinate indices: the torsion
// block T and its complement. BadSplit unless the two lists partition the
// coordinate set.
struct CotSplit {
  std::vector<std::uint32_t> torsion_coords;
  std::vector<std::uint32_t> complement_coords;
};

struct CotResult {
  bool cot = false;                      // torsion restriction is a coboundary
  Cocycle torsion_part;                  // f restricted to T x T
  Cocycle complement_part;               // f restricted to the complement
  bool decomposition_verified = false;   // f ~ lift(f_T) * lift(f_C)
  std::vector<std::uint32_t> psi;        // witness for the torsion part
};

// Coboundary-on-torsion test: restricts f to the torsion block and applies
// is_coboundary; also verifies the two-block cocycle decomposition. With a
// finite codomain the torsion-free codomain components of the four-way
// split are degenerate, so the two returned parts carry the whole content.
CotResult cot_check(const Cocycle& f, const CotSplit& split);

struct BnFactorization {
  std::vector<Cocycle> components;       // restriction to each cyclic factor
  bool product_cohomologous = false;     // f ~ lifted product of components
  Cocycle diagonal_restriction;          // f along the diagonal embedding
  Cocycle fn;                            // last factor from the diag relation
  bool fn_matches_inverse = false;       // fn ~ (diagonal restriction)^-1
};

// Factorizes a symmetric cocycle on a power of one cyclic group into
// per-factor components, and re-derives the companion cocycle of the scalar
// relation diag(a) diag(b) = diag(ab) f(a,b) fn(a,b), checking fn ~ f^-1.
// SpecMismatch unless all domain factors have one common order.
BnFactorization bn_factorize(const Cocycle& f);

}  // namespace mgi
