#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mgi/cohom.hpp"
#include "mgi/matrix.hpp"
#include "mgi/report.hpp"
#include "mgi/ring.hpp"

namespace mgi {

// (z, b): an element of the deformed torus D_n(R, f, Z) = Z x B_n(R) with
// the f-twisted product. z indexes Z; b is an (n-1)-tuple of units.
struct DeformedTorusElem {
  std::uint32_t z = 0;
  std::vector<RingElem> b;
};

// (u, t): an element of T_n(R, f, Z) = UT_n(R) x| D_n(R, f, Z).
struct DeformedTnElem {
  Matrix u;
  DeformedTorusElem t;
};

// Deformation context over a finite prime field: the ring, the size n, the
// finite abelian center Z, and a symmetric cocycle f on B_n(R) with values
// in Z. The cocycle domain is (n-1) copies of Z/(q-1) addressing the unit
// group through discrete logarithms of the least primitive root, so factor
// residue k stands for the unit g^k.
struct DeformContext {
  RingSpec ring;
  std::uint32_t n = 2;
  FinAbGroup z;
  Cocycle f;
  std::vector<RingElem> unit_powers;  // unit_powers[k] = g^k
  std::vector<std::uint32_t> dlog;    // residue -> exponent (units only)

  std::uint32_t unit_index(const RingElem& u) const;
  const RingElem& unit_at(std::uint32_t k) const;
  std::uint32_t b_index(const std::vector<RingElem>& b) const;
  std::vector<RingElem> b_tuple(std::uint32_t idx) const;
};

// Validates the shape (field ring, n >= 2, f symmetric and a genuine cocycle
// on the matching domain/codomain — InvalidCocycle otherwise; NotField /
// InfiniteRing for unsuitable rings). The overload without f uses the
// trivial cocycle.
DeformContext make_deform_context(const RingSpec& spec, std::uint32_t n,
                                  FinAbGroup z, Cocycle f);
DeformContext make_deform_context(const RingSpec& spec, std::uint32_t n,
                                  FinAbGroup z);

DeformedTorusElem torus_identity(const DeformContext& ctx);

// (z1 z2 f(b1,b2), b1 b2); commutative because f is symmetric.
DeformedTorusElem torus_product(const DeformContext& ctx,
                                const DeformedTorusElem& x,
                                const DeformedTorusElem& y);

DeformedTnElem tn_identity(const DeformContext& ctx);

// (u1 u2^phi(b1), (z1 z2 f(b1,b2), b1 b2)), with phi(b) acting as
// conjugation u -> D u D^-1 by D = diag(b, 1) — the section of B_n that
// makes (u,(z,b)) -> u diag(b,1) zI the collapse map at trivial f.
DeformedTnElem tn_product(const DeformContext& ctx, const DeformedTnElem& x,
                          const DeformedTnElem& y);
DeformedTnElem tn_inverse(const DeformContext& ctx, const DeformedTnElem& x);

// Canonical dedup key.
std::string tn_key(const DeformedTnElem& x);

// The whole finite instance as an indexed multiplication table with group
// axioms verified on construction (identity, inverses, associativity —
// exhaustive up to 512 elements, dense sampling above). Element i carries
// label (u rank, torus rank); elements[i] is the same element explicitly.
struct TnInstance {
  std::vector<DeformedTnElem> elements;
  TableGroup table;
  std::uint32_t ut_count = 0;                   // unitriangular matrix count
  std::map<std::string, std::uint32_t> u_ranks;  // matrix key -> u rank

  std::uint32_t index_of(const DeformContext& ctx,
                         const DeformedTnElem& x) const;
};

TnInstance tn_instance(const DeformContext& ctx, std::uint64_t cap = 2048);

// Brute-force center over the instance table; verified to equal
// {(I, (z, 1)) : z in Z} (SpecMismatch otherwise — that equality is the
// structural claim this operation certifies).
std::vector<DeformedTnElem> tn_center(const DeformContext& ctx,
                                      std::uint64_t cap = 2048);

// Commutator closure over the instance table.
std::vector<DeformedTnElem> tn_derived_subgroup(const DeformContext& ctx,
                                                std::uint64_t cap = 2048);

// Explicit isomorphism T_n(R, 1, R^x) -> T_n(R) at trivial f:
// (u, (z, b)) -> u * diag(b, 1) * g^z I, verified bijective (against the
// enumerated upper-triangular group) and multiplicative by exhaustion.
// NotTrivialCocycle when f is not trivial; SpecMismatch unless Z is one
// cyclic factor of order q-1.
struct CollapseIso {
  std::vector<Matrix> image;  // aligned with tn_instance element order
  Report report;
};

CollapseIso trivial_collapse_iso(const DeformContext& ctx,
                                 std::uint64_t cap = 2048);

// Compares two deformations over one (ring, n, Z): cocycle cohomology,
// instance order multisets, centers, derived subgroups, and the
// derived-quotient order multiset. The verdict is "extension-equivalent"
// when the cocycles are cohomologous, "group-nonisomorphic via invariant"
// when some computed invariant separates the instances, and
// "extension-inequivalent" when the cocycles differ but no computed
// invariant separates.
struct DeformVerdict {
  std::string verdict;
  Report evidence;
};

DeformVerdict deformation_distinguisher(const DeformContext& a,
                                        const DeformContext& b,
                                        std::uint64_t cap = 2048);

// ---------------------------------------------------------------------------
// The GL deformation product law. The context is synthetic and finite: B and
// A/A^n are explicit finite abelian groups, the twisting cocycle h maps
// A/A^n pairs into B, the carrier subgroup H_1 consists of matrices whose
// determinant is an n-th power of a unit, the action of a coset a is
// conjugation by a designated matrix, and p supplies the correction factors
// (diagonal matrices diag(x, y, ..., y) with x/y an n-th power).
// ---------------------------------------------------------------------------

// (b, c, a): b central, c in H_1, a the Sigma_1-coset datum in A/A^n.
struct GlDeformElem {
  std::uint32_t b = 0;
  Matrix c;
  std::uint32_t a = 0;
};

struct GlDeformContext {
  RingSpec ring;
  std::uint32_t n = 2;
  FinAbGroup b_group;              // B
  FinAbGroup quotient;             // A/A^n
  Cocycle h;                       // quotient x quotient -> b_group
  std::vector<Matrix> action;      // |quotient| conjugators; action[0] scalar
  std::vector<Matrix> p;           // |quotient|^2 values, row-major
  std::vector<std::uint64_t> npowers;  // residues of n-th powers of units
};

// Validates shapes, h's cocycle axioms and symmetry, p's normalization,
// symmetry and membership in the designated diagonal subgroup, the identity
// axiom, and associativity over the sample-generated element grid
// (exhaustive when small, densely sampled otherwise). Throws
// InconsistentContext when the supplied (h, p, action) fail any of it.
GlDeformContext make_gl_context(const RingSpec& spec, std::uint32_t n,
                                FinAbGroup b_group, FinAbGroup quotient,
                                Cocycle h, std::vector<Matrix> action,
                                std::vector<Matrix> p,
                                const std::vector<Matrix>& h1_samples);

GlDeformElem gl_identity(const GlDeformContext& ctx);

// (b1 b2 h(a1,a2), c1 c2^{a1} p(a1,a2), a1 a2) with c^{a} the conjugation
// action(a) c action(a)^-1.
GlDeformElem gl_deform_product(const GlDeformContext& ctx,
                               const GlDeformElem& x, const GlDeformElem& y);

}  // namespace mgi
