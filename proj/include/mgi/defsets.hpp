#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgi/group_set.hpp"
#include "mgi/matrix.hpp"
#include "mgi/report.hpp"

namespace mgi {

// A subset of a host group produced by evaluating one of the definable-set
// formulas. `subgroup_verified` records a completed closure check (identity,
// products, inverses); width-graded constructions additionally report
// stability data.
struct SubgroupSet {
  RingSpec ring;
  std::uint32_t n = 0;
  std::string label;
  std::vector<Matrix> elements;
  bool subgroup_verified = false;
  bool stable = true;          // width-graded: one more step adds nothing
  std::uint32_t stable_width = 0;  // first width with no growth (0 when n/a)

  bool contains(const Matrix& m) const;
};

// Element-set equality between a formula output and reference sets.
bool same_set(const SubgroupSet& s, const GroupSet& g);
bool same_set(const SubgroupSet& s, const std::vector<Matrix>& mats);

// Wraps an enumerated group as a SubgroupSet (for use as an isolator target).
SubgroupSet as_subgroup(const GroupSet& g, std::string label);

// {x in host : xa = ax for every a in s}.
SubgroupSet centralizer(const GroupSet& host, const std::vector<Matrix>& s);

// Products of at most `width` commutators [a,b] with a, b in the host. The
// result records whether one further width step adds nothing (`stable`) and
// the first width at which that happened (`stable_width`).
SubgroupSet derived_subgroup(const GroupSet& host, std::uint32_t width);

// {x in host : [x, d_i(-1)] = 1 for i = 1..n}; must equal the diagonal slice
// of the host (SpecMismatch otherwise). Finite field scalars with
// characteristic != 2 only (CharTwo when -1 = 1).
SubgroupSet dn_formula(const GroupSet& host);

// {x in host : [x, d_i(-1)] = 1 for i = 1..n-1} on a K_n realization; must
// equal the diagonal slice with last entry 1, and the host must have trivial
// center (both SpecMismatch otherwise).
SubgroupSet bn_formula(const GroupSet& host);

// {x in B_n : [x, t_ij(1)] = 1 for all i < j with i != k, j != k}; must equal
// d_k(F^x). Requires 1 <= k <= n-1 (BadIndex).
SubgroupSet dk_formula(const GroupSet& host, std::uint32_t k);

// {x : x t_1j(1) x^-1 in T_1j, x t_i1(1) x^-1 in T_i1, and x fixes t_ij(1)
// for i, j != 1}, evaluated over the given domain.
SubgroupSet delta1_formula(const GroupSet& domain);

enum class isolator_mode { fixed_exponent, any_exponent };

// fixed_exponent: {g in host : g^n in m} with n the matrix dimension;
// any_exponent: {g : some positive power of g lies in m}. Requires m normal
// in the host (NotNormal). `subgroup_verified` reflects an attempted closure
// check; the fixed-exponent reading need not produce a subgroup in general.
SubgroupSet isolator(const GroupSet& host, const SubgroupSet& m, isolator_mode mode);

// Index computations for the sequence G >= Is(G'Z) >= Is(G')Z >= Is(G') >= G'
// over GL_n(F): determinant-side coset counting always, plus literal
// matrix-side counts when the host order fits under `cap`.
Report a4_sequence_report(const RingSpec& spec, std::uint32_t n,
                          std::uint64_t cap = 200000);

// Exhaustive check of d_1(a^n) = aI * prod_{i=2..n} d_1(a) d_i(a^-1) over all
// units a.
Report d1_power_identity(const RingSpec& spec, std::uint32_t n);

}  // namespace mgi
