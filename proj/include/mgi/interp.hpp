#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mgi/matrix.hpp"
#include "mgi/report.hpp"
#include "mgi/word.hpp"

namespace mgi {

// Which matrix group the interpretation lives in. The triangular variant
// draws multiplication witnesses from the enlarged sets scalar*T_ij*T_ik.
enum class host_kind : std::uint8_t { gl, sl, tri };

const char* host_kind_name(host_kind h);

// The ring R rebuilt inside a one-parameter subgroup T_ik of the host group:
// the carrier is {t_ik(a) : a in R}, addition is the group product, and
// multiplication routes through commutators with witnesses in T_ij and T_jk
// for the auxiliary index j.
struct InterpretedRing {
  RingSpec ring;
  std::uint32_t n = 0;
  host_kind host = host_kind::sl;
  std::uint32_t i = 1;  // carrier row
  std::uint32_t k = 0;  // carrier column
  std::uint32_t j = 0;  // auxiliary index; distinct from i and k
};

// Carrier defaults to (1, n) with the smallest free auxiliary index.
// Requires n >= 3 so an auxiliary index exists (BadIndices otherwise).
InterpretedRing make_interp(const RingSpec& spec, std::uint32_t n,
                            host_kind host = host_kind::sl);
InterpretedRing make_interp(const RingSpec& spec, std::uint32_t n, host_kind host,
                            std::uint32_t i, std::uint32_t k);
InterpretedRing make_interp(const RingSpec& spec, std::uint32_t n, host_kind host,
                            std::uint32_t i, std::uint32_t k, std::uint32_t j);

bool in_carrier(const InterpretedRing& r, const Matrix& x);

// Decodes t_ik(a) -> a; NotInCarrier if x is not a carrier element.
RingElem carrier_value(const InterpretedRing& r, const Matrix& x);

// Encodes a -> t_ik(a).
Matrix carrier_elem(const InterpretedRing& r, const RingElem& a);

// x (+) y = x * y on the carrier.
Matrix interp_add(const InterpretedRing& r, const Matrix& x, const Matrix& y);

// x (*) y = [x1, y1] with witnesses x1 = t_ij(a), y1 = t_jk(b) built in closed
// form and then certified against the defining conditions [x1, t_jk(1)] = x
// and [t_ij(1), y1] = y (WitnessCheckFailed on any mismatch).
Matrix interp_mul(const InterpretedRing& r, const Matrix& x, const Matrix& y);

// Same product for triangular hosts: witnesses range over the enlarged set
// u * t_ij(a) * t_ik(c) (scalar u, arbitrary c), and over the analogous
// enlargement of T_jk when n = 3. All sampled witness pairs must agree on
// [x1, y1]; a disagreement is an internal failure (WitnessCheckFailed).
Matrix tn_variant_mul(const InterpretedRing& r, const Matrix& x, const Matrix& y);

// Host-appropriate multiplication: tn_variant_mul for tri hosts, interp_mul
// otherwise.
Matrix interp_product(const InterpretedRing& r, const Matrix& x, const Matrix& y);

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

// The canonical isomorphism T_from -> T_to, t_from(a) -> t_to(a), computed by
// commutators: same row via [x, t_jm(1)], same column via [t_ki(1), x], and
// the general case as a composition of those two.
Matrix connecting_iso(const RingSpec& spec, std::uint32_t n, IndexPair from,
                      IndexPair to, const Matrix& x);

// Exhaustively verifies that a -> t_ik(a) is a bijective ring homomorphism
// onto the carrier and that the carrier satisfies the commutative-ring axioms
// natively under (+)/(*). Finite rings only.
Report ring_iso_check(const InterpretedRing& r);

// An n x n matrix with carrier-element entries, row-major.
using InterpMatrix = std::vector<Matrix>;

InterpMatrix interp_mat_encode(const InterpretedRing& r, const Matrix& g);
Matrix interp_mat_decode(const InterpretedRing& r, const InterpMatrix& a);

// Entrywise matrix product computed with (+)/(*) only.
InterpMatrix interp_mat_mul(const InterpretedRing& r, const InterpMatrix& a,
                            const InterpMatrix& b);

// The group-to-interpreted-group isomorphism: schedule-decomposes g, then
// replays the product entrywise in carrier arithmetic, yielding the matrix of
// carrier elements whose decoded entries equal g. Field specs only.
InterpMatrix lambda_map(const Matrix& g, const SigmaSchedule& s);

// The field-to-interpreted-field isomorphism: a -> the matrix with
// (1,n)-entry a, unit diagonal, zeros elsewhere.
Matrix mu_map(const RingSpec& spec, std::uint32_t n, const RingElem& a);

}  // namespace mgi
