#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgi/group_set.hpp"
#include "mgi/matrix.hpp"

namespace mgi {

struct WordLetter {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  RingElem alpha;
  friend bool operator==(const WordLetter&, const WordLetter&) = default;
};

struct DiagFactor {
  std::uint32_t index = 0;  // which d_index
  RingElem value;           // a unit
  friend bool operator==(const DiagFactor&, const DiagFactor&) = default;
};

// A product of transvections, optionally interleaved with one diagonal
// factor. Evaluation is the left-to-right product; the diagonal factor (if
// any) is applied after `diag_pos` letters.
struct TransvectionWord {
  RingSpec spec;
  std::uint32_t n = 0;
  std::vector<WordLetter> letters;
  std::optional<DiagFactor> diag;
  std::size_t diag_pos = 0;
};

// A fixed ordered list of index pairs, repeated `repetitions` times; the
// target shape for schedule padding.
struct SigmaSchedule {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> base;
  std::uint32_t repetitions = 1;

  std::size_t slots() const { return base.size() * repetitions; }
  std::pair<std::uint32_t, std::uint32_t> slot(std::size_t t) const {
    return base[t % base.size()];
  }
};

// Worst-case letter count of decompose_sl: (n-1)(n+5).
std::uint32_t structural_width_bound(std::uint32_t n);

// Row-major pair order (1,2),(1,3),...,(n,n-1), repeated structural bound + 1
// times so that every decompose_sl word embeds in order.
SigmaSchedule default_schedule(std::uint32_t n);

Matrix eval_word(const TransvectionWord& w);

// Writes a determinant-one matrix over a field as a product of transvections
// via Gaussian elimination restricted to row/column transvection moves.
TransvectionWord decompose_sl(const Matrix& a);

// Writes an invertible matrix over a field as (transvection word)·d_n(det a).
TransvectionWord decompose_gl(const Matrix& a);

// Embeds the letters of w, in order, into the schedule; unused slots get
// alpha = 0. The result has exactly one letter per slot and the same value.
TransvectionWord sigma_pad(const TransvectionWord& w, const SigmaSchedule& s);

// Multilinear integer polynomial in the schedule's slot variables. Each
// monomial is a sorted list of slot indices (variables never repeat: every
// slot contributes its factor at most once to a product entry).
struct Poly {
  std::map<std::vector<std::uint32_t>, long long> terms;

  static Poly zero() { return {}; }
  static Poly constant(long long c);
  static Poly var(std::uint32_t slot);

  Poly operator+(const Poly& o) const;
  Poly operator*(const Poly& o) const;

  bool is_zero() const { return terms.empty(); }
  RingElem eval(const RingSpec& spec, const std::vector<RingElem>& alphas) const;
  std::string to_string() const;  // variables printed as a1, a2, ...
};

// Symbolic expansion of the scheduled product: n x n table (row-major) with
// P[(i-1)*n + (j-1)] giving the (i,j) entry as a polynomial in the slot
// variables. Guarded against blow-up on long schedules.
std::vector<Poly> entry_polynomials(const SigmaSchedule& s,
                                    std::uint64_t term_cap = 200000);

// Unique coefficients of a unitriangular matrix along the superdiagonal
// ordering: superdiagonals m = 1..n-1, within each m the factors
// t_{i,i+m} from i = n-m down to 1.
struct UTNormalForm {
  RingSpec spec;
  std::uint32_t n = 0;
  // (i, j, alpha) in reconstruction order
  std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElem>> coeffs;
};

UTNormalForm ut_normal_form(const Matrix& a);     // NotUnitriangular
Matrix ut_from_coeffs(const UTNormalForm& form);  // exact inverse

// Brute-force lower central series of UT_n: gamma_1 = UT_n,
// gamma_{k+1} = <[gamma_k, gamma_1]>, until trivial (inclusive).
std::vector<GroupSet> lower_central_series(const RingSpec& spec, std::uint32_t n,
                                           std::uint64_t cap = 200000);

// The analytic term UT_n^k: unitriangular matrices whose first k-1
// superdiagonals vanish.
GroupSet ut_power_set(const RingSpec& spec, std::uint32_t n, std::uint32_t k,
                      std::uint64_t cap = 200000);

struct WidthReport {
  std::size_t elements = 0;        // group size scanned
  std::size_t max_width = 0;       // longest decompose_sl word seen
  std::uint32_t structural = 0;    // published bound (n-1)(n+5)
  bool all_round_trip = false;     // every eval_word(decompose_sl(g)) == g
};

WidthReport width_report(const RingSpec& spec, std::uint32_t n,
                         std::uint64_t cap = 200000);

}  // namespace mgi
