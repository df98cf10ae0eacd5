#include "mgi/word.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace mgi {

std::uint32_t structural_width_bound(std::uint32_t n) {
  return (n - 1) * (n + 5);
}

SigmaSchedule default_schedule(std::uint32_t n) {
  SigmaSchedule s;
  s.n = n;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      if (i != j) s.base.emplace_back(i, j);
  s.repetitions = structural_width_bound(n) + 1;
  return s;
}

Matrix eval_word(const TransvectionWord& w) {
  Matrix acc = identity(w.spec, w.n);
  auto apply_diag = [&] {
    acc = mat_mul(acc, diag_elem(w.spec, w.n, w.diag->index, w.diag->value));
  };
  for (std::size_t idx = 0; idx < w.letters.size(); ++idx) {
    if (w.diag && w.diag_pos == idx) apply_diag();
    const WordLetter& l = w.letters[idx];
    acc = mat_mul(acc, transvection(w.spec, w.n, l.i, l.j, l.alpha));
  }
  if (w.diag && w.diag_pos >= w.letters.size()) apply_diag();
  return acc;
}

namespace {

// Working elimination state: applies transvection row/column moves to a copy
// and records them. Left moves multiply on the left (row operations), right
// moves on the right (column operations).
struct Elimination {
  Matrix w;
  std::vector<WordLetter> left;   // in application order
  std::vector<WordLetter> right;  // in application order

  const RingSpec& R() const { return w.ring(); }

  // w <- t_{ir}(c) · w  (row_i += c * row_r)
  void row_op(std::uint32_t i, std::uint32_t r, const RingElem& c) {
    if (is_zero(R(), c)) return;
    for (std::uint32_t k = 1; k <= w.n(); ++k)
      w.set(i, k, ring_add(R(), w.at(i, k), ring_mul(R(), c, w.at(r, k))));
    left.push_back({i, r, c});
  }

  // w <- w · t_{ij}(c)  (col_j += c * col_i)
  void col_op(std::uint32_t i, std::uint32_t j, const RingElem& c) {
    if (is_zero(R(), c)) return;
    for (std::uint32_t k = 1; k <= w.n(); ++k)
      w.set(k, j, ring_add(R(), w.at(k, j), ring_mul(R(), c, w.at(k, i))));
    right.push_back({i, j, c});
  }
};

TransvectionWord eliminate(const Matrix& a) {
  const RingSpec& R = a.ring();
  const std::uint32_t n = a.n();
  Elimination e{a, {}, {}};

  // Forward pass: make each column's pivot nonzero without swaps, clear below.
  for (std::uint32_t j = 1; j + 1 <= n; ++j) {
    if (is_zero(R, e.w.at(j, j))) {
      for (std::uint32_t r = j + 1; r <= n; ++r) {
        if (!is_zero(R, e.w.at(r, j))) {
          e.row_op(j, r, ring_one(R));
          break;
        }
      }
    }
    RingElem pivot_inv = ring_inv(R, e.w.at(j, j));
    for (std::uint32_t i = j + 1; i <= n; ++i)
      e.row_op(i, j, ring_neg(R, ring_mul(R, e.w.at(i, j), pivot_inv)));
  }

  // Back substitution: clear above the diagonal, last column first.
  for (std::uint32_t j = n; j >= 2; --j) {
    RingElem pivot_inv = ring_inv(R, e.w.at(j, j));
    for (std::uint32_t i = j - 1; i >= 1; --i)
      e.row_op(i, j, ring_neg(R, ring_mul(R, e.w.at(i, j), pivot_inv)));
  }

  // Diagonal reduction: push each unit into its right neighbour, leaving 1.
  for (std::uint32_t i = 1; i + 1 <= n; ++i) {
    RingElem alpha = e.w.at(i, i);
    if (is_one(R, alpha)) continue;
    RingElem beta = e.w.at(i + 1, i + 1);
    RingElem one_minus = ring_sub(R, ring_one(R), alpha);
    e.row_op(i, i + 1, ring_inv(R, beta));
    e.col_op(i + 1, i, one_minus);
    e.row_op(i + 1, i, ring_neg(R, ring_mul(R, one_minus, beta)));
    e.col_op(i, i + 1, ring_neg(R, ring_one(R)));
  }

  // Now L_m···L_1 · a · R_1···R_k = I, hence
  // a = L_1^{-1}···L_m^{-1} · R_k^{-1}···R_1^{-1}.
  TransvectionWord out;
  out.spec = R;
  out.n = n;
  for (const WordLetter& l : e.left)
    out.letters.push_back({l.i, l.j, ring_neg(R, l.alpha)});
  for (auto it = e.right.rbegin(); it != e.right.rend(); ++it)
    out.letters.push_back({it->i, it->j, ring_neg(R, it->alpha)});
  return out;
}

}  // namespace

TransvectionWord decompose_sl(const Matrix& a) {
  const RingSpec& R = a.ring();
  if (!R.field()) fail(errc::not_field, "decomposition needs a field");
  if (!is_one(R, det(a)))
    fail(errc::det_not_one, "determinant " + elem_to_string(R, det(a)) + " != 1");
  return eliminate(a);
}

TransvectionWord decompose_gl(const Matrix& a) {
  const RingSpec& R = a.ring();
  if (!R.field()) fail(errc::not_field, "decomposition needs a field");
  RingElem beta = det(a);
  if (!is_unit(R, beta))
    fail(errc::not_invertible, "determinant " + elem_to_string(R, beta) + " is not a unit");
  Matrix scaled = mat_mul(a, diag_elem(R, a.n(), a.n(), ring_inv(R, beta)));
  TransvectionWord w = eliminate(scaled);
  w.diag = DiagFactor{a.n(), beta};
  w.diag_pos = w.letters.size();
  return w;
}

TransvectionWord sigma_pad(const TransvectionWord& w, const SigmaSchedule& s) {
  if (w.diag)
    throw std::invalid_argument("schedule padding requires a transvection-only word");
  if (w.n != s.n) throw std::invalid_argument("schedule dimension mismatch");
  const RingSpec& R = w.spec;
  TransvectionWord out;
  out.spec = R;
  out.n = w.n;
  out.letters.reserve(s.slots());
  std::size_t t = 0;
  for (const WordLetter& l : w.letters) {
    for (;; ++t) {
      if (t == s.slots())
        fail(errc::schedule_too_short,
             "word does not embed: " + std::to_string(w.letters.size()) +
                 " letters into " + std::to_string(s.slots()) + " slots");
      auto [i, j] = s.slot(t);
      if (i == l.i && j == l.j) break;
      out.letters.push_back({i, j, ring_zero(R)});
    }
    out.letters.push_back(l);
    ++t;
  }
  for (; t < s.slots(); ++t) {
    auto [i, j] = s.slot(t);
    out.letters.push_back({i, j, ring_zero(R)});
  }
  return out;
}

Poly Poly::constant(long long c) {
  Poly p;
  if (c != 0) p.terms[{}] = c;
  return p;
}

Poly Poly::var(std::uint32_t slot) {
  Poly p;
  p.terms[{slot}] = 1;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [mono, c] : o.terms) {
    long long& slot = out.terms[mono];
    slot += c;
    if (slot == 0) out.terms.erase(mono);
  }
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out;
  for (const auto& [m1, c1] : terms)
    for (const auto& [m2, c2] : o.terms) {
      std::vector<std::uint32_t> mono;
      mono.reserve(m1.size() + m2.size());
      std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(),
                 std::back_inserter(mono));
      long long& slot = out.terms[mono];
      slot += c1 * c2;
      if (slot == 0) out.terms.erase(mono);
    }
  return out;
}

RingElem Poly::eval(const RingSpec& spec, const std::vector<RingElem>& alphas) const {
  RingElem acc = ring_zero(spec);
  for (const auto& [mono, c] : terms) {
    RingElem term = ring_of(spec, c);
    for (std::uint32_t v : mono) term = ring_mul(spec, term, alphas.at(v));
    acc = ring_add(spec, acc, term);
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms) {
    if (!first) os << " + ";
    first = false;
    if (mono.empty()) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (k) os << "*";
      os << "a" << (mono[k] + 1);
    }
  }
  return os.str();
}

std::vector<Poly> entry_polynomials(const SigmaSchedule& s, std::uint64_t term_cap) {
  const std::uint32_t n = s.n;
  std::vector<Poly> m(std::size_t{n} * n);
  for (std::uint32_t i = 0; i < n; ++i) m[std::size_t{i} * n + i] = Poly::constant(1);
  for (std::size_t t = 0; t < s.slots(); ++t) {
    auto [i, j] = s.slot(t);
    Poly a = Poly::var(static_cast<std::uint32_t>(t));
    // right-multiply by I + a_t e_{ij}: col_j += col_i * a_t
    std::uint64_t total = 0;
    for (std::uint32_t r = 0; r < n; ++r) {
      std::size_t cj = std::size_t{r} * n + (j - 1);
      std::size_t ci = std::size_t{r} * n + (i - 1);
      m[cj] = m[cj] + m[ci] * a;
      total += m[cj].terms.size();
    }
    if (total > term_cap)
      fail(errc::too_large, "symbolic expansion exceeds " +
                                std::to_string(term_cap) + " terms at slot " +
                                std::to_string(t));
  }
  return m;
}

UTNormalForm ut_normal_form(const Matrix& a) {
  const RingSpec& R = a.ring();
  if (!is_upper_unitriangular(a))
    fail(errc::not_unitriangular, "input is not upper unitriangular");
  const std::uint32_t n = a.n();
  UTNormalForm form{R, n, {}};
  Matrix residual = a;
  for (std::uint32_t m = 1; m < n; ++m) {
    Matrix factor = identity(R, n);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElem>> layer;
    for (std::uint32_t i = n - m; i >= 1; --i) {
      RingElem alpha = residual.at(i, i + m);
      layer.emplace_back(i, i + m, alpha);
      factor = mat_mul(factor, transvection(R, n, i, i + m, alpha));
    }
    for (auto& c : layer) form.coeffs.push_back(std::move(c));
    residual = mat_mul(mat_inv(factor), residual);
  }
  return form;
}

Matrix ut_from_coeffs(const UTNormalForm& form) {
  Matrix acc = identity(form.spec, form.n);
  for (const auto& [i, j, alpha] : form.coeffs)
    acc = mat_mul(acc, transvection(form.spec, form.n, i, j, alpha));
  return acc;
}

GroupSet ut_power_set(const RingSpec& spec, std::uint32_t n, std::uint32_t k,
                      std::uint64_t cap) {
  if (!spec.finite()) fail(errc::infinite_ring, "enumeration needs a finite spec");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = i + k; j <= n; ++j) free_pos.emplace_back(i, j);
  bigint pred = boost::multiprecision::pow(bigint(spec.modulus),
                                           static_cast<unsigned>(free_pos.size()));
  if (pred > bigint(cap))
    fail(errc::too_large, "predicted order " + pred.str() + " exceeds cap");
  std::vector<RingElem> elems = ring_elements(spec);
  std::vector<std::uint64_t> keys;
  std::vector<std::size_t> odo(free_pos.size(), 0);
  for (;;) {
    Matrix m = identity(spec, n);
    for (std::size_t p = 0; p < free_pos.size(); ++p)
      m.set(free_pos[p].first, free_pos[p].second, elems[odo[p]]);
    keys.push_back(detail::to_finmat(m).key());
    std::size_t pos = 0;
    while (pos < odo.size() && ++odo[pos] == elems.size()) odo[pos++] = 0;
    if (pos == odo.size()) break;
  }
  return GroupSet::packed_set(spec, n, std::move(keys), /*closed=*/true);
}

std::vector<GroupSet> lower_central_series(const RingSpec& spec, std::uint32_t n,
                                           std::uint64_t cap) {
  GroupSet ut = enumerate_group(spec, n, group_kind::UT, cap);
  std::vector<detail::FinMat> all, all_inv;
  all.reserve(ut.size());
  for (std::size_t i = 0; i < ut.size(); ++i) {
    all.push_back(ut.fin_at(i));
    all_inv.push_back(*detail::fin_inv(all.back()));
  }

  std::vector<GroupSet> series{ut};
  while (series.back().size() > 1) {
    // commutator generators [x, g], x in gamma_k, g in gamma_1
    std::unordered_set<std::uint64_t> gen_keys;
    std::vector<detail::FinMat> gens;
    const GroupSet& gamma = series.back();
    for (std::size_t xi = 0; xi < gamma.size(); ++xi) {
      detail::FinMat x = gamma.fin_at(xi);
      detail::FinMat x_inv = *detail::fin_inv(x);
      for (std::size_t gi = 0; gi < all.size(); ++gi) {
        detail::FinMat c = x_inv * all_inv[gi] * x * all[gi];
        if (gen_keys.insert(c.key()).second) gens.push_back(c);
      }
    }
    // subgroup closure
    std::unordered_set<std::uint64_t> seen;
    detail::FinMat id = detail::FinMat::ident(n, spec.modulus);
    seen.insert(id.key());
    std::vector<detail::FinMat> frontier{id};
    while (!frontier.empty()) {
      std::vector<detail::FinMat> next;
      for (const detail::FinMat& x : frontier)
        for (const detail::FinMat& g : gens) {
          detail::FinMat y = x * g;
          if (seen.insert(y.key()).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    series.push_back(GroupSet::packed_set(
        spec, n, std::vector<std::uint64_t>(seen.begin(), seen.end()),
        /*closed=*/true, std::move(gens)));
  }
  return series;
}

WidthReport width_report(const RingSpec& spec, std::uint32_t n, std::uint64_t cap) {
  GroupSet sl = enumerate_group(spec, n, group_kind::SL, cap);
  WidthReport rep;
  rep.elements = sl.size();
  rep.structural = structural_width_bound(n);
  rep.all_round_trip = true;
  for (std::size_t i = 0; i < sl.size(); ++i) {
    Matrix g = sl.at(i);
    TransvectionWord w = decompose_sl(g);
    rep.max_width = std::max(rep.max_width, w.letters.size());
    if (!(eval_word(w) == g)) rep.all_round_trip = false;
  }
  return rep;
}

}  // namespace mgi
