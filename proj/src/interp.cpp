#include "mgi/interp.hpp"

#include <optional>
#include <string>

#include "mgi/error.hpp"
#include "mgi/tally.hpp"

namespace mgi {

using detail::record_tally;
using detail::Tally;

namespace {

// t_ij(a) recognizer: unit diagonal, zeros elsewhere, entry (i,j) free.
std::optional<RingElem> transvection_value(const RingSpec& spec, std::uint32_t n,
                                           std::uint32_t i, std::uint32_t k,
                                           const Matrix& x) {
  if (x.ring() != spec || x.n() != n) return std::nullopt;
  for (std::uint32_t r = 1; r <= n; ++r)
    for (std::uint32_t c = 1; c <= n; ++c) {
      if (r == i && c == k) continue;
      if (r == c) {
        if (!is_one(spec, x.at(r, c))) return std::nullopt;
      } else if (!is_zero(spec, x.at(r, c))) {
        return std::nullopt;
      }
    }
  return x.at(i, k);
}

// [t_ij(a), t_kl(b)] without generic inversion: transvection inverses are the
// negated-parameter transvections.
Matrix transvection_commutator(const RingSpec& spec, std::uint32_t n,
                               std::uint32_t i, std::uint32_t j, const RingElem& a,
                               std::uint32_t k, std::uint32_t l, const RingElem& b) {
  Matrix prod = mat_mul(transvection(spec, n, i, j, ring_neg(spec, a)),
                        transvection(spec, n, k, l, ring_neg(spec, b)));
  prod = mat_mul(prod, transvection(spec, n, i, j, a));
  return mat_mul(prod, transvection(spec, n, k, l, b));
}

void check_carrier_pair(const InterpretedRing& r, const Matrix& x, const Matrix& y) {
  if (!in_carrier(r, x) || !in_carrier(r, y))
    fail(errc::not_in_carrier, "operand is not a carrier element t_" +
                                   std::to_string(r.i) + std::to_string(r.k) + "(a)");
}

// Bounded sample used for triangular-host witness multiplicity.
std::vector<RingElem> sample_scalars(const RingSpec& spec) {
  if (spec.finite()) {
    std::vector<RingElem> us = units(spec);
    if (us.size() <= 3) return us;
    return {us.front(), us[us.size() / 2], us.back()};
  }
  return {ring_of(spec, 1), ring_of(spec, 2), ring_of(spec, -3)};
}

std::vector<RingElem> sample_offsets(const RingSpec& spec) {
  if (spec.finite()) {
    std::vector<RingElem> es = ring_elements(spec);
    if (es.size() <= 3) return es;
    return {es.front(), es[1], es.back()};
  }
  return {ring_of(spec, 0), ring_of(spec, 1), ring_of(spec, -2)};
}

void validate_pair(std::uint32_t n, IndexPair p) {
  if (p.first == 0 || p.second == 0 || p.first > n || p.second > n ||
      p.first == p.second)
    fail(errc::bad_indices, "index pair (" + std::to_string(p.first) + "," +
                                std::to_string(p.second) +
                                ") is not an off-diagonal position for n = " +
                                std::to_string(n));
}

Matrix connect(const RingSpec& spec, std::uint32_t n, std::uint32_t i,
               std::uint32_t j, std::uint32_t k, std::uint32_t m, const Matrix& x) {
  if (i == k && j == m) return x;
  if (i == k) return commutator(x, transvection(spec, n, j, m, ring_of(spec, 1)));
  if (j == m) return commutator(transvection(spec, n, k, i, ring_of(spec, 1)), x);
  if (m != i) return connect(spec, n, i, m, k, m, connect(spec, n, i, j, i, m, x));
  if (k != j) return connect(spec, n, k, j, k, m, connect(spec, n, i, j, k, j, x));
  // Target is the transposed position (j, i); route through a third index.
  std::uint32_t p = 1;
  while (p == i || p == j) ++p;
  Matrix step = connect(spec, n, i, j, i, p, x);
  step = connect(spec, n, i, p, j, p, step);
  return connect(spec, n, j, p, j, i, step);
}

}  // namespace

const char* host_kind_name(host_kind h) {
  switch (h) {
    case host_kind::gl:
      return "gl";
    case host_kind::sl:
      return "sl";
    case host_kind::tri:
      return "t";
  }
  return "?";
}

InterpretedRing make_interp(const RingSpec& spec, std::uint32_t n, host_kind host) {
  if (n < 3) fail(errc::bad_indices, "interpretation needs n >= 3");
  return make_interp(spec, n, host, 1, n);
}

InterpretedRing make_interp(const RingSpec& spec, std::uint32_t n, host_kind host,
                            std::uint32_t i, std::uint32_t k) {
  std::uint32_t j = 1;
  while (j == i || j == k) ++j;
  if (j > n) fail(errc::bad_indices, "no auxiliary index is free; need n >= 3");
  return make_interp(spec, n, host, i, k, j);
}

InterpretedRing make_interp(const RingSpec& spec, std::uint32_t n, host_kind host,
                            std::uint32_t i, std::uint32_t k, std::uint32_t j) {
  if (n < 3) fail(errc::bad_indices, "interpretation needs n >= 3");
  validate_pair(n, {i, k});
  if (j == 0 || j > n || j == i || j == k)
    fail(errc::bad_indices,
         "auxiliary index " + std::to_string(j) + " must differ from " +
             std::to_string(i) + " and " + std::to_string(k));
  InterpretedRing r;
  r.ring = spec;
  r.n = n;
  r.host = host;
  r.i = i;
  r.k = k;
  r.j = j;
  return r;
}

bool in_carrier(const InterpretedRing& r, const Matrix& x) {
  return transvection_value(r.ring, r.n, r.i, r.k, x).has_value();
}

RingElem carrier_value(const InterpretedRing& r, const Matrix& x) {
  std::optional<RingElem> v = transvection_value(r.ring, r.n, r.i, r.k, x);
  if (!v)
    fail(errc::not_in_carrier, "matrix is not of the form t_" + std::to_string(r.i) +
                                   std::to_string(r.k) + "(a)");
  return *v;
}

Matrix carrier_elem(const InterpretedRing& r, const RingElem& a) {
  return transvection(r.ring, r.n, r.i, r.k, a);
}

Matrix interp_add(const InterpretedRing& r, const Matrix& x, const Matrix& y) {
  check_carrier_pair(r, x, y);
  return mat_mul(x, y);
}

Matrix interp_mul(const InterpretedRing& r, const Matrix& x, const Matrix& y) {
  check_carrier_pair(r, x, y);
  const RingSpec& spec = r.ring;
  RingElem a = x.at(r.i, r.k);
  RingElem b = y.at(r.i, r.k);
  const RingElem one = ring_of(spec, 1);
  // x1 = t_ij(a), y1 = t_jk(b); certify the defining commutator conditions.
  if (transvection_commutator(spec, r.n, r.i, r.j, a, r.j, r.k, one) != x)
    fail(errc::witness_check_failed, "[x1, t_jk(1)] failed to reproduce x");
  if (transvection_commutator(spec, r.n, r.i, r.j, one, r.j, r.k, b) != y)
    fail(errc::witness_check_failed, "[t_ij(1), y1] failed to reproduce y");
  return transvection_commutator(spec, r.n, r.i, r.j, a, r.j, r.k, b);
}

Matrix tn_variant_mul(const InterpretedRing& r, const Matrix& x, const Matrix& y) {
  check_carrier_pair(r, x, y);
  const RingSpec& spec = r.ring;
  RingElem a = x.at(r.i, r.k);
  RingElem b = y.at(r.i, r.k);
  const Matrix t_jk1 = transvection(spec, r.n, r.j, r.k, ring_of(spec, 1));
  const Matrix t_ij1 = transvection(spec, r.n, r.i, r.j, ring_of(spec, 1));

  std::vector<Matrix> xs;
  for (const RingElem& u : sample_scalars(spec))
    for (const RingElem& c : sample_offsets(spec)) {
      Matrix w = mat_mul(scalar_elem(spec, r.n, u),
                         mat_mul(transvection(spec, r.n, r.i, r.j, a),
                                 transvection(spec, r.n, r.i, r.k, c)));
      if (commutator(w, t_jk1) != x)
        fail(errc::witness_check_failed,
             "enlarged witness for x lost the defining condition");
      xs.push_back(std::move(w));
    }

  std::vector<Matrix> ys;
  if (r.n == 3) {
    for (const RingElem& u : sample_scalars(spec))
      for (const RingElem& c : sample_offsets(spec)) {
        Matrix w = mat_mul(scalar_elem(spec, r.n, u),
                           mat_mul(transvection(spec, r.n, r.j, r.k, b),
                                   transvection(spec, r.n, r.i, r.k, c)));
        if (commutator(t_ij1, w) != y)
          fail(errc::witness_check_failed,
               "enlarged witness for y lost the defining condition");
        ys.push_back(std::move(w));
      }
  } else {
    ys.push_back(transvection(spec, r.n, r.j, r.k, b));
  }

  std::optional<Matrix> result;
  for (const Matrix& x1 : xs)
    for (const Matrix& y1 : ys) {
      Matrix c = commutator(x1, y1);
      if (!result) {
        result = std::move(c);
      } else if (c != *result) {
        fail(errc::witness_check_failed,
             "sampled witness pairs disagree on [x1, y1]");
      }
    }
  return *result;
}

Matrix interp_product(const InterpretedRing& r, const Matrix& x, const Matrix& y) {
  return r.host == host_kind::tri ? tn_variant_mul(r, x, y) : interp_mul(r, x, y);
}

Matrix connecting_iso(const RingSpec& spec, std::uint32_t n, IndexPair from,
                      IndexPair to, const Matrix& x) {
  validate_pair(n, from);
  validate_pair(n, to);
  if (!transvection_value(spec, n, from.first, from.second, x))
    fail(errc::not_in_carrier, "input is not an element of T_" +
                                   std::to_string(from.first) +
                                   std::to_string(from.second));
  return connect(spec, n, from.first, from.second, to.first, to.second, x);
}

Report ring_iso_check(const InterpretedRing& r) {
  const RingSpec& spec = r.ring;
  if (!spec.finite()) fail(errc::infinite_ring, "exhaustive check needs a finite spec");
  Report rep("ring-iso");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(r.n));
  rep.set_param("carrier",
                "(" + std::to_string(r.i) + "," + std::to_string(r.k) + ")");
  rep.set_param("aux", std::to_string(r.j));
  rep.set_param("host", host_kind_name(r.host));

  const std::vector<RingElem> elems = ring_elements(spec);
  auto enc = [&](const RingElem& a) { return carrier_elem(r, a); };
  auto add = [&](const Matrix& x, const Matrix& y) { return interp_add(r, x, y); };
  auto mul = [&](const Matrix& x, const Matrix& y) {
    return interp_product(r, x, y);
  };
  const Matrix zero = enc(ring_of(spec, 0));
  const Matrix one = enc(ring_of(spec, 1));

  std::vector<Matrix> image;
  image.reserve(elems.size());
  for (const RingElem& a : elems) image.push_back(enc(a));

  Tally bij;
  for (std::size_t p = 0; p < elems.size(); ++p) {
    bij.note(carrier_value(r, image[p]) == elems[p] && in_carrier(r, image[p]));
    for (std::size_t q = p + 1; q < elems.size(); ++q)
      bij.note(!(image[p] == image[q]));
  }
  record_tally(rep, "encode-bijective", "a -> t_ik(a) is injective with decode inverse",
               bij);

  Tally addh, mulh;
  for (std::size_t p = 0; p < elems.size(); ++p)
    for (std::size_t q = 0; q < elems.size(); ++q) {
      addh.note(add(image[p], image[q]) ==
                enc(ring_add(spec, elems[p], elems[q])));
      mulh.note(mul(image[p], image[q]) ==
                enc(ring_mul(spec, elems[p], elems[q])));
    }
  record_tally(rep, "add-homomorphism", "t(a) (+) t(b) = t(a+b)", addh);
  record_tally(rep, "mul-homomorphism", "t(a) (*) t(b) = t(ab)", mulh);

  Tally addc, mulc, zid, oid, ainv;
  for (std::size_t p = 0; p < elems.size(); ++p) {
    zid.note(add(image[p], zero) == image[p] && add(zero, image[p]) == image[p]);
    oid.note(mul(image[p], one) == image[p] && mul(one, image[p]) == image[p]);
    bool found = false;
    for (std::size_t q = 0; q < elems.size() && !found; ++q)
      found = add(image[p], image[q]) == zero;
    ainv.note(found);
    for (std::size_t q = p; q < elems.size(); ++q) {
      addc.note(add(image[p], image[q]) == add(image[q], image[p]));
      mulc.note(mul(image[p], image[q]) == mul(image[q], image[p]));
    }
  }
  record_tally(rep, "add-commutative", "x (+) y = y (+) x", addc);
  record_tally(rep, "zero-identity", "x (+) t(0) = x", zid);
  record_tally(rep, "add-inverse", "every x has y with x (+) y = t(0)", ainv);
  record_tally(rep, "mul-commutative", "x (*) y = y (*) x", mulc);
  record_tally(rep, "one-identity", "x (*) t(1) = x", oid);

  Tally adda, mula, dist;
  for (std::size_t p = 0; p < elems.size(); ++p)
    for (std::size_t q = 0; q < elems.size(); ++q)
      for (std::size_t s = 0; s < elems.size(); ++s) {
        adda.note(add(add(image[p], image[q]), image[s]) ==
                  add(image[p], add(image[q], image[s])));
        mula.note(mul(mul(image[p], image[q]), image[s]) ==
                  mul(image[p], mul(image[q], image[s])));
        dist.note(mul(image[p], add(image[q], image[s])) ==
                  add(mul(image[p], image[q]), mul(image[p], image[s])));
      }
  record_tally(rep, "add-associative", "(x (+) y) (+) z = x (+) (y (+) z)", adda);
  record_tally(rep, "mul-associative", "(x (*) y) (*) z = x (*) (y (*) z)", mula);
  record_tally(rep, "distributive", "x (*) (y (+) z) = x (*) y (+) x (*) z", dist);

  return rep;
}

InterpMatrix interp_mat_encode(const InterpretedRing& r, const Matrix& g) {
  if (g.ring() != r.ring || g.n() != r.n)
    fail(errc::not_in_carrier, "matrix shape does not match the interpretation");
  InterpMatrix out;
  out.reserve(std::size_t{r.n} * r.n);
  for (std::uint32_t i = 1; i <= r.n; ++i)
    for (std::uint32_t j = 1; j <= r.n; ++j) out.push_back(carrier_elem(r, g.at(i, j)));
  return out;
}

Matrix interp_mat_decode(const InterpretedRing& r, const InterpMatrix& a) {
  if (a.size() != std::size_t{r.n} * r.n)
    fail(errc::not_in_carrier, "entry count does not match the interpretation");
  Matrix out(r.ring, r.n);
  std::size_t pos = 0;
  for (std::uint32_t i = 1; i <= r.n; ++i)
    for (std::uint32_t j = 1; j <= r.n; ++j)
      out.set(i, j, carrier_value(r, a[pos++]));
  return out;
}

InterpMatrix interp_mat_mul(const InterpretedRing& r, const InterpMatrix& a,
                            const InterpMatrix& b) {
  const std::size_t n = r.n;
  if (a.size() != n * n || b.size() != n * n)
    fail(errc::not_in_carrier, "entry count does not match the interpretation");
  const Matrix zero = carrier_elem(r, ring_of(r.ring, 0));
  InterpMatrix out(n * n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix acc = zero;
      for (std::size_t s = 0; s < n; ++s)
        acc = interp_add(r, acc, interp_product(r, a[i * n + s], b[s * n + j]));
      out[i * n + j] = std::move(acc);
    }
  return out;
}

InterpMatrix lambda_map(const Matrix& g, const SigmaSchedule& s) {
  TransvectionWord padded = sigma_pad(decompose_sl(g), s);
  InterpretedRing r = make_interp(g.ring(), g.n(), host_kind::sl);
  InterpMatrix acc = interp_mat_encode(r, identity(g.ring(), g.n()));
  const std::size_t n = g.n();
  for (const WordLetter& L : padded.letters) {
    if (is_zero(g.ring(), L.alpha)) continue;
    Matrix factor = carrier_elem(r, L.alpha);
    // Right-multiplying by t_ij(a) adds column i scaled by a to column j.
    for (std::size_t row = 0; row < n; ++row) {
      Matrix& target = acc[row * n + (L.j - 1)];
      target = interp_add(
          r, target, interp_mul(r, acc[row * n + (L.i - 1)], factor));
    }
  }
  return acc;
}

Matrix mu_map(const RingSpec& spec, std::uint32_t n, const RingElem& a) {
  return transvection(spec, n, 1, n, a);
}

}  // namespace mgi
