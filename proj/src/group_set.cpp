#include "mgi/group_set.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace mgi {

namespace detail {

FinMat FinMat::ident(std::uint32_t n, std::uint32_t mod) {
  FinMat m;
  m.n = n;
  m.mod = mod;
  for (std::uint32_t i = 0; i < n; ++i) m.set(i, i, 1 % mod);
  return m;
}

bool FinMat::is_identity() const {
  return *this == ident(n, mod);
}

std::uint64_t FinMat::key() const {
  std::uint64_t k = 0;
  for (std::uint32_t idx = n * n; idx-- > 0;) k = k * mod + e[idx];
  return k;
}

FinMat FinMat::from_key(std::uint64_t key, std::uint32_t n, std::uint32_t mod) {
  FinMat m;
  m.n = n;
  m.mod = mod;
  for (std::uint32_t idx = 0; idx < n * n; ++idx) {
    m.e[idx] = static_cast<std::uint32_t>(key % mod);
    key /= mod;
  }
  return m;
}

FinMat operator*(const FinMat& a, const FinMat& b) {
  FinMat c;
  c.n = a.n;
  c.mod = a.mod;
  const std::uint64_t m = a.mod;
  if (m < (1u << 29)) {
    for (std::uint32_t i = 0; i < a.n; ++i)
      for (std::uint32_t j = 0; j < a.n; ++j) {
        std::uint64_t acc = 0;
        for (std::uint32_t k = 0; k < a.n; ++k)
          acc += std::uint64_t{a.at(i, k)} * b.at(k, j);
        c.set(i, j, static_cast<std::uint32_t>(acc % m));
      }
  } else {
    for (std::uint32_t i = 0; i < a.n; ++i)
      for (std::uint32_t j = 0; j < a.n; ++j) {
        std::uint64_t acc = 0;
        for (std::uint32_t k = 0; k < a.n; ++k)
          acc = (acc + std::uint64_t{a.at(i, k)} * b.at(k, j) % m) % m;
        c.set(i, j, static_cast<std::uint32_t>(acc));
      }
  }
  return c;
}

bool operator==(const FinMat& a, const FinMat& b) {
  if (a.n != b.n || a.mod != b.mod) return false;
  for (std::uint32_t idx = 0; idx < a.n * a.n; ++idx)
    if (a.e[idx] != b.e[idx]) return false;
  return true;
}

FinMat to_finmat(const Matrix& m) {
  if (!m.ring().finite()) fail(errc::infinite_ring, "FinMat needs a finite spec");
  FinMat f;
  f.n = m.n();
  f.mod = m.ring().modulus;
  for (std::uint32_t i = 1; i <= m.n(); ++i)
    for (std::uint32_t j = 1; j <= m.n(); ++j)
      f.set(i - 1, j - 1, static_cast<std::uint32_t>(residue(m.at(i, j))));
  return f;
}

Matrix from_finmat(const RingSpec& spec, const FinMat& f) {
  Matrix m(spec, f.n);
  for (std::uint32_t i = 0; i < f.n; ++i)
    for (std::uint32_t j = 0; j < f.n; ++j)
      m.set(i + 1, j + 1, RingElem{std::uint64_t{f.at(i, j)}});
  return m;
}

namespace {

std::uint64_t fin_minor_det(const FinMat& a, const std::uint32_t* rows,
                            const std::uint32_t* cols, std::uint32_t k) {
  const std::uint64_t m = a.mod;
  if (k == 1) return a.at(rows[0], cols[0]);
  std::uint64_t acc = 0;
  std::uint32_t sub_cols[5];
  for (std::uint32_t c = 0; c < k; ++c) {
    std::uint64_t pivot = a.at(rows[0], cols[c]);
    if (pivot == 0) continue;
    std::uint32_t w = 0;
    for (std::uint32_t t = 0; t < k; ++t)
      if (t != c) sub_cols[w++] = cols[t];
    std::uint64_t sub = fin_minor_det(a, rows + 1, sub_cols, k - 1);
    std::uint64_t term = pivot * sub % m;
    acc = (c % 2 == 0) ? (acc + term) % m : (acc + m - term) % m;
  }
  return acc;
}

std::uint64_t egcd_inv_mod(std::uint64_t a, std::uint64_t m) {
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<long long>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

std::uint32_t fin_det(const FinMat& a) {
  std::uint32_t idx[5];
  for (std::uint32_t i = 0; i < a.n; ++i) idx[i] = i;
  return static_cast<std::uint32_t>(fin_minor_det(a, idx, idx, a.n));
}

std::optional<FinMat> fin_inv(const FinMat& a) {
  const std::uint64_t m = a.mod;
  std::uint64_t d = fin_det(a);
  if (std::gcd(d, m) != 1) return std::nullopt;
  std::uint64_t d_inv = egcd_inv_mod(d, m);
  FinMat inv;
  inv.n = a.n;
  inv.mod = a.mod;
  if (a.n == 1) {
    inv.set(0, 0, static_cast<std::uint32_t>(d_inv % m));
    return inv;
  }
  std::uint32_t rows[5], cols[5];
  for (std::uint32_t i = 0; i < a.n; ++i)
    for (std::uint32_t j = 0; j < a.n; ++j) {
      std::uint32_t w = 0;
      for (std::uint32_t k = 0; k < a.n; ++k)
        if (k != j) rows[w++] = k;  // adjugate: cofactor of (j, i)
      w = 0;
      for (std::uint32_t k = 0; k < a.n; ++k)
        if (k != i) cols[w++] = k;
      std::uint64_t cof = fin_minor_det(a, rows, cols, a.n - 1);
      if ((i + j) % 2 == 1) cof = (m - cof) % m;
      inv.set(i, j, static_cast<std::uint32_t>(cof * d_inv % m));
    }
  return inv;
}

FinMat fin_commutator(const FinMat& a, const FinMat& b) {
  FinMat ai = *fin_inv(a);
  FinMat bi = *fin_inv(b);
  return ai * bi * a * b;
}

}  // namespace detail

using detail::FinMat;

std::string group_kind_name(group_kind k) {
  switch (k) {
    case group_kind::GL: return "GL";
    case group_kind::SL: return "SL";
    case group_kind::T: return "T";
    case group_kind::UT: return "UT";
    case group_kind::D: return "D";
    case group_kind::scalar: return "scalar";
    case group_kind::K: return "K";
  }
  return "?";
}

bool packable(const RingSpec& spec, std::uint32_t n) {
  if (!spec.finite()) return false;
  bigint total = boost::multiprecision::pow(bigint(spec.modulus), n * n);
  return total <= bigint(std::uint64_t{1} << 62);
}

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    std::uint64_t k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t phi = 1;
  for (auto [p, k] : factorize(m)) {
    std::uint64_t pk = 1;
    for (std::uint64_t i = 0; i + 1 < k; ++i) pk *= p;
    phi *= pk * (p - 1);
  }
  return phi;
}

bigint gl_order_field(std::uint32_t n, std::uint64_t q) {
  bigint acc = 1;
  bigint qn = boost::multiprecision::pow(bigint(q), n);
  for (std::uint32_t i = 0; i < n; ++i)
    acc *= qn - boost::multiprecision::pow(bigint(q), i);
  return acc;
}

bigint gl_order_zmod(std::uint32_t n, std::uint64_t m) {
  bigint acc = 1;
  for (auto [p, k] : factorize(m))
    acc *= boost::multiprecision::pow(bigint(p), (k - 1) * n * n) *
           gl_order_field(n, p);
  return acc;
}

std::vector<std::uint64_t> roots_of_unity(const RingSpec& spec, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const RingElem& u : units(spec))
    if (is_one(spec, ring_pow(spec, u, n))) out.push_back(residue(u));
  return out;
}

std::vector<Matrix> family_generators(const RingSpec& spec, std::uint32_t n,
                                      group_kind which) {
  std::vector<Matrix> gens;
  RingElem one = ring_one(spec);
  auto add_upper = [&] {
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = i + 1; j <= n; ++j)
        gens.push_back(transvection(spec, n, i, j, one));
  };
  auto add_lower = [&] {
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = 1; j < i; ++j)
        gens.push_back(transvection(spec, n, i, j, one));
  };
  auto add_diag = [&](std::uint32_t upto) {
    for (const RingElem& u : units(spec)) {
      if (is_one(spec, u)) continue;
      for (std::uint32_t i = 1; i <= upto; ++i)
        gens.push_back(diag_elem(spec, n, i, u));
    }
  };
  switch (which) {
    case group_kind::UT:
      add_upper();
      break;
    case group_kind::SL:
      add_upper();
      add_lower();
      break;
    case group_kind::GL:
      add_upper();
      add_lower();
      add_diag(1);
      break;
    case group_kind::T:
      add_upper();
      add_diag(n);
      break;
    case group_kind::D:
      add_diag(n);
      break;
    case group_kind::scalar:
      for (const RingElem& u : units(spec))
        if (!is_one(spec, u)) gens.push_back(scalar_elem(spec, n, u));
      break;
    case group_kind::K:
      add_upper();
      add_diag(n - 1);
      break;
  }
  gens.push_back(identity(spec, n));
  return gens;
}

}  // namespace

bigint predicted_order(const RingSpec& spec, std::uint32_t n, group_kind which) {
  if (!spec.finite()) fail(errc::infinite_ring, "order prediction needs a finite spec");
  const std::uint64_t m = spec.modulus;
  const bigint phi = euler_phi(m);
  const bigint strict = boost::multiprecision::pow(bigint(m), n * (n - 1) / 2);
  switch (which) {
    case group_kind::GL: return gl_order_zmod(n, m);
    case group_kind::SL: return gl_order_zmod(n, m) / phi;
    case group_kind::T: return boost::multiprecision::pow(phi, n) * strict;
    case group_kind::UT: return strict;
    case group_kind::D: return boost::multiprecision::pow(phi, n);
    case group_kind::scalar: return phi;
    case group_kind::K: return boost::multiprecision::pow(phi, n - 1) * strict;
  }
  return 0;
}

GroupSet GroupSet::packed_set(RingSpec spec, std::uint32_t n,
                              std::vector<std::uint64_t> keys, bool closed,
                              std::vector<FinMat> gens) {
  GroupSet g;
  g.spec_ = spec;
  g.n_ = n;
  g.packed_ = true;
  g.closed_ = closed;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  g.keys_ = std::move(keys);
  g.gens_ = std::move(gens);
  return g;
}

GroupSet GroupSet::explicit_set(RingSpec spec, std::uint32_t n,
                                std::vector<Matrix> mats, bool closed) {
  GroupSet g;
  g.spec_ = spec;
  g.n_ = n;
  g.packed_ = false;
  g.closed_ = closed;
  g.mats_ = std::move(mats);
  return g;
}

std::size_t GroupSet::size() const { return packed_ ? keys_.size() : mats_.size(); }

bool GroupSet::contains_key(std::uint64_t key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

bool GroupSet::contains(const Matrix& m) const {
  if (m.ring() != spec_ || m.n() != n_) return false;
  if (packed_) return contains_key(detail::to_finmat(m).key());
  return std::find(mats_.begin(), mats_.end(), m) != mats_.end();
}

Matrix GroupSet::at(std::size_t idx) const {
  if (packed_) return detail::from_finmat(spec_, fin_at(idx));
  return mats_[idx];
}

FinMat GroupSet::fin_at(std::size_t idx) const {
  return FinMat::from_key(keys_[idx], n_, spec_.modulus);
}

bool GroupSet::same_elements(const GroupSet& other) const {
  if (size() != other.size()) return false;
  if (packed_ && other.packed_)
    return spec_ == other.spec_ && n_ == other.n_ && keys_ == other.keys_;
  for (std::size_t i = 0; i < size(); ++i)
    if (!other.contains(at(i))) return false;
  return true;
}

bool membership(const Matrix& a, group_kind which) {
  const RingSpec& R = a.ring();
  switch (which) {
    case group_kind::GL:
      return is_unit(R, det(a));
    case group_kind::SL:
      return is_one(R, det(a));
    case group_kind::T: {
      for (std::uint32_t i = 1; i <= a.n(); ++i) {
        if (!is_unit(R, a.at(i, i))) return false;
        for (std::uint32_t j = 1; j < i; ++j)
          if (!is_zero(R, a.at(i, j))) return false;
      }
      return true;
    }
    case group_kind::UT:
      return is_upper_unitriangular(a);
    case group_kind::D: {
      if (!is_diagonal(a)) return false;
      for (std::uint32_t i = 1; i <= a.n(); ++i)
        if (!is_unit(R, a.at(i, i))) return false;
      return true;
    }
    case group_kind::scalar:
      return is_scalar(a) && is_unit(R, a.at(1, 1));
    case group_kind::K:
      return membership(a, group_kind::T) && is_one(R, a.at(a.n(), a.n()));
  }
  return false;
}

GroupSet enumerate_group(const RingSpec& spec, std::uint32_t n, group_kind which,
                         std::uint64_t cap) {
  if (!spec.finite()) fail(errc::infinite_ring, "enumeration needs a finite spec");
  bigint pred = predicted_order(spec, n, which);
  if (pred > bigint(cap))
    fail(errc::too_large, "predicted order " + pred.str() + " of " +
                              group_kind_name(which) + "_" + std::to_string(n) +
                              " over " + ring_to_string(spec) + " exceeds cap " +
                              std::to_string(cap));
  const std::size_t expected = static_cast<std::size_t>(pred);
  std::vector<Matrix> mat_gens = family_generators(spec, n, which);

  if (packable(spec, n)) {
    std::vector<FinMat> gens;
    gens.reserve(mat_gens.size());
    for (const Matrix& g : mat_gens) gens.push_back(detail::to_finmat(g));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(expected * 2);
    FinMat id = FinMat::ident(n, spec.modulus);
    seen.insert(id.key());
    std::vector<FinMat> frontier{id};
    while (!frontier.empty()) {
      std::vector<FinMat> next;
      for (const FinMat& x : frontier)
        for (const FinMat& g : gens) {
          FinMat y = x * g;
          if (seen.insert(y.key()).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    if (seen.size() != expected)
      fail(errc::spec_mismatch,
           "closure size " + std::to_string(seen.size()) + " != predicted order " +
               pred.str());
    return GroupSet::packed_set(spec, n,
                                std::vector<std::uint64_t>(seen.begin(), seen.end()),
                                /*closed=*/true, std::move(gens));
  }

  // Fallback for shapes whose entries do not fit a packed key.
  std::unordered_set<Matrix, MatrixHash> seen;
  seen.reserve(expected * 2);
  Matrix id = identity(spec, n);
  seen.insert(id);
  std::vector<Matrix> frontier{id};
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const Matrix& x : frontier)
      for (const Matrix& g : mat_gens) {
        Matrix y = mat_mul(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  if (seen.size() != expected)
    fail(errc::spec_mismatch,
         "closure size " + std::to_string(seen.size()) + " != predicted order " +
             pred.str());
  return GroupSet::explicit_set(spec, n,
                                std::vector<Matrix>(seen.begin(), seen.end()),
                                /*closed=*/true);
}

GroupSet center_of(const GroupSet& g) {
  if (g.packed()) {
    std::vector<FinMat> tests = g.generators();
    const bool against_all = tests.empty();
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
      FinMat x = g.fin_at(i);
      bool central = true;
      if (against_all) {
        for (std::size_t j = 0; central && j < g.size(); ++j) {
          FinMat y = g.fin_at(j);
          central = (x * y == y * x);
        }
      } else {
        for (const FinMat& t : tests) {
          if (!(x * t == t * x)) {
            central = false;
            break;
          }
        }
      }
      if (central) out.push_back(g.keys()[i]);
    }
    return GroupSet::packed_set(g.ring(), g.n(), std::move(out), /*closed=*/true);
  }
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Matrix x = g.at(i);
    bool central = true;
    for (std::size_t j = 0; central && j < g.size(); ++j) {
      Matrix y = g.at(j);
      central = (mat_mul(x, y) == mat_mul(y, x));
    }
    if (central) out.push_back(std::move(x));
  }
  return GroupSet::explicit_set(g.ring(), g.n(), std::move(out), /*closed=*/true);
}

GroupSet analytic_center(const RingSpec& spec, std::uint32_t n, group_kind which) {
  if (!spec.finite()) fail(errc::infinite_ring, "analytic center needs a finite spec");
  std::vector<Matrix> mats;
  switch (which) {
    case group_kind::GL:
    case group_kind::T:
      for (const RingElem& u : units(spec)) mats.push_back(scalar_elem(spec, n, u));
      break;
    case group_kind::SL:
      for (std::uint64_t w : roots_of_unity(spec, n))
        mats.push_back(scalar_elem(spec, n, RingElem{w}));
      break;
    case group_kind::UT:
      for (const RingElem& a : ring_elements(spec))
        mats.push_back(is_zero(spec, a) ? identity(spec, n)
                                        : transvection(spec, n, 1, n, a));
      break;
    case group_kind::D: {
      GroupSet d = enumerate_group(spec, n, group_kind::D);
      return d;  // abelian: its own center
    }
    case group_kind::scalar:
      for (const RingElem& u : units(spec)) mats.push_back(scalar_elem(spec, n, u));
      break;
    case group_kind::K:
      mats.push_back(identity(spec, n));
      break;
  }
  if (packable(spec, n)) {
    std::vector<std::uint64_t> keys;
    keys.reserve(mats.size());
    for (const Matrix& m : mats) keys.push_back(detail::to_finmat(m).key());
    return GroupSet::packed_set(spec, n, std::move(keys), /*closed=*/true);
  }
  return GroupSet::explicit_set(spec, n, std::move(mats), /*closed=*/true);
}

Matrix QuotientGroup::canon(const Matrix& x) const {
  FinMat fx = detail::to_finmat(x);
  std::uint64_t best = fx.key();
  FinMat pick = fx;
  for (std::size_t i = 0; i < center.size(); ++i) {
    FinMat y = fx * center.fin_at(i);
    if (y.key() < best) {
      best = y.key();
      pick = y;
    }
  }
  return detail::from_finmat(x.ring(), pick);
}

Matrix QuotientGroup::product(const Matrix& a, const Matrix& b) const {
  return canon(mat_mul(a, b));
}

QuotientGroup quotient_by_center(const GroupSet& g) {
  if (!g.packed())
    fail(errc::too_large, "central quotient requires packed storage");
  QuotientGroup q;
  q.center = center_of(g);
  std::vector<FinMat> zs;
  for (std::size_t i = 0; i < q.center.size(); ++i) zs.push_back(q.center.fin_at(i));
  std::vector<std::uint64_t> reps;
  for (std::size_t i = 0; i < g.size(); ++i) {
    FinMat x = g.fin_at(i);
    std::uint64_t self = x.key();
    std::uint64_t best = self;
    for (const FinMat& z : zs) {
      std::uint64_t k = (x * z).key();
      if (k < best) best = k;
    }
    if (best == self) reps.push_back(self);
  }
  q.reps = GroupSet::packed_set(g.ring(), g.n(), std::move(reps), /*closed=*/false);
  return q;
}

GroupSet isogeny_kernel(const RingSpec& spec, std::uint32_t n) {
  if (spec.kind != ring_kind::prime_field)
    fail(errc::not_field, "isogeny kernel defined over finite fields");
  std::vector<Matrix> mats;
  for (std::uint64_t w : roots_of_unity(spec, n)) {
    Matrix m(spec, 2 * n);
    RingElem omega{w};
    RingElem omega_inv = ring_inv(spec, omega);
    for (std::uint32_t i = 1; i <= n; ++i) {
      m.set(i, i, omega);
      m.set(n + i, n + i, omega_inv);
    }
    mats.push_back(std::move(m));
  }
  return GroupSet::explicit_set(spec, 2 * n, std::move(mats), /*closed=*/true);
}

}  // namespace mgi
