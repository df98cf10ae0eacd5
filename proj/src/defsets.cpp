#include "mgi/defsets.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mgi/error.hpp"
#include "mgi/ring.hpp"
#include "mgi/tally.hpp"

namespace mgi {

namespace {

using detail::FinMat;

constexpr std::size_t kHostLimit = 20000;     // hard cap for set enumeration
constexpr std::size_t kExplicitLimit = 600;   // cap for the non-packed fallback
constexpr std::size_t kClosureLimit = 6000;   // largest set we product-check

FinMat fin_pow(FinMat a, std::uint64_t e) {
  FinMat r = FinMat::ident(a.n, a.mod);
  while (e) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}

bool key_member(const std::vector<std::uint64_t>& sorted_keys, std::uint64_t k) {
  return std::binary_search(sorted_keys.begin(), sorted_keys.end(), k);
}

std::vector<std::uint64_t> sorted_keys_of(const std::vector<Matrix>& mats) {
  std::vector<std::uint64_t> keys;
  keys.reserve(mats.size());
  for (const Matrix& m : mats) keys.push_back(detail::to_finmat(m).key());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

bool fast_path(const RingSpec& spec, std::uint32_t n) {
  return spec.finite() && packable(spec, n);
}

// Identity present, inverses present, products stay inside. Pure check: never
// throws on a negative answer.
bool closure_check(const RingSpec& spec, std::uint32_t n,
                   const std::vector<Matrix>& elems) {
  if (elems.empty()) return false;
  if (fast_path(spec, n)) {
    std::vector<FinMat> fms;
    fms.reserve(elems.size());
    for (const Matrix& m : elems) fms.push_back(detail::to_finmat(m));
    std::vector<std::uint64_t> keys;
    keys.reserve(fms.size());
    for (const FinMat& f : fms) keys.push_back(f.key());
    std::sort(keys.begin(), keys.end());
    if (!key_member(keys, FinMat::ident(n, fms.front().mod).key())) return false;
    for (const FinMat& f : fms) {
      std::optional<FinMat> iv = detail::fin_inv(f);
      if (!iv || !key_member(keys, iv->key())) return false;
    }
    for (const FinMat& a : fms)
      for (const FinMat& b : fms)
        if (!key_member(keys, (a * b).key())) return false;
    return true;
  }
  std::unordered_set<Matrix, MatrixHash> set(elems.begin(), elems.end());
  if (!set.count(identity(spec, n))) return false;
  for (const Matrix& a : elems)
    if (!set.count(mat_inv(a))) return false;
  for (const Matrix& a : elems)
    for (const Matrix& b : elems)
      if (!set.count(mat_mul(a, b))) return false;
  return true;
}

// Attempt the closure check when it is affordable; whole closed hosts pass
// without re-multiplying.
bool attempt_verify(const GroupSet& host, const std::vector<Matrix>& elems) {
  if (elems.size() == host.size() && host.closed()) return true;
  if (elems.size() > kClosureLimit) return false;
  return closure_check(host.ring(), host.n(), elems);
}

void check_host(const GroupSet& host) {
  if (host.size() == 0) fail(errc::spec_mismatch, "host set is empty");
  if (host.size() > kHostLimit)
    fail(errc::too_large, "host has " + std::to_string(host.size()) +
                              " elements; the set-enumeration limit is " +
                              std::to_string(kHostLimit));
}

// Index of a key inside the sorted key table of a closed packed host.
std::size_t host_index(const std::vector<std::uint64_t>& keys, std::uint64_t k) {
  auto it = std::lower_bound(keys.begin(), keys.end(), k);
  if (it == keys.end() || *it != k)
    fail(errc::spec_mismatch, "host is not closed under the required products");
  return static_cast<std::size_t>(it - keys.begin());
}

// Selected host elements in host storage order.
std::vector<Matrix> pick(const GroupSet& host, const std::vector<char>& keep) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) out.push_back(host.at(i));
  return out;
}

// keep[i] = 1 iff host element i commutes with every matrix in ds.
std::vector<char> commuting_slice(const GroupSet& host,
                                  const std::vector<Matrix>& ds) {
  const std::size_t size = host.size();
  std::vector<char> keep(size, 1);
  if (host.packed()) {
    std::vector<FinMat> fds;
    fds.reserve(ds.size());
    for (const Matrix& d : ds) fds.push_back(detail::to_finmat(d));
    for (std::size_t i = 0; i < size; ++i) {
      FinMat x = host.fin_at(i);
      for (const FinMat& d : fds)
        if (!(x * d == d * x)) {
          keep[i] = 0;
          break;
        }
    }
  } else {
    for (std::size_t i = 0; i < size; ++i) {
      Matrix x = host.at(i);
      for (const Matrix& d : ds)
        if (!(mat_mul(x, d) == mat_mul(d, x))) {
          keep[i] = 0;
          break;
        }
    }
  }
  return keep;
}

// x = t_ij(b) for some b (b = 0 allowed): unit diagonal of ones, zeros
// elsewhere except position (i, j).
bool in_one_param(const Matrix& x, std::uint32_t i, std::uint32_t j) {
  const RingSpec& spec = x.ring();
  for (std::uint32_t r = 1; r <= x.n(); ++r)
    for (std::uint32_t c = 1; c <= x.n(); ++c) {
      if (r == c) {
        if (!is_one(spec, x.at(r, c))) return false;
      } else if (!(r == i && c == j)) {
        if (!is_zero(spec, x.at(r, c))) return false;
      }
    }
  return true;
}

void require_same_shape(const GroupSet& host, const SubgroupSet& m) {
  if (m.n != host.n() || m.ring.kind != host.ring().kind ||
      m.ring.modulus != host.ring().modulus)
    fail(errc::spec_mismatch, "target set and host live over different shapes");
}

std::string u64s(std::uint64_t v) { return std::to_string(v); }

}  // namespace

bool SubgroupSet::contains(const Matrix& m) const {
  return std::find(elements.begin(), elements.end(), m) != elements.end();
}

bool same_set(const SubgroupSet& s, const GroupSet& g) {
  if (s.elements.size() != g.size()) return false;
  if (g.packed()) {
    std::vector<std::uint64_t> keys = sorted_keys_of(s.elements);
    return keys == g.keys();
  }
  for (const Matrix& m : s.elements)
    if (!g.contains(m)) return false;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!s.contains(g.at(i))) return false;
  return true;
}

bool same_set(const SubgroupSet& s, const std::vector<Matrix>& mats) {
  if (s.elements.empty() && mats.empty()) return true;
  if (s.elements.empty() || mats.empty()) return false;
  const RingSpec& spec = s.elements.front().ring();
  if (fast_path(spec, s.n))
    return sorted_keys_of(s.elements) == sorted_keys_of(mats);
  if (s.elements.size() != mats.size()) return false;
  for (const Matrix& m : mats)
    if (!s.contains(m)) return false;
  for (const Matrix& m : s.elements)
    if (std::find(mats.begin(), mats.end(), m) == mats.end()) return false;
  return true;
}

SubgroupSet as_subgroup(const GroupSet& g, std::string label) {
  SubgroupSet out;
  out.ring = g.ring();
  out.n = g.n();
  out.label = std::move(label);
  out.elements.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.elements.push_back(g.at(i));
  out.subgroup_verified = g.closed() || attempt_verify(g, out.elements);
  return out;
}

SubgroupSet centralizer(const GroupSet& host, const std::vector<Matrix>& s) {
  check_host(host);
  SubgroupSet out;
  out.ring = host.ring();
  out.n = host.n();
  out.label = "centralizer";
  out.elements = pick(host, commuting_slice(host, s));
  out.subgroup_verified = attempt_verify(host, out.elements);
  if (!out.subgroup_verified && out.elements.size() <= kClosureLimit)
    fail(errc::spec_mismatch, "centralizer output failed its closure check");
  return out;
}

SubgroupSet derived_subgroup(const GroupSet& host, std::uint32_t width) {
  if (width == 0) fail(errc::bad_index, "width must be positive");
  check_host(host);
  if (!host.closed())
    fail(errc::spec_mismatch, "commutator grading needs a closed host group");
  const std::size_t size = host.size();
  SubgroupSet out;
  out.ring = host.ring();
  out.n = host.n();
  out.label = "derived";
  out.stable = false;
  out.stable_width = 0;

  std::vector<char> cur(size, 0);
  if (host.packed()) {
    const std::vector<std::uint64_t>& keys = host.keys();
    std::vector<FinMat> fm(size);
    std::vector<FinMat> inv(size);
    for (std::size_t i = 0; i < size; ++i) {
      fm[i] = host.fin_at(i);
      std::optional<FinMat> iv = detail::fin_inv(fm[i]);
      if (!iv) fail(errc::not_invertible, "host contains a singular matrix");
      inv[i] = *iv;
    }
    std::vector<FinMat> cj = host.generators();
    if (cj.empty()) cj = fm;
    std::vector<FinMat> cj_inv;
    cj_inv.reserve(cj.size());
    for (const FinMat& g : cj) cj_inv.push_back(*detail::fin_inv(g));

    // Conjugacy classes by orbit search, so the commutator set is assembled
    // as the union of inv(a) * class(a) instead of all host pairs.
    std::vector<std::int32_t> cls(size, -1);
    std::vector<std::vector<std::uint32_t>> classes;
    std::vector<std::uint32_t> stack;
    for (std::size_t seed = 0; seed < size; ++seed) {
      if (cls[seed] >= 0) continue;
      const std::int32_t c = static_cast<std::int32_t>(classes.size());
      classes.emplace_back();
      cls[seed] = c;
      stack.assign(1, static_cast<std::uint32_t>(seed));
      while (!stack.empty()) {
        const std::uint32_t x = stack.back();
        stack.pop_back();
        classes[c].push_back(x);
        for (std::size_t t = 0; t < cj.size(); ++t) {
          const std::size_t y = host_index(keys, (cj_inv[t] * fm[x] * cj[t]).key());
          if (cls[y] < 0) {
            cls[y] = c;
            stack.push_back(static_cast<std::uint32_t>(y));
          }
        }
      }
    }

    std::vector<char> in_k(size, 0);
    for (std::size_t a = 0; a < size; ++a)
      for (std::uint32_t c : classes[static_cast<std::size_t>(cls[a])])
        in_k[host_index(keys, (inv[a] * fm[c]).key())] = 1;
    std::vector<std::uint32_t> kvec;
    for (std::size_t i = 0; i < size; ++i)
      if (in_k[i]) kvec.push_back(static_cast<std::uint32_t>(i));

    cur = in_k;
    std::vector<std::uint32_t> curvec = kvec;
    std::uint32_t w = 1;
    while (true) {
      std::vector<char> nxt = cur;
      bool grew = false;
      std::vector<std::uint32_t> nxtvec = curvec;
      for (std::uint32_t s : curvec)
        for (std::uint32_t k : kvec) {
          const std::size_t p = host_index(keys, (fm[s] * fm[k]).key());
          if (!nxt[p]) {
            nxt[p] = 1;
            nxtvec.push_back(static_cast<std::uint32_t>(p));
            grew = true;
          }
        }
      if (!grew) {
        out.stable = true;
        out.stable_width = w;
        break;
      }
      if (w == width) break;
      cur.swap(nxt);
      curvec.swap(nxtvec);
      ++w;
    }
  } else {
    if (size > kExplicitLimit)
      fail(errc::too_large, "explicit-storage host exceeds " +
                                std::to_string(kExplicitLimit) + " elements");
    std::vector<Matrix> elems;
    elems.reserve(size);
    for (std::size_t i = 0; i < size; ++i) elems.push_back(host.at(i));
    auto index_of = [&](const Matrix& m) {
      auto it = std::find(elems.begin(), elems.end(), m);
      if (it == elems.end())
        fail(errc::spec_mismatch, "host is not closed under the required products");
      return static_cast<std::size_t>(it - elems.begin());
    };
    std::vector<char> in_k(size, 0);
    for (const Matrix& a : elems)
      for (const Matrix& b : elems) in_k[index_of(commutator(a, b))] = 1;
    std::vector<std::size_t> kvec;
    for (std::size_t i = 0; i < size; ++i)
      if (in_k[i]) kvec.push_back(i);
    cur = in_k;
    std::vector<std::size_t> curvec = kvec;
    std::uint32_t w = 1;
    while (true) {
      std::vector<char> nxt = cur;
      std::vector<std::size_t> nxtvec = curvec;
      bool grew = false;
      for (std::size_t s : curvec)
        for (std::size_t k : kvec) {
          const std::size_t p = index_of(mat_mul(elems[s], elems[k]));
          if (!nxt[p]) {
            nxt[p] = 1;
            nxtvec.push_back(p);
            grew = true;
          }
        }
      if (!grew) {
        out.stable = true;
        out.stable_width = w;
        break;
      }
      if (w == width) break;
      cur.swap(nxt);
      curvec.swap(nxtvec);
      ++w;
    }
  }

  out.elements = pick(host, cur);
  out.subgroup_verified = attempt_verify(host, out.elements);
  return out;
}

SubgroupSet dn_formula(const GroupSet& host) {
  check_host(host);
  const RingSpec& spec = host.ring();
  if (!spec.field())
    fail(errc::not_field, "the diagonal formula needs field scalars");
  if (spec.finite() && spec.characteristic() == 2)
    fail(errc::char_two, "d_i(-1) is the identity when -1 = 1");
  const std::uint32_t n = host.n();
  const RingElem neg_one = ring_neg(spec, ring_one(spec));
  std::vector<Matrix> ds;
  ds.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i)
    ds.push_back(diag_elem(spec, n, i, neg_one));

  SubgroupSet out;
  out.ring = spec;
  out.n = n;
  out.label = "dn";
  const std::vector<char> keep = commuting_slice(host, ds);
  std::vector<char> slice(host.size(), 0);
  for (std::size_t i = 0; i < host.size(); ++i)
    slice[i] = is_diagonal(host.at(i)) ? 1 : 0;
  if (keep != slice)
    fail(errc::spec_mismatch,
         "commutation with the d_i(-1) did not cut out the diagonal slice");
  out.elements = pick(host, keep);
  out.subgroup_verified = attempt_verify(host, out.elements);
  return out;
}

SubgroupSet bn_formula(const GroupSet& host) {
  check_host(host);
  const RingSpec& spec = host.ring();
  if (!spec.field())
    fail(errc::not_field, "the diagonal formula needs field scalars");
  if (spec.finite() && spec.characteristic() == 2)
    fail(errc::char_two, "d_i(-1) is the identity when -1 = 1");
  const std::uint32_t n = host.n();

  const GroupSet z = center_of(host);
  if (z.size() != 1 || !z.contains(identity(spec, n)))
    fail(errc::spec_mismatch, "the host must have trivial center");

  const RingElem neg_one = ring_neg(spec, ring_one(spec));
  std::vector<Matrix> ds;
  ds.reserve(n - 1);
  for (std::uint32_t i = 1; i + 1 <= n; ++i)
    ds.push_back(diag_elem(spec, n, i, neg_one));

  SubgroupSet out;
  out.ring = spec;
  out.n = n;
  out.label = "bn";
  const std::vector<char> keep = commuting_slice(host, ds);
  std::vector<char> slice(host.size(), 0);
  for (std::size_t i = 0; i < host.size(); ++i) {
    const Matrix x = host.at(i);
    slice[i] = (is_diagonal(x) && is_one(spec, x.at(n, n))) ? 1 : 0;
  }
  if (keep != slice)
    fail(errc::spec_mismatch,
         "commutation with d_1(-1)..d_{n-1}(-1) did not cut out the expected "
         "diagonal slice");
  out.elements = pick(host, keep);
  out.subgroup_verified = attempt_verify(host, out.elements);
  return out;
}

SubgroupSet dk_formula(const GroupSet& host, std::uint32_t k) {
  const std::uint32_t n = host.n();
  if (k < 1 || k + 1 > n) fail(errc::bad_index, "k must lie in [1, n-1]");
  SubgroupSet b = bn_formula(host);
  const RingSpec& spec = host.ring();

  std::vector<Matrix> ts;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = i + 1; j <= n; ++j)
      if (i != k && j != k) ts.push_back(transvection(spec, n, i, j, ring_one(spec)));

  SubgroupSet out;
  out.ring = spec;
  out.n = n;
  out.label = "dk";
  for (const Matrix& x : b.elements) {
    bool keep = true;
    for (const Matrix& t : ts)
      if (!(mat_mul(x, t) == mat_mul(t, x))) {
        keep = false;
        break;
      }
    if (keep) out.elements.push_back(x);
  }

  std::vector<Matrix> slice;
  for (std::size_t i = 0; i < host.size(); ++i) {
    const Matrix x = host.at(i);
    if (!is_diagonal(x)) continue;
    bool shaped = true;
    for (std::uint32_t j = 1; j <= n && shaped; ++j)
      if (j != k && !is_one(spec, x.at(j, j))) shaped = false;
    if (shaped) slice.push_back(x);
  }
  if (!same_set(out, slice))
    fail(errc::spec_mismatch,
         "the centralizing filter did not cut out the one-parameter diagonal "
         "subgroup at position k");
  out.subgroup_verified = attempt_verify(host, out.elements);
  return out;
}

SubgroupSet delta1_formula(const GroupSet& domain) {
  check_host(domain);
  const RingSpec& spec = domain.ring();
  const std::uint32_t n = domain.n();
  if (n < 2) fail(errc::bad_indices, "need n >= 2");

  struct Probe {
    std::uint32_t i, j;
    Matrix t;
  };
  std::vector<Probe> probes;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      if (i != j)
        probes.push_back({i, j, transvection(spec, n, i, j, ring_one(spec))});

  SubgroupSet out;
  out.ring = spec;
  out.n = n;
  out.label = "delta1";
  for (std::size_t idx = 0; idx < domain.size(); ++idx) {
    const Matrix x = domain.at(idx);
    const Matrix xi = mat_inv(x);
    bool keep = true;
    for (const Probe& p : probes) {
      const Matrix c = mat_mul(mat_mul(x, p.t), xi);
      if (p.i == 1 || p.j == 1) {
        if (!in_one_param(c, p.i, p.j)) {
          keep = false;
          break;
        }
      } else if (!(c == p.t)) {
        keep = false;
        break;
      }
    }
    if (keep) out.elements.push_back(x);
  }
  out.subgroup_verified = attempt_verify(domain, out.elements);
  return out;
}

SubgroupSet isolator(const GroupSet& host, const SubgroupSet& m,
                     isolator_mode mode) {
  check_host(host);
  require_same_shape(host, m);
  const RingSpec& spec = host.ring();
  const std::uint32_t n = host.n();

  const bool packed = host.packed();
  std::vector<std::uint64_t> mkeys;
  std::unordered_set<Matrix, MatrixHash> mset;
  if (packed)
    mkeys = sorted_keys_of(m.elements);
  else
    mset.insert(m.elements.begin(), m.elements.end());
  auto member = [&](const Matrix& x) {
    return packed ? key_member(mkeys, detail::to_finmat(x).key())
                  : mset.count(x) > 0;
  };

  std::vector<Matrix> conj;
  if (!host.generators().empty()) {
    for (const FinMat& g : host.generators())
      conj.push_back(detail::from_finmat(spec, g));
  } else {
    for (std::size_t i = 0; i < host.size(); ++i) conj.push_back(host.at(i));
  }
  for (const Matrix& s : m.elements)
    for (const Matrix& g : conj)
      if (!member(conjugate(s, g)))
        fail(errc::not_normal,
             "the target set is not invariant under host conjugation");

  SubgroupSet out;
  out.ring = spec;
  out.n = n;
  out.label = mode == isolator_mode::fixed_exponent ? "isolator-fixed"
                                                    : "isolator-any";
  if (packed) {
    for (std::size_t i = 0; i < host.size(); ++i) {
      const FinMat g = host.fin_at(i);
      if (mode == isolator_mode::fixed_exponent) {
        if (key_member(mkeys, fin_pow(g, n).key())) out.elements.push_back(host.at(i));
      } else {
        FinMat p = g;
        for (std::size_t step = 0; step < host.size(); ++step) {
          if (key_member(mkeys, p.key())) {
            out.elements.push_back(host.at(i));
            break;
          }
          p = p * g;
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < host.size(); ++i) {
      const Matrix g = host.at(i);
      if (mode == isolator_mode::fixed_exponent) {
        if (member(mat_pow(g, n))) out.elements.push_back(g);
      } else {
        Matrix p = g;
        for (std::size_t step = 0; step < host.size(); ++step) {
          if (member(p)) {
            out.elements.push_back(g);
            break;
          }
          p = mat_mul(p, g);
        }
      }
    }
  }
  out.subgroup_verified = attempt_verify(host, out.elements);
  return out;
}

Report a4_sequence_report(const RingSpec& spec, std::uint32_t n,
                          std::uint64_t cap) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!spec.finite()) fail(errc::infinite_ring, "needs a finite scalar field");
  if (!spec.field()) fail(errc::not_field, "needs field scalars");
  if (n < 2) fail(errc::bad_indices, "need n >= 2");

  Report rep("a4");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", u64s(n));

  const std::vector<RingElem> us = units(spec);
  const std::uint64_t m = us.size();
  const std::uint64_t g = std::gcd<std::uint64_t>(n, m);

  std::vector<std::uint64_t> p;  // det values of the scalar subgroup: {u^n}
  std::vector<std::uint64_t> h1;  // units with u^n = 1
  for (const RingElem& u : us) {
    const RingElem un = ring_pow(spec, u, n);
    p.push_back(residue(un));
    if (is_one(spec, un)) h1.push_back(residue(u));
  }
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  std::sort(h1.begin(), h1.end());

  // det values of Is(G'Z) = {u : u^n lies in P}; always everything.
  std::vector<std::uint64_t> prez;
  for (const RingElem& u : us)
    if (key_member(p, residue(ring_pow(spec, u, n)))) prez.push_back(residue(u));

  // det values of Is(G')Z: products H1 * P.
  std::vector<std::uint64_t> h1p;
  for (std::uint64_t h : h1)
    for (std::uint64_t q : p) {
      const RingElem prod = ring_mul(spec, RingElem{h}, RingElem{q});
      h1p.push_back(residue(prod));
    }
  std::sort(h1p.begin(), h1p.end());
  h1p.erase(std::unique(h1p.begin(), h1p.end()), h1p.end());

  rep.add("unit-group-order", "|F^x| = q - 1", u64s(spec.modulus - 1), u64s(m));
  rep.add("a4-index", "[G : Is(G')] = gcd(n, q-1)", u64s(g),
          u64s(m / p.size()));
  rep.add("roots-of-unity", "|{u : u^n = 1}| = gcd(n, q-1)", u64s(g),
          u64s(h1.size()));

  const std::uint64_t mg = m / g;
  const std::uint64_t gg = std::gcd(g, mg);
  rep.add("chain-0", "[G : Is(G'Z)] = 1", "1", u64s(m / prez.size()));
  rep.add("chain-1", "[Is(G'Z) : Is(G')Z] = gcd(g, (q-1)/g)", u64s(gg),
          u64s(prez.size() / h1p.size()));
  rep.add("chain-2", "[Is(G')Z : Is(G')] = ((q-1)/g)/gcd(g, (q-1)/g)",
          u64s(mg / gg), u64s(h1p.size() / h1.size()));
  rep.add("chain-3", "[Is(G') : G'] = gcd(n, q-1)", u64s(g), u64s(h1.size()));
  rep.add("chain-product", "the four indices multiply to q - 1", u64s(m),
          u64s((m / prez.size()) * (prez.size() / h1p.size()) *
               (h1p.size() / h1.size()) * h1.size()));

  std::vector<std::uint64_t> d1z;
  for (std::uint64_t q : p)
    for (const RingElem& u : us)
      d1z.push_back(residue(ring_mul(spec, RingElem{q}, u)));
  std::sort(d1z.begin(), d1z.end());
  d1z.erase(std::unique(d1z.begin(), d1z.end()), d1z.end());
  rep.add("gen-by-d1z", "det(G' Z d_1(F^x)) covers F^x", u64s(m),
          u64s(d1z.size()));

  if (predicted_order(spec, n, group_kind::GL) <= bigint(cap)) {
    const GroupSet gl = enumerate_group(spec, n, group_kind::GL, cap);
    const GroupSet z = center_of(gl);
    std::vector<std::uint64_t> sl_keys;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const FinMat f = gl.fin_at(i);
      if (detail::fin_det(f) == 1) sl_keys.push_back(f.key());
    }
    std::sort(sl_keys.begin(), sl_keys.end());
    rep.add("literal-derived-index", "[G : G'] = q - 1", u64s(m),
            u64s(gl.size() / sl_keys.size()));

    std::uint64_t iso_count = 0;
    for (std::size_t i = 0; i < gl.size(); ++i)
      if (key_member(sl_keys, fin_pow(gl.fin_at(i), n).key())) ++iso_count;
    rep.add("literal-isolator", "|Is(G')| = gcd(n, q-1) |G'|",
            u64s(g * sl_keys.size()), u64s(iso_count));

    std::vector<std::uint64_t> prod_keys;
    prod_keys.reserve(sl_keys.size() * z.size() * m);
    for (std::uint64_t sk : sl_keys) {
      const FinMat s =
          FinMat::from_key(sk, n, static_cast<std::uint32_t>(spec.modulus));
      for (std::size_t zi = 0; zi < z.size(); ++zi) {
        const FinMat sz = s * z.fin_at(zi);
        for (const RingElem& u : us) {
          const FinMat d1 = detail::to_finmat(diag_elem(spec, n, 1, u));
          prod_keys.push_back((sz * d1).key());
        }
      }
    }
    std::sort(prod_keys.begin(), prod_keys.end());
    prod_keys.erase(std::unique(prod_keys.begin(), prod_keys.end()),
                    prod_keys.end());
    rep.add("literal-gen-by-d1z", "G' Z d_1(F^x) exhausts G", u64s(gl.size()),
            u64s(prod_keys.size()));
  }

  rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

Report d1_power_identity(const RingSpec& spec, std::uint32_t n) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!spec.finite()) fail(errc::infinite_ring, "needs a finite scalar ring");
  if (n < 2) fail(errc::bad_indices, "need n >= 2");

  Report rep("d1-power");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", u64s(n));

  detail::Tally t;
  for (const RingElem& a : units(spec)) {
    const Matrix lhs = diag_elem(spec, n, 1, ring_pow(spec, a, n));
    Matrix rhs = scalar_elem(spec, n, a);
    const RingElem ai = ring_inv(spec, a);
    for (std::uint32_t i = 2; i <= n; ++i) {
      rhs = mat_mul(rhs, diag_elem(spec, n, 1, a));
      rhs = mat_mul(rhs, diag_elem(spec, n, i, ai));
    }
    t.note(lhs == rhs);
  }
  detail::record_tally(rep, "d1-power",
                       "d_1(a^n) = aI prod_{i=2..n} d_1(a) d_i(a^-1)", t);
  rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

}  // namespace mgi
