#include "mgi/cohom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mgi/error.hpp"
#include "mgi/tally.hpp"

namespace mgi {
namespace {

constexpr std::uint64_t kGroupLimit = 64;       // per-side cap for cocycle tables
constexpr std::uint64_t kExtensionLimit = 1024;  // cap for |E(f)|

void require_small(const FinAbGroup& g, const char* side) {
  if (g.size() > kGroupLimit) {
    fail(errc::too_large, std::string(side) + " has order " +
                              std::to_string(g.size()) + " (limit " +
                              std::to_string(kGroupLimit) + ")");
  }
}

void require_same_shape(const Cocycle& f, const Cocycle& g) {
  if (!(f.domain == g.domain) || !(f.codomain == g.codomain)) {
    fail(errc::spec_mismatch,
         "cocycles live over different domain/codomain pairs");
  }
}

// Silent validity test used where a Report would be overkill: returns the
// first failing description, or an empty string when f is a genuine
// (normalized) cocycle that also honors its symmetry flag.
std::string first_violation(const Cocycle& f) {
  const std::uint64_t b = f.domain.size();
  for (std::uint32_t x = 0; x < b; ++x) {
    if (f.at(0, x) != 0 || f.at(x, 0) != 0) {
      return "normalization fails at x = " + std::to_string(x);
    }
  }
  for (std::uint32_t x = 0; x < b; ++x) {
    for (std::uint32_t y = 0; y < b; ++y) {
      for (std::uint32_t z = 0; z < b; ++z) {
        const std::uint32_t lhs =
            f.codomain.add(f.at(f.domain.add(x, y), z), f.at(x, y));
        const std::uint32_t rhs =
            f.codomain.add(f.at(x, f.domain.add(y, z)), f.at(y, z));
        if (lhs != rhs) {
          return "cocycle identity fails at (x,y,z) = (" + std::to_string(x) +
                 "," + std::to_string(y) + "," + std::to_string(z) + ")";
        }
      }
    }
  }
  if (f.symmetric_flag) {
    for (std::uint32_t x = 0; x < b; ++x) {
      for (std::uint32_t y = 0; y < x; ++y) {
        if (f.at(x, y) != f.at(y, x)) {
          return "symmetry fails at (x,y) = (" + std::to_string(x) + "," +
                 std::to_string(y) + ")";
        }
      }
    }
  }
  return {};
}

// Product in E(f): (b1,a1)(b2,a2) = (b1+b2, a1+a2+f(b1,b2)).
std::pair<std::uint32_t, std::uint32_t> ext_mul(
    const Cocycle& f, std::pair<std::uint32_t, std::uint32_t> p,
    std::pair<std::uint32_t, std::uint32_t> q) {
  return {f.domain.add(p.first, q.first),
          f.codomain.add(f.codomain.add(p.second, q.second),
                         f.at(p.first, q.first))};
}

// Restriction of f along an injective coordinate embedding: `embed` maps a
// subgroup index to a domain index.
template <typename Embed>
Cocycle restrict_cocycle(const Cocycle& f, FinAbGroup sub, Embed embed) {
  const std::uint64_t s = sub.size();
  std::vector<std::uint32_t> table(s * s, 0);
  for (std::uint32_t x = 0; x < s; ++x) {
    for (std::uint32_t y = 0; y < s; ++y) {
      table[x * s + y] = f.at(embed(x), embed(y));
    }
  }
  return make_cocycle(std::move(sub), f.codomain, std::move(table),
                      f.symmetric_flag);
}

}  // namespace

std::uint64_t FinAbGroup::size() const {
  std::uint64_t n = 1;
  for (std::uint32_t m : orders) {
    if (m == 0) fail(errc::bad_index, "cyclic factor of order zero");
    n *= m;
  }
  return n;
}

std::uint32_t FinAbGroup::add(std::uint32_t x, std::uint32_t y) const {
  std::uint32_t out = 0;
  std::uint32_t stride = 1;
  for (std::uint32_t m : orders) {
    const std::uint32_t xi = x % m;
    const std::uint32_t yi = y % m;
    x /= m;
    y /= m;
    out += ((xi + yi) % m) * stride;
    stride *= m;
  }
  return out;
}

std::uint32_t FinAbGroup::neg(std::uint32_t x) const {
  std::uint32_t out = 0;
  std::uint32_t stride = 1;
  for (std::uint32_t m : orders) {
    const std::uint32_t xi = x % m;
    x /= m;
    out += ((m - xi) % m) * stride;
    stride *= m;
  }
  return out;
}

std::uint32_t FinAbGroup::sub(std::uint32_t x, std::uint32_t y) const {
  return add(x, neg(y));
}

std::vector<std::uint32_t> FinAbGroup::tuple(std::uint32_t idx) const {
  std::vector<std::uint32_t> t(orders.size(), 0);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    t[i] = idx % orders[i];
    idx /= orders[i];
  }
  return t;
}

std::uint32_t FinAbGroup::index(const std::vector<std::uint32_t>& t) const {
  if (t.size() != orders.size()) {
    fail(errc::bad_index, "tuple length does not match the factor count");
  }
  std::uint32_t out = 0;
  std::uint32_t stride = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (t[i] >= orders[i]) fail(errc::bad_index, "residue out of range");
    out += t[i] * stride;
    stride *= orders[i];
  }
  return out;
}

std::uint64_t FinAbGroup::element_order(std::uint32_t x) const {
  std::uint64_t ord = 1;
  for (std::uint32_t m : orders) {
    const std::uint32_t xi = x % m;
    x /= m;
    const std::uint64_t oi = m / std::gcd<std::uint64_t>(xi, m);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

std::string FinAbGroup::describe() const {
  if (orders.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + std::to_string(orders[i]);
  }
  return out;
}

std::uint32_t Cocycle::at(std::uint32_t x, std::uint32_t y) const {
  return table[static_cast<std::size_t>(x) * domain.size() + y];
}

Cocycle make_cocycle(FinAbGroup b, FinAbGroup a, std::vector<std::uint32_t> table,
                     bool symmetric) {
  require_small(b, "the domain");
  require_small(a, "the codomain");
  const std::uint64_t bs = b.size();
  const std::uint64_t as = a.size();
  if (table.size() != bs * bs) {
    fail(errc::invalid_cocycle,
         "table has " + std::to_string(table.size()) + " entries, expected " +
             std::to_string(bs * bs));
  }
  for (std::uint32_t v : table) {
    if (v >= as) {
      fail(errc::invalid_cocycle, "table entry outside the codomain");
    }
  }
  Cocycle f;
  f.domain = std::move(b);
  f.codomain = std::move(a);
  f.table = std::move(table);
  f.symmetric_flag = symmetric;
  return f;
}

Cocycle trivial_cocycle(const FinAbGroup& b, const FinAbGroup& a) {
  require_small(b, "the domain");
  require_small(a, "the codomain");
  return make_cocycle(b, a,
                      std::vector<std::uint32_t>(b.size() * b.size(), 0), true);
}

Cocycle cocycle_product(const Cocycle& f, const Cocycle& g) {
  require_same_shape(f, g);
  std::vector<std::uint32_t> table(f.table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = f.codomain.add(f.table[i], g.table[i]);
  }
  return make_cocycle(f.domain, f.codomain, std::move(table),
                      f.symmetric_flag && g.symmetric_flag);
}

Cocycle cocycle_inverse(const Cocycle& f) {
  std::vector<std::uint32_t> table(f.table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = f.codomain.neg(f.table[i]);
  }
  return make_cocycle(f.domain, f.codomain, std::move(table), f.symmetric_flag);
}

Report cocycle_check(const Cocycle& f) {
  Report rep("cocycle");
  rep.set_param("domain", f.domain.describe());
  rep.set_param("codomain", f.codomain.describe());
  rep.set_param("symmetric", f.symmetric_flag ? "yes" : "no");

  const std::uint64_t b = f.domain.size();

  detail::Tally norm;
  std::string norm_first;
  for (std::uint32_t x = 0; x < b; ++x) {
    const bool left = f.at(0, x) == 0;
    const bool right = f.at(x, 0) == 0;
    if ((!left || !right) && norm_first.empty()) {
      norm_first = "x = " + std::to_string(x);
    }
    norm.note(left);
    norm.note(right);
  }
  detail::record_tally(rep, "normalization", "f(1,x) = f(x,1) = 1", norm);
  if (norm.failures) {
    rep.add("normalization-first-violation", "f(1,x) = f(x,1) = 1", "none",
            norm_first);
  }

  detail::Tally ident;
  std::string ident_first;
  for (std::uint32_t x = 0; x < b; ++x) {
    for (std::uint32_t y = 0; y < b; ++y) {
      for (std::uint32_t z = 0; z < b; ++z) {
        const std::uint32_t lhs =
            f.codomain.add(f.at(f.domain.add(x, y), z), f.at(x, y));
        const std::uint32_t rhs =
            f.codomain.add(f.at(x, f.domain.add(y, z)), f.at(y, z));
        const bool ok = lhs == rhs;
        if (!ok && ident_first.empty()) {
          ident_first = "(x,y,z) = (" + std::to_string(x) + "," +
                        std::to_string(y) + "," + std::to_string(z) + ")";
        }
        ident.note(ok);
      }
    }
  }
  detail::record_tally(rep, "cocycle-identity", "f(xy,z) f(x,y) = f(x,yz) f(y,z)",
                       ident);
  if (ident.failures) {
    CheckRecord r;
    r.id = "identity-first-violation";
    r.anchor = "f(xy,z) f(x,y) = f(x,yz) f(y,z)";
    r.expected = "none";
    r.observed = ident_first;
    r.pass = false;
    rep.add(std::move(r));
  }

  if (f.symmetric_flag) {
    detail::Tally sym;
    std::string sym_first;
    for (std::uint32_t x = 0; x < b; ++x) {
      for (std::uint32_t y = 0; y <= x; ++y) {
        const bool ok = f.at(x, y) == f.at(y, x);
        if (!ok && sym_first.empty()) {
          sym_first = "(x,y) = (" + std::to_string(x) + "," +
                      std::to_string(y) + ")";
        }
        sym.note(ok);
      }
    }
    detail::record_tally(rep, "symmetry", "f(x,y) = f(y,x)", sym);
    if (sym.failures) {
      CheckRecord r;
      r.id = "symmetry-first-violation";
      r.anchor = "f(x,y) = f(y,x)";
      r.expected = "none";
      r.observed = sym_first;
      r.pass = false;
      rep.add(std::move(r));
    }
  }
  return rep;
}

Cocycle coboundary_from(const FinAbGroup& b, const FinAbGroup& a,
                        const std::vector<std::uint32_t>& psi) {
  require_small(b, "the domain");
  require_small(a, "the codomain");
  const std::uint64_t bs = b.size();
  const std::uint64_t as = a.size();
  if (psi.size() != bs) {
    fail(errc::invalid_cocycle, "psi must be total on the domain");
  }
  for (std::uint32_t v : psi) {
    if (v >= as) fail(errc::invalid_cocycle, "psi value outside the codomain");
  }
  if (psi[0] != 0) {
    fail(errc::invalid_cocycle, "psi must send the identity to the identity");
  }
  std::vector<std::uint32_t> table(bs * bs, 0);
  for (std::uint32_t x = 0; x < bs; ++x) {
    for (std::uint32_t y = 0; y < bs; ++y) {
      table[x * bs + y] = a.sub(a.sub(psi[b.add(x, y)], psi[x]), psi[y]);
    }
  }
  return make_cocycle(b, a, std::move(table), true);
}

std::optional<std::vector<std::uint32_t>> is_coboundary(const Cocycle& f) {
  // Coboundaries over an abelian domain are symmetric cocycles, so anything
  // failing those axioms has no witness.
  if (!first_violation(Cocycle{f.domain, f.codomain, f.table, true}).empty()) {
    return std::nullopt;
  }

  // A witness exists exactly when E(f) splits over B. Since E(f) is abelian
  // here, a section is assembled one cyclic factor at a time: it suffices to
  // give each generator e_i an a-part making (e_i, a_i) have order dividing
  // m_i, and the choices are independent.
  const std::size_t k = f.domain.orders.size();
  const std::uint64_t as = f.codomain.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> gens(k, {0, 0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint32_t m = f.domain.orders[i];
    std::vector<std::uint32_t> e(k, 0);
    if (m > 1) e[i] = 1;
    const std::uint32_t ei = f.domain.index(e);
    bool found = false;
    for (std::uint32_t a = 0; a < as && !found; ++a) {
      std::pair<std::uint32_t, std::uint32_t> acc{0, 0};
      for (std::uint32_t t = 0; t < m; ++t) acc = ext_mul(f, acc, {ei, a});
      if (acc.first == 0 && acc.second == 0) {
        gens[i] = {ei, a};
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }

  // psi is the a-part of the section: f = d(psi) follows from s(x)s(y) = s(xy).
  const std::uint64_t bs = f.domain.size();
  std::vector<std::uint32_t> psi(bs, 0);
  for (std::uint32_t x = 0; x < bs; ++x) {
    const std::vector<std::uint32_t> t = f.domain.tuple(x);
    std::pair<std::uint32_t, std::uint32_t> acc{0, 0};
    for (std::size_t i = 0; i < k; ++i) {
      for (std::uint32_t r = 0; r < t[i]; ++r) acc = ext_mul(f, acc, gens[i]);
    }
    psi[x] = acc.second;
  }
  const Cocycle check = coboundary_from(f.domain, f.codomain, psi);
  if (check.table != f.table) {
    fail(errc::witness_check_failed,
         "section produced a psi whose coboundary differs from f");
  }
  return psi;
}

CohomologousResult cohomologous(const Cocycle& f1, const Cocycle& f2) {
  require_same_shape(f1, f2);
  const Cocycle h = cocycle_product(f1, cocycle_inverse(f2));
  CohomologousResult out;
  if (auto w = is_coboundary(h)) {
    out.equivalent = true;
    out.psi = std::move(*w);
  }
  return out;
}

TableGroup extension_group(const Cocycle& f) {
  const std::string bad = first_violation(f);
  if (!bad.empty()) fail(errc::invalid_cocycle, bad);

  const std::uint64_t bs = f.domain.size();
  const std::uint64_t as = f.codomain.size();
  const std::uint64_t n = bs * as;
  if (n > kExtensionLimit) {
    fail(errc::too_large, "extension group would have order " +
                              std::to_string(n) + " (limit " +
                              std::to_string(kExtensionLimit) + ")");
  }

  TableGroup g;
  g.size = static_cast<std::uint32_t>(n);
  g.labels.reserve(n);
  for (std::uint32_t b = 0; b < bs; ++b) {
    for (std::uint32_t a = 0; a < as; ++a) g.labels.push_back({b, a});
  }
  g.identity = 0;  // labels are emitted in (b, a) lexicographic order
  g.mult.assign(n * n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const auto p = ext_mul(f, g.labels[x], g.labels[y]);
      g.mult[x * n + y] =
          p.first * static_cast<std::uint32_t>(as) + p.second;
    }
  }

  // Group axioms. The cocycle identity already implies associativity, but the
  // table is certified directly: in full at small sizes, on a fixed sample
  // grid above that.
  for (std::uint32_t x = 0; x < n; ++x) {
    if (g.product(g.identity, x) != x || g.product(x, g.identity) != x) {
      fail(errc::invalid_cocycle, "identity axiom failed in the product table");
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    bool has_inverse = false;
    for (std::uint32_t y = 0; y < n && !has_inverse; ++y) {
      has_inverse = g.product(x, y) == g.identity &&
                    g.product(y, x) == g.identity;
    }
    if (!has_inverse) {
      fail(errc::invalid_cocycle, "inverse axiom failed in the product table");
    }
  }
  if (n <= 256) {
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = 0; y < n; ++y) {
        for (std::uint32_t z = 0; z < n; ++z) {
          if (g.product(g.product(x, y), z) != g.product(x, g.product(y, z))) {
            fail(errc::invalid_cocycle, "associativity failed in the product table");
          }
        }
      }
    }
  } else {
    const std::uint32_t step = static_cast<std::uint32_t>(n / 64 + 1);
    for (std::uint32_t x = 0; x < n; x += 1) {
      for (std::uint32_t y = 0; y < n; y += step) {
        for (std::uint32_t z = 0; z < n; z += step) {
          if (g.product(g.product(x, y), z) != g.product(x, g.product(y, z))) {
            fail(errc::invalid_cocycle, "associativity failed in the product table");
          }
        }
      }
    }
  }
  return g;
}

std::uint32_t TableGroup::product(std::uint32_t x, std::uint32_t y) const {
  return mult[static_cast<std::size_t>(x) * size + y];
}

std::uint32_t TableGroup::inverse_of(std::uint32_t x) const {
  for (std::uint32_t y = 0; y < size; ++y) {
    if (product(x, y) == identity && product(y, x) == identity) return y;
  }
  fail(errc::spec_mismatch, "element has no inverse in the table");
}

std::uint64_t TableGroup::element_order(std::uint32_t x) const {
  std::uint64_t ord = 1;
  std::uint32_t acc = x;
  while (acc != identity) {
    acc = product(acc, x);
    ++ord;
    if (ord > size) fail(errc::spec_mismatch, "order walk failed to close");
  }
  return ord;
}

std::vector<std::uint64_t> TableGroup::order_multiset() const {
  std::vector<std::uint64_t> out;
  out.reserve(size);
  for (std::uint32_t x = 0; x < size; ++x) out.push_back(element_order(x));
  std::sort(out.begin(), out.end());
  return out;
}

bool TableGroup::abelian() const {
  for (std::uint32_t x = 0; x < size; ++x) {
    for (std::uint32_t y = 0; y < x; ++y) {
      if (product(x, y) != product(y, x)) return false;
    }
  }
  return true;
}

ExtClasses ext_group(const FinAbGroup& b, const FinAbGroup& a,
                     std::uint64_t cap) {
  require_small(b, "the domain");
  require_small(a, "the codomain");
  const std::uint64_t bs = b.size();
  const std::uint64_t as = a.size();

  // Free positions of a normalized symmetric table: pairs (x, y) with
  // 1 <= y <= x. Everything else is forced by normalization or symmetry.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
  for (std::uint32_t x = 1; x < bs; ++x) {
    for (std::uint32_t y = 1; y <= x; ++y) free_pos.push_back({x, y});
  }
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < free_pos.size(); ++i) {
    if (candidates > cap / std::max<std::uint64_t>(as, 1)) {
      fail(errc::too_large, "enumeration of symmetric cocycles exceeds the cap");
    }
    candidates *= as;
  }
  if (candidates > cap) {
    fail(errc::too_large, "enumeration of symmetric cocycles exceeds the cap");
  }
  std::uint64_t psi_count = 1;
  for (std::uint64_t i = 1; i < bs; ++i) {
    if (psi_count > cap / std::max<std::uint64_t>(as, 1)) {
      fail(errc::too_large, "enumeration of coboundaries exceeds the cap");
    }
    psi_count *= as;
  }

  // All normalized symmetric cocycles, in lexicographic table order.
  std::vector<std::vector<std::uint32_t>> cocycles;
  std::vector<std::uint32_t> digits(free_pos.size(), 0);
  for (std::uint64_t c = 0; c < candidates; ++c) {
    std::vector<std::uint32_t> table(bs * bs, 0);
    for (std::size_t i = 0; i < free_pos.size(); ++i) {
      const auto [x, y] = free_pos[i];
      table[x * bs + y] = digits[i];
      table[y * bs + x] = digits[i];
    }
    Cocycle f;
    f.domain = b;
    f.codomain = a;
    f.table = table;
    f.symmetric_flag = true;
    if (first_violation(f).empty()) cocycles.push_back(std::move(table));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < as) break;
      digits[i] = 0;
    }
  }
  std::sort(cocycles.begin(), cocycles.end());

  // The coboundary subgroup, as a deduplicated table set.
  std::set<std::vector<std::uint32_t>> coboundaries;
  std::vector<std::uint32_t> psi(bs, 0);
  for (std::uint64_t c = 0; c < psi_count; ++c) {
    coboundaries.insert(coboundary_from(b, a, psi).table);
    for (std::uint64_t i = 1; i < bs; ++i) {
      if (++psi[i] < as) break;
      psi[i] = 0;
    }
  }

  // Coset decomposition: scan in lexicographic order, covering each new
  // class by translating the coboundary subgroup.
  std::set<std::vector<std::uint32_t>> covered;
  ExtClasses out;
  for (const auto& table : cocycles) {
    if (covered.count(table)) continue;
    out.reps.push_back(make_cocycle(b, a, table, true));
    for (const auto& cb : coboundaries) {
      std::vector<std::uint32_t> shifted(table.size());
      for (std::size_t i = 0; i < table.size(); ++i) {
        shifted[i] = a.add(table[i], cb[i]);
      }
      covered.insert(std::move(shifted));
    }
  }
  out.order = out.reps.size();

  if (out.order * coboundaries.size() != cocycles.size()) {
    fail(errc::spec_mismatch, "coboundary cosets do not partition the cocycles");
  }
  std::uint64_t oracle = 1;
  for (std::uint32_t m : b.orders) {
    for (std::uint32_t n : a.orders) oracle *= std::gcd(m, n);
  }
  if (out.order != oracle) {
    fail(errc::spec_mismatch,
         "class count " + std::to_string(out.order) +
             " disagrees with the gcd formula " + std::to_string(oracle));
  }
  return out;
}

CotResult cot_check(const Cocycle& f, const CotSplit& split) {
  const std::size_t k = f.domain.orders.size();
  std::vector<int> seen(k, 0);
  for (std::uint32_t c : split.torsion_coords) {
    if (c >= k) fail(errc::bad_split, "torsion coordinate out of range");
    ++seen[c];
  }
  for (std::uint32_t c : split.complement_coords) {
    if (c >= k) fail(errc::bad_split, "complement coordinate out of range");
    ++seen[c];
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (seen[i] != 1) {
      fail(errc::bad_split,
           "coordinate " + std::to_string(i) +
               " is not covered exactly once, so the factors do not directly "
               "decompose the domain");
    }
  }

  auto block_group = [&](const std::vector<std::uint32_t>& coords) {
    FinAbGroup g;
    for (std::uint32_t c : coords) g.orders.push_back(f.domain.orders[c]);
    return g;
  };
  auto block_embed = [&](const FinAbGroup& g,
                         const std::vector<std::uint32_t>& coords,
                         std::uint32_t idx) {
    std::vector<std::uint32_t> t(k, 0);
    const std::vector<std::uint32_t> s = g.tuple(idx);
    for (std::size_t i = 0; i < coords.size(); ++i) t[coords[i]] = s[i];
    return f.domain.index(t);
  };

  CotResult out;
  const FinAbGroup tg = block_group(split.torsion_coords);
  const FinAbGroup cg = block_group(split.complement_coords);
  out.torsion_part = restrict_cocycle(f, tg, [&](std::uint32_t x) {
    return block_embed(tg, split.torsion_coords, x);
  });
  out.complement_part = restrict_cocycle(f, cg, [&](std::uint32_t x) {
    return block_embed(cg, split.complement_coords, x);
  });

  // Two-block decomposition: f ~ lift(f_T) * lift(f_C), both lifts pulled
  // back along the coordinate projections.
  const std::uint64_t bs = f.domain.size();
  std::vector<std::uint32_t> product_table(bs * bs, 0);
  auto project = [&](const std::vector<std::uint32_t>& coords,
                     const FinAbGroup& g, std::uint32_t idx) {
    const std::vector<std::uint32_t> t = f.domain.tuple(idx);
    std::vector<std::uint32_t> s(coords.size(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) s[i] = t[coords[i]];
    return g.index(s);
  };
  for (std::uint32_t x = 0; x < bs; ++x) {
    for (std::uint32_t y = 0; y < bs; ++y) {
      const std::uint32_t tx = project(split.torsion_coords, tg, x);
      const std::uint32_t ty = project(split.torsion_coords, tg, y);
      const std::uint32_t cx = project(split.complement_coords, cg, x);
      const std::uint32_t cy = project(split.complement_coords, cg, y);
      product_table[x * bs + y] = f.codomain.add(
          out.torsion_part.at(tx, ty), out.complement_part.at(cx, cy));
    }
  }
  const Cocycle lifted =
      make_cocycle(f.domain, f.codomain, std::move(product_table), true);
  out.decomposition_verified = cohomologous(f, lifted).equivalent;

  if (auto w = is_coboundary(out.torsion_part)) {
    out.cot = true;
    out.psi = std::move(*w);
  }
  return out;
}

BnFactorization bn_factorize(const Cocycle& f) {
  const std::size_t k = f.domain.orders.size();
  if (k == 0) fail(errc::spec_mismatch, "the domain has no factors");
  const std::uint32_t m = f.domain.orders[0];
  for (std::uint32_t o : f.domain.orders) {
    if (o != m) {
      fail(errc::spec_mismatch,
           "all domain factors must be copies of one unit group");
    }
  }

  const FinAbGroup scalar{{m}};
  auto embed_at = [&](std::size_t i, std::uint32_t alpha) {
    std::vector<std::uint32_t> t(k, 0);
    t[i] = alpha;
    return f.domain.index(t);
  };

  BnFactorization out;
  for (std::size_t i = 0; i < k; ++i) {
    out.components.push_back(restrict_cocycle(
        f, scalar, [&](std::uint32_t x) { return embed_at(i, x); }));
  }

  // f against the lifted product of its per-factor restrictions.
  const std::uint64_t bs = f.domain.size();
  std::vector<std::uint32_t> product_table(bs * bs, 0);
  for (std::uint32_t x = 0; x < bs; ++x) {
    for (std::uint32_t y = 0; y < bs; ++y) {
      const std::vector<std::uint32_t> tx = f.domain.tuple(x);
      const std::vector<std::uint32_t> ty = f.domain.tuple(y);
      std::uint32_t acc = 0;
      for (std::size_t i = 0; i < k; ++i) {
        acc = f.codomain.add(acc, out.components[i].at(tx[i], ty[i]));
      }
      product_table[x * bs + y] = acc;
    }
  }
  const Cocycle lifted =
      make_cocycle(f.domain, f.codomain, std::move(product_table), true);
  out.product_cohomologous = cohomologous(f, lifted).equivalent;

  // Scalar relation: with diag(a) chosen as f(a,a) along the diagonal
  // embedding, fn(a,b) = diag(ab) diag(a)^-1 diag(b)^-1 f(a,b)^-1, and
  // fn ~ f^-1 because the two sides differ by the coboundary of diag.
  auto embed_diag = [&](std::uint32_t alpha) {
    return f.domain.index(std::vector<std::uint32_t>(k, alpha));
  };
  out.diagonal_restriction = restrict_cocycle(
      f, scalar, [&](std::uint32_t x) { return embed_diag(x); });
  std::vector<std::uint32_t> diag(m, 0);
  for (std::uint32_t alpha = 0; alpha < m; ++alpha) {
    diag[alpha] = out.diagonal_restriction.at(alpha, alpha);
  }
  out.fn = cocycle_product(coboundary_from(scalar, f.codomain, diag),
                           cocycle_inverse(out.diagonal_restriction));
  out.fn_matches_inverse =
      cohomologous(out.fn, cocycle_inverse(out.diagonal_restriction))
          .equivalent;
  return out;
}

}  // namespace mgi
