#include "mgi/deform.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "mgi/error.hpp"
#include "mgi/group_set.hpp"
#include "mgi/tally.hpp"

namespace mgi {
namespace {

constexpr std::uint32_t kExhaustiveAssoc = 512;  // full triple sweep up to here

void require_field(const RingSpec& spec) {
  if (!spec.finite()) fail(errc::infinite_ring, "deformations need a finite ring");
  if (!spec.field()) fail(errc::not_field, "deformations need a prime field");
}

// Least primitive root of GF(q); 1 for q = 2.
RingElem least_generator(const RingSpec& spec) {
  const std::uint64_t q = spec.modulus;
  if (q == 2) return ring_one(spec);
  for (std::uint64_t g = 2; g < q; ++g) {
    const RingElem e = ring_of(spec, static_cast<long long>(g));
    RingElem acc = e;
    std::uint64_t ord = 1;
    while (!is_one(spec, acc)) {
      acc = ring_mul(spec, acc, e);
      ++ord;
    }
    if (ord == q - 1) return e;
  }
  fail(errc::spec_mismatch, "no generator found for the unit group");
}

void check_torus_elem(const DeformContext& ctx, const DeformedTorusElem& x) {
  if (x.z >= ctx.z.size()) fail(errc::bad_index, "z index outside Z");
  if (x.b.size() + 1 != ctx.n) {
    fail(errc::bad_index, "torus tuple must have n-1 coordinates");
  }
  for (const RingElem& u : x.b) {
    if (!is_unit(ctx.ring, u)) fail(errc::non_unit, "torus coordinate not a unit");
  }
}

void check_tn_elem(const DeformContext& ctx, const DeformedTnElem& x) {
  if (!(x.u.ring() == ctx.ring) || x.u.n() != ctx.n) {
    fail(errc::spec_mismatch, "matrix part lives over the wrong ring or size");
  }
  if (!is_upper_unitriangular(x.u)) {
    fail(errc::not_unitriangular, "matrix part must be upper unitriangular");
  }
  check_torus_elem(ctx, x.t);
}

Matrix torus_matrix(const DeformContext& ctx, const std::vector<RingElem>& b) {
  std::vector<RingElem> diag = b;
  diag.push_back(ring_one(ctx.ring));
  return diag_full(ctx.ring, diag);
}

Matrix torus_matrix_inv(const DeformContext& ctx,
                        const std::vector<RingElem>& b) {
  std::vector<RingElem> diag;
  diag.reserve(ctx.n);
  for (const RingElem& u : b) diag.push_back(ring_inv(ctx.ring, u));
  diag.push_back(ring_one(ctx.ring));
  return diag_full(ctx.ring, diag);
}

// Derived subgroup of a verified table group: commutator set, then closure.
std::set<std::uint32_t> table_derived(const TableGroup& t) {
  std::vector<std::uint32_t> inv(t.size);
  for (std::uint32_t x = 0; x < t.size; ++x) inv[x] = t.inverse_of(x);
  std::set<std::uint32_t> s;
  s.insert(t.identity);
  for (std::uint32_t x = 0; x < t.size; ++x) {
    for (std::uint32_t y = 0; y < t.size; ++y) {
      s.insert(t.product(t.product(inv[x], inv[y]), t.product(x, y)));
    }
  }
  for (;;) {
    std::set<std::uint32_t> next = s;
    for (std::uint32_t x : s) {
      for (std::uint32_t y : s) next.insert(t.product(x, y));
    }
    if (next.size() == s.size()) return s;
    s.swap(next);
  }
}

// Order multiset of the quotient of a table group by a derived-set.
std::vector<std::uint64_t> quotient_multiset(const TableGroup& t,
                                             const std::set<std::uint32_t>& d) {
  // Right-coset representative: the least index in x * D.
  std::vector<std::uint32_t> rep(t.size);
  for (std::uint32_t x = 0; x < t.size; ++x) {
    std::uint32_t least = x;
    for (std::uint32_t e : d) least = std::min(least, t.product(x, e));
    rep[x] = least;
  }
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < t.size; ++x) {
    if (rep[x] == x) reps.push_back(x);
  }
  std::vector<std::uint64_t> orders;
  for (std::uint32_t r : reps) {
    std::uint64_t ord = 1;
    std::uint32_t acc = r;
    while (rep[acc] != t.identity) {
      acc = rep[t.product(acc, r)];
      ++ord;
    }
    orders.push_back(ord);
  }
  std::sort(orders.begin(), orders.end());
  return orders;
}

void verify_table_axioms(const TableGroup& g, errc code) {
  for (std::uint32_t x = 0; x < g.size; ++x) {
    if (g.product(g.identity, x) != x || g.product(x, g.identity) != x) {
      fail(code, "identity axiom failed in the instance table");
    }
  }
  for (std::uint32_t x = 0; x < g.size; ++x) {
    bool has = false;
    for (std::uint32_t y = 0; y < g.size && !has; ++y) {
      has = g.product(x, y) == g.identity && g.product(y, x) == g.identity;
    }
    if (!has) fail(code, "inverse axiom failed in the instance table");
  }
  if (g.size <= kExhaustiveAssoc) {
    for (std::uint32_t x = 0; x < g.size; ++x) {
      for (std::uint32_t y = 0; y < g.size; ++y) {
        for (std::uint32_t z = 0; z < g.size; ++z) {
          if (g.product(g.product(x, y), z) != g.product(x, g.product(y, z))) {
            fail(code, "associativity failed in the instance table");
          }
        }
      }
    }
  } else {
    std::mt19937 rng(20250816);
    for (int trial = 0; trial < 200000; ++trial) {
      const std::uint32_t x = rng() % g.size;
      const std::uint32_t y = rng() % g.size;
      const std::uint32_t z = rng() % g.size;
      if (g.product(g.product(x, y), z) != g.product(x, g.product(y, z))) {
        fail(code, "associativity failed in the instance table");
      }
    }
  }
}

void info_record(Report& rep, const std::string& id, const std::string& anchor,
                 const std::string& value) {
  rep.add(id, anchor, value, value);
}

std::string multiset_to_string(const std::vector<std::uint64_t>& m) {
  std::string out = "{";
  std::uint64_t run_value = 0;
  std::uint64_t run_count = 0;
  auto flush = [&] {
    if (!run_count) return;
    if (out.size() > 1) out += ", ";
    out += std::to_string(run_value);
    if (run_count > 1) out += "^" + std::to_string(run_count);
  };
  for (std::uint64_t v : m) {
    if (run_count && v == run_value) {
      ++run_count;
    } else {
      flush();
      run_value = v;
      run_count = 1;
    }
  }
  flush();
  return out + "}";
}

}  // namespace

std::uint32_t DeformContext::unit_index(const RingElem& u) const {
  if (!is_unit(ring, u)) fail(errc::non_unit, "not a unit");
  return dlog[residue(u)];
}

const RingElem& DeformContext::unit_at(std::uint32_t k) const {
  return unit_powers[k % unit_powers.size()];
}

std::uint32_t DeformContext::b_index(const std::vector<RingElem>& b) const {
  if (b.size() + 1 != n) fail(errc::bad_index, "tuple must have n-1 coordinates");
  std::vector<std::uint32_t> t;
  t.reserve(b.size());
  for (const RingElem& u : b) t.push_back(unit_index(u));
  return f.domain.index(t);
}

std::vector<RingElem> DeformContext::b_tuple(std::uint32_t idx) const {
  const std::vector<std::uint32_t> t = f.domain.tuple(idx);
  std::vector<RingElem> b;
  b.reserve(t.size());
  for (std::uint32_t k : t) b.push_back(unit_powers[k]);
  return b;
}

DeformContext make_deform_context(const RingSpec& spec, std::uint32_t n,
                                  FinAbGroup z, Cocycle f) {
  require_field(spec);
  if (n < 2) fail(errc::bad_index, "deformations need n >= 2");

  DeformContext ctx;
  ctx.ring = spec;
  ctx.n = n;

  const std::uint32_t u = spec.modulus - 1;  // unit-group order
  const FinAbGroup domain{std::vector<std::uint32_t>(n - 1, u)};
  if (!(f.domain == domain)) {
    fail(errc::invalid_cocycle,
         "cocycle domain must be " + std::to_string(n - 1) +
             " copies of Z/" + std::to_string(u));
  }
  if (!(f.codomain == z)) {
    fail(errc::invalid_cocycle, "cocycle codomain must be Z");
  }
  if (!f.symmetric_flag) {
    fail(errc::invalid_cocycle, "the deformation cocycle must be symmetric");
  }
  if (!cocycle_check(f).all_pass()) {
    fail(errc::invalid_cocycle, "the table fails the cocycle axioms");
  }
  ctx.z = std::move(z);
  ctx.f = std::move(f);

  const RingElem g = least_generator(spec);
  ctx.unit_powers.assign(1, ring_one(spec));
  for (std::uint32_t k = 1; k < u; ++k) {
    ctx.unit_powers.push_back(ring_mul(spec, ctx.unit_powers.back(), g));
  }
  ctx.dlog.assign(spec.modulus, 0);
  for (std::uint32_t k = 0; k < u; ++k) {
    ctx.dlog[residue(ctx.unit_powers[k])] = k;
  }
  return ctx;
}

DeformContext make_deform_context(const RingSpec& spec, std::uint32_t n,
                                  FinAbGroup z) {
  require_field(spec);
  if (n < 2) fail(errc::bad_index, "deformations need n >= 2");
  const std::uint32_t u = spec.modulus - 1;
  const FinAbGroup domain{std::vector<std::uint32_t>(n - 1, u)};
  Cocycle f = trivial_cocycle(domain, z);
  return make_deform_context(spec, n, std::move(z), std::move(f));
}

DeformedTorusElem torus_identity(const DeformContext& ctx) {
  return {0, std::vector<RingElem>(ctx.n - 1, ring_one(ctx.ring))};
}

DeformedTorusElem torus_product(const DeformContext& ctx,
                                const DeformedTorusElem& x,
                                const DeformedTorusElem& y) {
  check_torus_elem(ctx, x);
  check_torus_elem(ctx, y);
  DeformedTorusElem out;
  out.z = ctx.z.add(ctx.z.add(x.z, y.z),
                    ctx.f.at(ctx.b_index(x.b), ctx.b_index(y.b)));
  out.b.reserve(x.b.size());
  for (std::size_t i = 0; i < x.b.size(); ++i) {
    out.b.push_back(ring_mul(ctx.ring, x.b[i], y.b[i]));
  }
  return out;
}

DeformedTnElem tn_identity(const DeformContext& ctx) {
  return {identity(ctx.ring, ctx.n), torus_identity(ctx)};
}

DeformedTnElem tn_product(const DeformContext& ctx, const DeformedTnElem& x,
                          const DeformedTnElem& y) {
  check_tn_elem(ctx, x);
  check_tn_elem(ctx, y);
  const Matrix d = torus_matrix(ctx, x.t.b);
  const Matrix dinv = torus_matrix_inv(ctx, x.t.b);
  DeformedTnElem out;
  out.u = mat_mul(x.u, mat_mul(d, mat_mul(y.u, dinv)));
  out.t = torus_product(ctx, x.t, y.t);
  return out;
}

DeformedTnElem tn_inverse(const DeformContext& ctx, const DeformedTnElem& x) {
  check_tn_elem(ctx, x);
  DeformedTnElem out;
  out.t.b.reserve(x.t.b.size());
  for (const RingElem& u : x.t.b) out.t.b.push_back(ring_inv(ctx.ring, u));
  const std::uint32_t bx = ctx.b_index(x.t.b);
  const std::uint32_t bi = ctx.b_index(out.t.b);
  out.t.z = ctx.z.neg(ctx.z.add(x.t.z, ctx.f.at(bx, bi)));
  const Matrix d = torus_matrix(ctx, x.t.b);
  const Matrix dinv = torus_matrix_inv(ctx, x.t.b);
  out.u = mat_mul(dinv, mat_mul(mat_inv(x.u), d));
  return out;
}

std::string tn_key(const DeformedTnElem& x) {
  std::string key = x.u.to_string();
  key += "|z" + std::to_string(x.t.z) + "|";
  for (const RingElem& e : x.t.b) {
    key += elem_to_string(x.u.ring(), e) + ",";
  }
  return key;
}

TnInstance tn_instance(const DeformContext& ctx, std::uint64_t cap) {
  const std::uint64_t q = ctx.ring.modulus;
  std::uint64_t ut = 1;
  for (std::uint32_t i = 1; i <= ctx.n; ++i) {
    for (std::uint32_t j = i + 1; j <= ctx.n; ++j) {
      if (ut > cap) break;
      ut *= q;
    }
  }
  const std::uint64_t torus = ctx.z.size() * ctx.f.domain.size();
  if (ut * torus > cap) {
    fail(errc::too_large, "instance would have order " +
                              std::to_string(ut * torus) + " (cap " +
                              std::to_string(cap) + ")");
  }

  TnInstance inst;
  inst.ut_count = static_cast<std::uint32_t>(ut);

  // Enumerate UT_n by an odometer over the strictly-upper entries.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pos;
  for (std::uint32_t i = 1; i <= ctx.n; ++i) {
    for (std::uint32_t j = i + 1; j <= ctx.n; ++j) pos.push_back({i, j});
  }
  const std::vector<RingElem> elems = ring_elements(ctx.ring);
  std::vector<Matrix> ut_mats;
  ut_mats.reserve(ut);
  std::vector<std::uint32_t> digits(pos.size(), 0);
  for (std::uint64_t c = 0; c < ut; ++c) {
    Matrix m = identity(ctx.ring, ctx.n);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      m.set(pos[i].first, pos[i].second, elems[digits[i]]);
    }
    ut_mats.push_back(std::move(m));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < elems.size()) break;
      digits[i] = 0;
    }
  }
  for (std::uint32_t r = 0; r < ut; ++r) {
    inst.u_ranks.emplace(ut_mats[r].to_string(), r);
  }

  auto rank_of = [&](const Matrix& m) {
    const auto it = inst.u_ranks.find(m.to_string());
    if (it == inst.u_ranks.end()) {
      fail(errc::spec_mismatch, "product left the unitriangular carrier");
    }
    return it->second;
  };

  // Small product and conjugation tables drive the instance table.
  const std::uint64_t bcount = ctx.f.domain.size();
  const std::uint64_t zcount = ctx.z.size();
  std::vector<std::uint32_t> ut_mul(ut * ut);
  for (std::uint64_t a = 0; a < ut; ++a) {
    for (std::uint64_t b = 0; b < ut; ++b) {
      ut_mul[a * ut + b] = rank_of(mat_mul(ut_mats[a], ut_mats[b]));
    }
  }
  std::vector<std::uint32_t> conj(bcount * ut);
  for (std::uint64_t bi = 0; bi < bcount; ++bi) {
    const std::vector<RingElem> tup = ctx.b_tuple(static_cast<std::uint32_t>(bi));
    const Matrix d = torus_matrix(ctx, tup);
    const Matrix dinv = torus_matrix_inv(ctx, tup);
    for (std::uint64_t r = 0; r < ut; ++r) {
      conj[bi * ut + r] = rank_of(mat_mul(d, mat_mul(ut_mats[r], dinv)));
    }
  }

  const std::uint64_t total = ut * torus;
  inst.elements.resize(total);
  for (std::uint64_t bi = 0; bi < bcount; ++bi) {
    const std::vector<RingElem> tup = ctx.b_tuple(static_cast<std::uint32_t>(bi));
    for (std::uint64_t z = 0; z < zcount; ++z) {
      const std::uint64_t torus_rank = z + zcount * bi;
      for (std::uint64_t r = 0; r < ut; ++r) {
        inst.elements[r + ut * torus_rank] =
            DeformedTnElem{ut_mats[r],
                           {static_cast<std::uint32_t>(z), tup}};
      }
    }
  }

  TableGroup& g = inst.table;
  g.size = static_cast<std::uint32_t>(total);
  g.identity = 0;
  g.labels.reserve(total);
  for (std::uint64_t e = 0; e < total; ++e) {
    g.labels.push_back({static_cast<std::uint32_t>(e % ut),
                        static_cast<std::uint32_t>(e / ut)});
  }
  g.mult.assign(total * total, 0);
  for (std::uint64_t x = 0; x < total; ++x) {
    const std::uint64_t ux = x % ut;
    const std::uint64_t zx = (x / ut) % zcount;
    const std::uint64_t bx = (x / ut) / zcount;
    for (std::uint64_t y = 0; y < total; ++y) {
      const std::uint64_t uy = y % ut;
      const std::uint64_t zy = (y / ut) % zcount;
      const std::uint64_t by = (y / ut) / zcount;
      const std::uint64_t u = ut_mul[ux * ut + conj[bx * ut + uy]];
      const std::uint64_t z =
          ctx.z.add(ctx.z.add(static_cast<std::uint32_t>(zx),
                              static_cast<std::uint32_t>(zy)),
                    ctx.f.at(static_cast<std::uint32_t>(bx),
                             static_cast<std::uint32_t>(by)));
      const std::uint64_t b = ctx.f.domain.add(static_cast<std::uint32_t>(bx),
                                               static_cast<std::uint32_t>(by));
      g.mult[x * total + y] =
          static_cast<std::uint32_t>(u + ut * (z + zcount * b));
    }
  }
  verify_table_axioms(g, errc::invalid_cocycle);
  return inst;
}

std::uint32_t TnInstance::index_of(const DeformContext& ctx,
                                   const DeformedTnElem& x) const {
  const auto it = u_ranks.find(x.u.to_string());
  if (it == u_ranks.end()) fail(errc::bad_index, "matrix part not in the instance");
  const std::uint32_t torus_rank =
      x.t.z + static_cast<std::uint32_t>(ctx.z.size()) * ctx.b_index(x.t.b);
  return it->second + ut_count * torus_rank;
}

std::vector<DeformedTnElem> tn_center(const DeformContext& ctx,
                                      std::uint64_t cap) {
  const TnInstance inst = tn_instance(ctx, cap);
  const TableGroup& g = inst.table;
  std::vector<std::uint32_t> central;
  for (std::uint32_t x = 0; x < g.size; ++x) {
    bool ok = true;
    for (std::uint32_t y = 0; y < g.size && ok; ++y) {
      ok = g.product(x, y) == g.product(y, x);
    }
    if (ok) central.push_back(x);
  }
  // The structural claim: the center is exactly {(I, (z, 1)) : z in Z}.
  std::vector<std::uint32_t> expected;
  for (std::uint32_t z = 0; z < ctx.z.size(); ++z) {
    expected.push_back(inst.ut_count * z);
  }
  if (central != expected) {
    fail(errc::spec_mismatch,
         "center has " + std::to_string(central.size()) +
             " elements, expected the copy of Z (" +
             std::to_string(expected.size()) + ")");
  }
  std::vector<DeformedTnElem> out;
  out.reserve(central.size());
  for (std::uint32_t x : central) out.push_back(inst.elements[x]);
  return out;
}

std::vector<DeformedTnElem> tn_derived_subgroup(const DeformContext& ctx,
                                                std::uint64_t cap) {
  const TnInstance inst = tn_instance(ctx, cap);
  const std::set<std::uint32_t> d = table_derived(inst.table);
  std::vector<DeformedTnElem> out;
  out.reserve(d.size());
  for (std::uint32_t x : d) out.push_back(inst.elements[x]);
  return out;
}

CollapseIso trivial_collapse_iso(const DeformContext& ctx, std::uint64_t cap) {
  for (std::uint32_t v : ctx.f.table) {
    if (v != 0) {
      fail(errc::not_trivial_cocycle,
           "the collapse isomorphism needs the trivial cocycle");
    }
  }
  const std::uint32_t u = ctx.ring.modulus - 1;
  if (ctx.z.orders != std::vector<std::uint32_t>{u}) {
    fail(errc::spec_mismatch,
         "Z must be one cyclic factor of order q-1, identified with the "
         "unit group by generator powers");
  }

  const TnInstance inst = tn_instance(ctx, cap);
  CollapseIso iso;
  iso.report = Report("collapse");
  iso.report.set_param("ring", ring_to_string(ctx.ring));
  iso.report.set_param("n", std::to_string(ctx.n));

  iso.image.reserve(inst.table.size);
  for (const DeformedTnElem& e : inst.elements) {
    const Matrix d = torus_matrix(ctx, e.t.b);
    const Matrix s = scalar_elem(ctx.ring, ctx.n, ctx.unit_powers[e.t.z]);
    iso.image.push_back(mat_mul(e.u, mat_mul(d, s)));
  }

  std::set<std::string> image_keys;
  for (const Matrix& m : iso.image) image_keys.insert(m.to_string());
  iso.report.add("image-size", "the map is injective",
                 std::to_string(inst.table.size),
                 std::to_string(image_keys.size()));

  const GroupSet tri = enumerate_group(ctx.ring, ctx.n, group_kind::T,
                                       std::max<std::uint64_t>(cap, 1));
  std::set<std::string> tri_keys;
  for (std::size_t i = 0; i < tri.size(); ++i) {
    tri_keys.insert(tri.at(i).to_string());
  }
  iso.report.add("image-is-triangular-group",
                 "the image is all of T_n(R)", "same set",
                 image_keys == tri_keys ? "same set" : "different sets");

  detail::Tally hom;
  for (std::uint32_t x = 0; x < inst.table.size; ++x) {
    for (std::uint32_t y = 0; y < inst.table.size; ++y) {
      hom.note(iso.image[inst.table.product(x, y)] ==
               mat_mul(iso.image[x], iso.image[y]));
    }
  }
  detail::record_tally(iso.report, "homomorphism",
                       "map(xy) = map(x) map(y)", hom);
  iso.report.add_bool("identity-to-identity", "map(1) = I",
                      is_identity(iso.image[inst.table.identity]));
  return iso;
}

DeformVerdict deformation_distinguisher(const DeformContext& a,
                                        const DeformContext& b,
                                        std::uint64_t cap) {
  if (!(a.ring == b.ring) || a.n != b.n || !(a.z == b.z)) {
    fail(errc::spec_mismatch,
         "deformations must share the ring, the size, and Z");
  }

  DeformVerdict out;
  out.evidence = Report("deform-distinguish");
  out.evidence.set_param("ring", ring_to_string(a.ring));
  out.evidence.set_param("n", std::to_string(a.n));
  out.evidence.set_param("Z", a.z.describe());

  const CohomologousResult coh = cohomologous(a.f, b.f);
  info_record(out.evidence, "cohomologous", "f1 ~ f2",
              coh.equivalent ? "true" : "false");

  const TnInstance ia = tn_instance(a, cap);
  const TnInstance ib = tn_instance(b, cap);
  info_record(out.evidence, "orders", "|T_n(R,f,Z)|",
              std::to_string(ia.table.size) + " vs " +
                  std::to_string(ib.table.size));

  const std::vector<std::uint64_t> ma = ia.table.order_multiset();
  const std::vector<std::uint64_t> mb = ib.table.order_multiset();
  info_record(out.evidence, "order-multiset-1", "element orders of instance 1",
              multiset_to_string(ma));
  info_record(out.evidence, "order-multiset-2", "element orders of instance 2",
              multiset_to_string(mb));

  auto center_size = [](const TableGroup& g) {
    std::uint32_t count = 0;
    for (std::uint32_t x = 0; x < g.size; ++x) {
      bool ok = true;
      for (std::uint32_t y = 0; y < g.size && ok; ++y) {
        ok = g.product(x, y) == g.product(y, x);
      }
      if (ok) ++count;
    }
    return count;
  };
  const std::uint32_t ca = center_size(ia.table);
  const std::uint32_t cb = center_size(ib.table);
  info_record(out.evidence, "center-orders", "|Z(instance)|",
              std::to_string(ca) + " vs " + std::to_string(cb));

  const std::set<std::uint32_t> da = table_derived(ia.table);
  const std::set<std::uint32_t> db = table_derived(ib.table);
  info_record(out.evidence, "derived-orders", "|instance'|",
              std::to_string(da.size()) + " vs " + std::to_string(db.size()));
  const std::vector<std::uint64_t> qa = quotient_multiset(ia.table, da);
  const std::vector<std::uint64_t> qb = quotient_multiset(ib.table, db);
  info_record(out.evidence, "derived-quotient-multiset-1",
              "element orders of instance 1 / derived", multiset_to_string(qa));
  info_record(out.evidence, "derived-quotient-multiset-2",
              "element orders of instance 2 / derived", multiset_to_string(qb));

  std::string separator = "none";
  if (ma != mb) {
    separator = "order-multiset";
  } else if (ca != cb) {
    separator = "center-order";
  } else if (da.size() != db.size()) {
    separator = "derived-order";
  } else if (qa != qb) {
    separator = "derived-quotient-multiset";
  }
  info_record(out.evidence, "separating-invariant",
              "first computed invariant that differs", separator);

  if (coh.equivalent) {
    out.verdict = "extension-equivalent";
  } else if (separator != "none") {
    out.verdict = "group-nonisomorphic via invariant";
  } else {
    out.verdict = "extension-inequivalent";
  }
  return out;
}

// ---------------------------------------------------------------------------
// GL deformation product
// ---------------------------------------------------------------------------

namespace {

bool npower_member(const GlDeformContext& ctx, const RingElem& v) {
  const std::uint64_t r = residue(v);
  return std::binary_search(ctx.npowers.begin(), ctx.npowers.end(), r);
}

void check_gl_elem(const GlDeformContext& ctx, const GlDeformElem& x) {
  if (x.b >= ctx.b_group.size()) fail(errc::bad_index, "b index outside B");
  if (x.a >= ctx.quotient.size()) fail(errc::bad_index, "a index outside A/A^n");
  if (!(x.c.ring() == ctx.ring) || x.c.n() != ctx.n) {
    fail(errc::spec_mismatch, "carrier part lives over the wrong ring or size");
  }
  if (!npower_member(ctx, det(x.c))) {
    fail(errc::inconsistent_context,
         "carrier part determinant is not an n-th power");
  }
}

}  // namespace

GlDeformElem gl_identity(const GlDeformContext& ctx) {
  return {0, identity(ctx.ring, ctx.n), 0};
}

GlDeformElem gl_deform_product(const GlDeformContext& ctx,
                               const GlDeformElem& x, const GlDeformElem& y) {
  check_gl_elem(ctx, x);
  check_gl_elem(ctx, y);
  const std::uint64_t qn = ctx.quotient.size();
  const Matrix& act = ctx.action[x.a];
  const Matrix twisted = mat_mul(act, mat_mul(y.c, mat_inv(act)));
  GlDeformElem out;
  out.b = ctx.b_group.add(ctx.b_group.add(x.b, y.b), ctx.h.at(x.a, y.a));
  out.c = mat_mul(x.c, mat_mul(twisted, ctx.p[x.a * qn + y.a]));
  out.a = ctx.quotient.add(x.a, y.a);
  return out;
}

GlDeformContext make_gl_context(const RingSpec& spec, std::uint32_t n,
                                FinAbGroup b_group, FinAbGroup quotient,
                                Cocycle h, std::vector<Matrix> action,
                                std::vector<Matrix> p,
                                const std::vector<Matrix>& h1_samples) {
  require_field(spec);
  if (n < 2) fail(errc::bad_index, "the product law needs n >= 2");

  GlDeformContext ctx;
  ctx.ring = spec;
  ctx.n = n;

  if (!(h.domain == quotient) || !(h.codomain == b_group)) {
    fail(errc::inconsistent_context,
         "h must map A/A^n pairs into B");
  }
  if (!h.symmetric_flag || !cocycle_check(h).all_pass()) {
    fail(errc::inconsistent_context, "h fails the symmetric cocycle axioms");
  }
  ctx.b_group = std::move(b_group);
  ctx.quotient = std::move(quotient);
  ctx.h = std::move(h);

  const std::uint64_t qn = ctx.quotient.size();
  if (action.size() != qn) {
    fail(errc::inconsistent_context, "one action matrix per coset is required");
  }
  if (p.size() != qn * qn) {
    fail(errc::inconsistent_context, "p must be total on coset pairs");
  }
  for (const Matrix& m : action) {
    if (!(m.ring() == spec) || m.n() != n || !is_unit(spec, det(m))) {
      fail(errc::inconsistent_context, "action matrices must be invertible");
    }
  }
  if (!is_scalar(action[0])) {
    fail(errc::inconsistent_context,
         "the identity coset must act trivially (scalar conjugator)");
  }

  ctx.npowers = [&] {
    const PowerClasses pc = nth_power_classes(spec, n);
    std::vector<std::uint64_t> rs;
    rs.reserve(pc.powers.size());
    for (const RingElem& e : pc.powers) rs.push_back(residue(e));
    std::sort(rs.begin(), rs.end());
    return rs;
  }();

  for (std::uint64_t i = 0; i < qn; ++i) {
    for (std::uint64_t j = 0; j < qn; ++j) {
      const Matrix& m = p[i * qn + j];
      if (!(m.ring() == spec) || m.n() != n) {
        fail(errc::inconsistent_context, "p value over the wrong ring or size");
      }
      if ((i == 0 || j == 0) && !is_identity(m)) {
        fail(errc::inconsistent_context, "p must be normalized at the identity");
      }
      if (!(m == p[j * qn + i])) {
        fail(errc::inconsistent_context, "p must be symmetric");
      }
      if (!is_diagonal(m)) {
        fail(errc::inconsistent_context,
             "p values must lie in the designated diagonal subgroup");
      }
      const RingElem tail = m.at(2, 2);
      for (std::uint32_t k = 3; k <= n; ++k) {
        if (!(m.at(k, k) == tail)) {
          fail(errc::inconsistent_context,
               "p values must have equal trailing diagonal entries");
        }
      }
      if (!is_unit(spec, tail) ||
          !npower_member(ctx, ring_mul(spec, m.at(1, 1),
                                       ring_inv(spec, tail)))) {
        fail(errc::inconsistent_context,
             "p values must have head/tail ratio an n-th power");
      }
    }
  }
  ctx.action = std::move(action);
  ctx.p = std::move(p);

  // The sample grid: all (b, q) combinations against {I} and the samples.
  std::vector<Matrix> cs;
  cs.push_back(identity(spec, n));
  for (const Matrix& m : h1_samples) {
    if (!(m.ring() == spec) || m.n() != n || !npower_member(ctx, det(m))) {
      fail(errc::inconsistent_context,
           "sample outside the carrier subgroup (determinant not an n-th "
           "power)");
    }
    cs.push_back(m);
  }
  std::vector<GlDeformElem> grid;
  for (std::uint32_t b = 0; b < ctx.b_group.size(); ++b) {
    for (std::uint32_t a = 0; a < qn; ++a) {
      for (const Matrix& c : cs) grid.push_back({b, c, a});
    }
  }

  const GlDeformElem e = gl_identity(ctx);
  auto same = [](const GlDeformElem& x, const GlDeformElem& y) {
    return x.b == y.b && x.a == y.a && x.c == y.c;
  };
  for (const GlDeformElem& x : grid) {
    if (!same(gl_deform_product(ctx, e, x), x) ||
        !same(gl_deform_product(ctx, x, e), x)) {
      fail(errc::inconsistent_context, "identity axiom fails for the context");
    }
  }

  const std::uint64_t gs = grid.size();
  auto assoc_at = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    const GlDeformElem left =
        gl_deform_product(ctx, gl_deform_product(ctx, grid[x], grid[y]),
                          grid[z]);
    const GlDeformElem right =
        gl_deform_product(ctx, grid[x],
                          gl_deform_product(ctx, grid[y], grid[z]));
    if (!same(left, right)) {
      fail(errc::inconsistent_context,
           "associativity fails on the sample grid");
    }
  };
  if (gs * gs * gs <= 30000) {
    for (std::uint64_t x = 0; x < gs; ++x) {
      for (std::uint64_t y = 0; y < gs; ++y) {
        for (std::uint64_t z = 0; z < gs; ++z) assoc_at(x, y, z);
      }
    }
  } else {
    std::mt19937 rng(20250816);
    for (int trial = 0; trial < 5000; ++trial) {
      assoc_at(rng() % gs, rng() % gs, rng() % gs);
    }
  }
  return ctx;
}

}  // namespace mgi
