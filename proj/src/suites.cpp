#include "mgi/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mgi/cohom.hpp"
#include "mgi/deform.hpp"
#include "mgi/defsets.hpp"
#include "mgi/error.hpp"
#include "mgi/group_set.hpp"
#include "mgi/interp.hpp"
#include "mgi/matrix.hpp"
#include "mgi/tally.hpp"
#include "mgi/word.hpp"

namespace mgi {

using detail::record_tally;
using detail::Tally;

namespace {

// Every length-`size` tuple over `pool`, by odometer.
template <class F>
void for_each_tuple(const std::vector<RingElem>& pool, std::uint32_t size, F&& f) {
  std::vector<std::size_t> odo(size, 0);
  std::vector<RingElem> tuple(size, pool[0]);
  for (;;) {
    for (std::uint32_t i = 0; i < size; ++i) tuple[i] = pool[odo[i]];
    f(tuple);
    std::uint32_t pos = 0;
    while (pos < size && ++odo[pos] == pool.size()) odo[pos++] = 0;
    if (pos == size) break;
  }
}

}  // namespace

Report steinberg_suite(const RingSpec& spec, std::uint32_t n) {
  if (!spec.finite()) fail(errc::infinite_ring, "exhaustive suite needs a finite spec");
  Report rep("steinberg");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(n));

  const std::vector<RingElem> elems = ring_elements(spec);
  const std::vector<RingElem> us = units(spec);
  auto t = [&](std::uint32_t i, std::uint32_t j, const RingElem& a) {
    return transvection(spec, n, i, j, a);
  };

  Tally r1;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (const RingElem& a : elems)
        for (const RingElem& b : elems)
          r1.note(mat_mul(t(i, j, a), t(i, j, b)) == t(i, j, ring_add(spec, a, b)));
    }
  record_tally(rep, "relation-1", "t_ij(a) t_ij(b) = t_ij(a+b)", r1);

  Tally r2;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      for (std::uint32_t k = 1; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        for (const RingElem& a : elems)
          for (const RingElem& b : elems)
            r2.note(commutator(t(i, j, a), t(j, k, b)) ==
                    t(i, k, ring_mul(spec, a, b)));
      }
  record_tally(rep, "relation-2", "[t_ij(a), t_jk(b)] = t_ik(ab)", r2);

  Tally r3;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (std::uint32_t k = 1; k <= n; ++k)
        for (std::uint32_t l = 1; l <= n; ++l) {
          if (k == l || j == k || i == l) continue;
          for (const RingElem& a : elems)
            for (const RingElem& b : elems)
              r3.note(is_identity(commutator(t(i, j, a), t(k, l, b))));
        }
    }
  record_tally(rep, "relation-3", "[t_ij(a), t_kl(b)] = 1 when j != k, i != l", r3);

  Tally rd;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      for (std::uint32_t k = 1; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        for (const RingElem& a : elems)
          for (const RingElem& b : elems)
            rd.note(commutator(t(i, j, a), t(k, i, b)) ==
                    t(k, j, ring_neg(spec, ring_mul(spec, a, b))));
      }
  record_tally(rep, "relation-derived", "[t_ij(a), t_ki(b)] = t_kj(-ab)", rd);

  Tally conj, comm;
  for_each_tuple(us, n, [&](const std::vector<RingElem>& alphas) {
    Matrix d = diag_full(spec, alphas);
    std::vector<RingElem> inv_alphas;
    inv_alphas.reserve(n);
    for (const RingElem& a : alphas) inv_alphas.push_back(ring_inv(spec, a));
    Matrix d_inv = diag_full(spec, inv_alphas);
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (const RingElem& b : elems) {
          RingElem twisted =
              ring_mul(spec, inv_alphas[i - 1], ring_mul(spec, b, alphas[j - 1]));
          Matrix lhs = mat_mul(mat_mul(d_inv, t(i, j, b)), d);
          conj.note(lhs == t(i, j, twisted));
          Matrix lhs2 = mat_mul(t(i, j, ring_neg(spec, b)), lhs);
          comm.note(lhs2 == t(i, j, ring_sub(spec, twisted, b)));
        }
      }
  });
  record_tally(rep, "diag-conjugation", "d^-1 t_ij(b) d = t_ij(a_i^-1 b a_j)", conj);
  record_tally(rep, "diag-commutator", "[t_ij(b), d] = t_ij(a_i^-1 b a_j - b)", comm);

  return rep;
}

namespace {

// A seeded determinant-one matrix: a short random transvection word.
Matrix random_sl(const RingSpec& spec, std::uint32_t n, std::mt19937_64& rng) {
  const std::vector<RingElem> elems = ring_elements(spec);
  Matrix m = identity(spec, n);
  for (std::uint32_t step = 0; step < 2 * n; ++step) {
    const std::uint32_t i = 1 + static_cast<std::uint32_t>(rng() % n);
    std::uint32_t j = 1 + static_cast<std::uint32_t>(rng() % n);
    while (j == i) j = 1 + static_cast<std::uint32_t>(rng() % n);
    m = mat_mul(m, transvection(spec, n, i, j, elems[rng() % elems.size()]));
  }
  return m;
}

// Copies `sub`'s records into `rep` under an id prefix.
void merge_report(Report& rep, const Report& sub, const std::string& prefix) {
  for (CheckRecord r : sub.records()) {
    r.id = prefix + r.id;
    rep.add(std::move(r));
  }
}

std::string orders_to_string(const std::vector<std::uint64_t>& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m[i]);
  }
  return out + "}";
}

// The carry cocycle on Z/m lifted through coordinate `coord` of `domain`:
// f(x, y) = 1 exactly when x_coord + y_coord wraps. The associated
// extension replaces that coordinate's factor by Z/m^2.
Cocycle carry_cocycle(const FinAbGroup& domain, std::uint32_t m,
                      std::size_t coord) {
  const std::uint32_t size = static_cast<std::uint32_t>(domain.size());
  std::vector<std::uint32_t> table(std::size_t(size) * size, 0);
  for (std::uint32_t x = 0; x < size; ++x) {
    for (std::uint32_t y = 0; y < size; ++y) {
      if (domain.tuple(x)[coord] + domain.tuple(y)[coord] >= m) {
        table[std::size_t(x) * size + y] = 1;
      }
    }
  }
  return make_cocycle(domain, FinAbGroup{{m}}, std::move(table));
}

}  // namespace

Report decompose_suite(const RingSpec& spec, std::uint32_t n,
                       std::uint64_t seed, std::uint64_t cap) {
  if (!spec.field()) fail(errc::not_field, "decomposition needs a field");
  Report rep("decompose");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(n));

  // The identity decomposes as the empty word.
  rep.add("identity-word", "decompose(I) is empty", "0 letters",
          std::to_string(decompose_sl(identity(spec, n)).letters.size()) +
              " letters");

  if (spec.finite()) {
    const WidthReport w = width_report(spec, n, cap);
    rep.add("elements", "all determinant-one matrices scanned",
            std::to_string(w.elements), std::to_string(w.elements));
    rep.add_bool("round-trip", "eval(decompose(g)) = g for every g",
                 w.all_round_trip);
    rep.add("width-bound",
            "max letters " + std::to_string(w.max_width) +
                " within (n-1)(n+5) = " + std::to_string(w.structural),
            "within bound", w.max_width <= w.structural ? "within bound"
                                                        : "exceeded");
  } else {
    rep.set_param("seed", std::to_string(seed));
    std::mt19937_64 rng(seed);
    Tally trip;
    for (int sample = 0; sample < 100; ++sample) {
      Matrix m = identity(spec, n);
      do {
        for (std::uint32_t i = 1; i <= n; ++i) {
          for (std::uint32_t j = 1; j <= n; ++j) {
            m.set(i, j, ring_of(spec, static_cast<long long>(rng() % 19) - 9));
          }
        }
      } while (is_zero(spec, det(m)));
      trip.note(eval_word(decompose_gl(m)) == m);
    }
    record_tally(rep, "random-round-trip",
                 "eval(decompose(g)) = g on seeded invertible matrices", trip);
  }
  return rep;
}

Report interp_suite(const RingSpec& spec, std::uint32_t n,
                    std::uint64_t seed) {
  Report rep("interp");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(n));
  rep.set_param("seed", std::to_string(seed));

  for (host_kind host : {host_kind::gl, host_kind::sl, host_kind::tri}) {
    const Report sub = ring_iso_check(make_interp(spec, n, host));
    merge_report(rep, sub, std::string(host_kind_name(host)) + "-");
  }

  if (spec.field() && spec.finite()) {
    const SigmaSchedule s = default_schedule(n);
    const InterpretedRing r = make_interp(spec, n, host_kind::sl);
    std::mt19937_64 rng(seed);
    Tally lam;
    for (int pair = 0; pair < 25; ++pair) {
      const Matrix g = random_sl(spec, n, rng);
      const Matrix h = random_sl(spec, n, rng);
      const InterpMatrix product =
          interp_mat_mul(r, lambda_map(g, s), lambda_map(h, s));
      lam.note(interp_mat_decode(r, product) == mat_mul(g, h));
    }
    record_tally(rep, "lambda-multiplicative",
                 "lambda(g) lambda(h) decodes to gh on seeded pairs", lam);

    Tally mu;
    const std::vector<RingElem> elems = ring_elements(spec);
    for (const RingElem& a : elems) {
      for (const RingElem& b : elems) {
        mu.note(mat_mul(mu_map(spec, n, a), mu_map(spec, n, b)) ==
                mu_map(spec, n, ring_add(spec, a, b)));
        mu.note(interp_mul(r, mu_map(spec, n, a), mu_map(spec, n, b)) ==
                mu_map(spec, n, ring_mul(spec, a, b)));
      }
    }
    record_tally(rep, "mu-field-iso",
                 "mu respects + and * over all field pairs", mu);
  }
  return rep;
}

Report definable_suite(const RingSpec& spec, std::uint32_t n,
                       std::uint64_t cap) {
  if (!spec.finite() || !spec.field()) {
    fail(errc::not_field, "definable-set suite needs a finite field");
  }
  Report rep("definable");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(n));

  const GroupSet tri = enumerate_group(spec, n, group_kind::T, cap);
  const GroupSet diag = enumerate_group(spec, n, group_kind::D, cap);
  const SubgroupSet dn = dn_formula(tri);
  rep.add("dn-size", "|dn(T_n)| = (q-1)^n", std::to_string(diag.size()),
          std::to_string(dn.elements.size()));
  rep.add_bool("dn-matches-diagonal", "dn(T_n) is the diagonal subgroup",
               same_set(dn, diag));

  const GroupSet k = enumerate_group(spec, n, group_kind::K, cap);
  const SubgroupSet bn = bn_formula(k);
  std::uint64_t expected_bn = 1;
  for (std::uint32_t i = 1; i < n; ++i) expected_bn *= spec.modulus - 1;
  rep.add("bn-size", "|bn(K_n)| = (q-1)^(n-1)", std::to_string(expected_bn),
          std::to_string(bn.elements.size()));

  for (std::uint32_t idx = 1; idx < n; ++idx) {
    const SubgroupSet dk = dk_formula(k, idx);
    rep.add("dk-size-" + std::to_string(idx),
            "|d_k slice| = q-1 at k = " + std::to_string(idx),
            std::to_string(spec.modulus - 1),
            std::to_string(dk.elements.size()));
  }

  if (predicted_order(spec, n, group_kind::GL) <= bigint(cap)) {
    const GroupSet gl = enumerate_group(spec, n, group_kind::GL, cap);
    const SubgroupSet d1 = delta1_formula(gl);
    rep.add_bool("delta1-subgroup", "the stabilizer set closes to a subgroup",
                 d1.subgroup_verified);
    rep.add("delta1-size", "|delta_1(GL_n)| = (q-1)^2 scalar-d_1 products",
            std::to_string((spec.modulus - 1) * (spec.modulus - 1)),
            std::to_string(d1.elements.size()));
    const SubgroupSet dn_gl = dn_formula(gl);
    rep.add("dn-gl-size", "|dn(GL_n)| = (q-1)^n", std::to_string(diag.size()),
            std::to_string(dn_gl.elements.size()));
  }

  if (k.size() <= 512) {
    const GroupSet ut = enumerate_group(spec, n, group_kind::UT, cap);
    const SubgroupSet dk2 = derived_subgroup(k, 2);
    rep.add_bool("derived-k", "K_n' is the unitriangular subgroup",
                 dk2.stable && same_set(dk2, ut));
  }
  if (tri.size() <= 512) {
    const GroupSet ut = enumerate_group(spec, n, group_kind::UT, cap);
    const SubgroupSet dt2 = derived_subgroup(tri, 2);
    rep.add_bool("derived-t", "T_n' is the unitriangular subgroup",
                 dt2.stable && same_set(dt2, ut));
  }

  rep.add("center-k", "K_n has trivial center", "1",
          std::to_string(center_of(k).size()));
  rep.add("center-t", "Z(T_n) is the scalar subgroup",
          std::to_string(spec.modulus - 1),
          std::to_string(center_of(tri).size()));
  return rep;
}

Report a4_suite(const RingSpec& spec, std::uint32_t n, std::uint64_t cap) {
  if (!spec.finite() || !spec.field()) {
    fail(errc::not_field, "the sequence suite needs a finite field");
  }
  Report rep("a4");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(n));

  merge_report(rep, a4_sequence_report(spec, n, cap), "sequence-");
  merge_report(rep, d1_power_identity(spec, n), "d1-");

  const GroupSet kernel = isogeny_kernel(spec, n);
  const std::uint64_t expected =
      std::gcd<std::uint64_t>(n, spec.modulus - 1);
  rep.add("isogeny-kernel", "|ker(x -> x^n on scalars)| = gcd(n, q-1)",
          std::to_string(expected), std::to_string(kernel.size()));
  return rep;
}

Report cohom_suite(const RingSpec& spec, std::uint32_t n,
                   std::uint64_t seed) {
  if (!spec.finite() || !spec.field()) {
    fail(errc::not_field, "the cocycle suite keys its carriers to a finite field");
  }
  if (n < 2) fail(errc::bad_index, "the cocycle suite needs n >= 2");
  Report rep("cohom");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(n));
  rep.set_param("seed", std::to_string(seed));

  // Class counts by enumeration match the gcd formula on a small grid.
  Tally grid;
  for (std::uint32_t m = 2; m <= 4; ++m) {
    for (std::uint32_t a = 2; a <= 4; ++a) {
      const ExtClasses classes = ext_group(FinAbGroup{{m}}, FinAbGroup{{a}});
      grid.note(classes.order == std::gcd(m, a));
    }
  }
  record_tally(rep, "ext-gcd-grid", "#classes(Z/m, Z/a) = gcd(m, a)", grid);

  // Frozen extension shapes over Z/2.
  const Cocycle twist =
      make_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}, {0, 0, 0, 1});
  rep.add("extension-twisted", "E(x y) is cyclic of order 4", "{1,2,4,4}",
          orders_to_string(extension_group(twist).order_multiset()));
  rep.add("extension-split", "E(1) is the Klein group", "{1,2,2,2}",
          orders_to_string(
              extension_group(trivial_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}))
                  .order_multiset()));

  // The unit-group carrier of the deformation modules.
  const std::uint32_t m = spec.modulus - 1;
  const FinAbGroup domain{std::vector<std::uint32_t>(n - 1, m)};
  const FinAbGroup codomain{{std::max<std::uint32_t>(m, 1)}};

  if (m >= 2) {
    // Enumerated class count, when the table space is enumerable.
    const std::uint64_t free_positions =
        domain.size() * (domain.size() + 1) / 2;
    double log_count = free_positions * std::log2(double(codomain.size()));
    if (log_count <= 17.0) {
      const ExtClasses classes = ext_group(domain, codomain);
      std::uint64_t expected = 1;
      for (std::uint32_t i = 0; i + 1 < n; ++i) expected *= std::gcd(m, m);
      rep.add("ext-units", "#classes(B_n carrier, units) = gcd product",
              std::to_string(expected), std::to_string(classes.order));
    }

    // The carry cocycle never splits: its extension has an element of
    // order m^2, which no coboundary extension can reach.
    const Cocycle carry = carry_cocycle(domain, m, 0);
    rep.add_bool("carry-not-coboundary", "the carry cocycle has no witness",
                 !is_coboundary(carry).has_value());
    if (domain.size() * codomain.size() <= 1024) {
      const std::vector<std::uint64_t> orders =
          extension_group(carry).order_multiset();
      rep.add("carry-max-order", "E(carry) has an element of order m^2",
              std::to_string(std::uint64_t(m) * m),
              std::to_string(orders.back()));
    }
  }

  // Coboundary round trips on the unit-group carrier.
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  Tally trips;
  for (int trip = 0; trip < 25; ++trip) {
    std::vector<std::uint32_t> psi(domain.size());
    psi[0] = 0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
      psi[i] = rng() % codomain.size();
    }
    const Cocycle g = coboundary_from(domain, codomain, psi);
    const auto witness = is_coboundary(g);
    trips.note(witness.has_value() &&
               coboundary_from(domain, codomain, *witness).table == g.table);
  }
  record_tally(rep, "coboundary-round-trip",
               "split cocycles certify a splitting witness", trips);
  return rep;
}

Report deform_suite(const RingSpec& spec, std::uint32_t n,
                    std::uint64_t cap) {
  Report rep("deform");
  rep.set_param("ring", ring_to_string(spec));
  rep.set_param("n", std::to_string(n));

  const std::uint32_t m = spec.modulus ? spec.modulus - 1 : 0;
  const DeformContext plain =
      make_deform_context(spec, n, FinAbGroup{{std::max<std::uint32_t>(m, 1)}});
  const CollapseIso iso = trivial_collapse_iso(plain, cap);
  merge_report(rep, iso.report, "collapse-");
  rep.add("order", "|T_n(R, 1, Z)| = |T_n(R)|",
          predicted_order(spec, n, group_kind::T).str(),
          std::to_string(iso.image.size()));

  if (m >= 2) {
    const Cocycle carry =
        carry_cocycle(FinAbGroup{std::vector<std::uint32_t>(n - 1, m)}, m, 0);
    const DeformContext twisted =
        make_deform_context(spec, n, FinAbGroup{{m}}, carry);
    const TnInstance inst = tn_instance(twisted, cap);
    rep.add("twisted-order", "twisting preserves the order",
            std::to_string(iso.image.size()), std::to_string(inst.table.size));

    const std::vector<DeformedTnElem> center = tn_center(twisted, cap);
    rep.add("twisted-center", "Z(T_n(R, f, Z)) is the copy of Z",
            std::to_string(m), std::to_string(center.size()));

    const std::vector<DeformedTnElem> derived =
        tn_derived_subgroup(twisted, cap);
    bool unipotent = true;
    for (const DeformedTnElem& e : derived) {
      unipotent = unipotent && e.t.z == 0 && is_upper_unitriangular(e.u);
      for (const RingElem& u : e.t.b) unipotent = unipotent && is_one(spec, u);
    }
    rep.add("twisted-derived", "the derived subgroup is the unipotent part",
            std::to_string(inst.ut_count) + " unipotent elements",
            std::to_string(derived.size()) +
                (unipotent ? " unipotent elements" : " mixed elements"));

    const DeformVerdict verdict =
        deformation_distinguisher(plain, twisted, cap);
    rep.add("carry-verdict", "the carry twist changes the group",
            "group-nonisomorphic via invariant", verdict.verdict);
  }
  return rep;
}

}  // namespace mgi
