#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mgi/cohom.hpp"
#include "mgi/deform.hpp"
#include "mgi/error.hpp"
#include "mgi/group_set.hpp"
#include "mgi/matrix.hpp"
#include "mgi/ring.hpp"

namespace {

using mgi::FinAbGroup;

// Symmetric cocycle on [2,2] supported on the first coordinate:
// f(x, y) = x_1 * y_1 into Z/2 (the multiplication-carry table).
mgi::Cocycle factor1_cocycle() {
  return mgi::make_cocycle(FinAbGroup{{2, 2}}, FinAbGroup{{2}},
                           {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1});
}

// The same table supported on the second coordinate instead.
mgi::Cocycle factor2_cocycle() {
  return mgi::make_cocycle(FinAbGroup{{2, 2}}, FinAbGroup{{2}},
                           {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1});
}

// Doubled factor-1 table, valued in Z/4 (image {0, 2}).
mgi::Cocycle factor1_doubled_cocycle() {
  return mgi::make_cocycle(FinAbGroup{{2, 2}}, FinAbGroup{{4}},
                           {0, 0, 0, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 2, 0, 2});
}

mgi::DeformedTorusElem torus(std::uint32_t z, std::vector<long long> units,
                             const mgi::RingSpec& spec) {
  mgi::DeformedTorusElem out;
  out.z = z;
  for (long long u : units) out.b.push_back(mgi::ring_of(spec, u));
  return out;
}

const mgi::CheckRecord& record_by_id(const mgi::Report& rep,
                                     const std::string& id) {
  for (const mgi::CheckRecord& r : rep.records()) {
    if (r.id == id) return r;
  }
  FAIL("missing record ", id);
  static mgi::CheckRecord dummy;
  return dummy;
}

}  // namespace

TEST_CASE("deformed torus twists scalars by the cocycle") {
  const mgi::RingSpec gf3 = mgi::parse_ring("gf:3");
  const mgi::DeformContext ctx =
      mgi::make_deform_context(gf3, 3, FinAbGroup{{2}}, factor1_cocycle());

  // Unit bookkeeping: powers of the least generator 2 of GF(3).
  CHECK(ctx.unit_powers.size() == 2);
  CHECK(mgi::residue(ctx.unit_powers[0]) == 1);
  CHECK(mgi::residue(ctx.unit_powers[1]) == 2);
  CHECK(ctx.unit_index(mgi::ring_of(gf3, 2)) == 1);
  CHECK(ctx.b_index({mgi::ring_of(gf3, 2), mgi::ring_of(gf3, 1)}) == 1);
  CHECK(ctx.b_index({mgi::ring_of(gf3, 1), mgi::ring_of(gf3, 2)}) == 2);

  // (0,(2,1)) * (0,(2,1)) picks up the twist f = 1; the base squares away.
  const mgi::DeformedTorusElem g = torus(0, {2, 1}, gf3);
  const mgi::DeformedTorusElem g2 = mgi::torus_product(ctx, g, g);
  CHECK(g2.z == 1);
  CHECK(mgi::residue(g2.b[0]) == 1);
  CHECK(mgi::residue(g2.b[1]) == 1);

  // g has order 4: the twisted square is central of order 2.
  const mgi::DeformedTorusElem g3 = mgi::torus_product(ctx, g2, g);
  const mgi::DeformedTorusElem g4 = mgi::torus_product(ctx, g3, g);
  CHECK(g3.z == 1);
  CHECK(mgi::residue(g3.b[0]) == 2);
  CHECK(g4.z == 0);
  CHECK(mgi::residue(g4.b[0]) == 1);
  CHECK(mgi::residue(g4.b[1]) == 1);

  // The untwisted coordinate stays a direct factor.
  const mgi::DeformedTorusElem h = torus(0, {1, 2}, gf3);
  const mgi::DeformedTorusElem h2 = mgi::torus_product(ctx, h, h);
  CHECK(h2.z == 0);

  // Commutativity across all 8 x 8 torus pairs (f is symmetric).
  std::vector<mgi::DeformedTorusElem> all;
  for (std::uint32_t z = 0; z < 2; ++z) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      all.push_back({z, ctx.b_tuple(b)});
    }
  }
  for (const auto& x : all) {
    for (const auto& y : all) {
      const auto xy = mgi::torus_product(ctx, x, y);
      const auto yx = mgi::torus_product(ctx, y, x);
      CHECK(xy.z == yx.z);
      CHECK(mgi::residue(xy.b[0]) == mgi::residue(yx.b[0]));
      CHECK(mgi::residue(xy.b[1]) == mgi::residue(yx.b[1]));
    }
  }

  // The torus is the extension group of f under (z, b) -> index b|Z| + z.
  const mgi::TableGroup ext = mgi::extension_group(ctx.f);
  REQUIRE(ext.size == 8);
  auto idx = [&](const mgi::DeformedTorusElem& t) {
    return ctx.b_index(t.b) * 2 + t.z;
  };
  for (const auto& x : all) {
    for (const auto& y : all) {
      CHECK(idx(mgi::torus_product(ctx, x, y)) == ext.product(idx(x), idx(y)));
    }
  }

  // Shape guards.
  CHECK_THROWS_WITH_AS(
      mgi::make_deform_context(mgi::parse_ring("zmod:6"), 3, FinAbGroup{{2}}),
      doctest::Contains("NotField"), mgi::error);
  CHECK_THROWS_WITH_AS(
      mgi::make_deform_context(mgi::parse_ring("q"), 3, FinAbGroup{{2}}),
      doctest::Contains("InfiniteRing"), mgi::error);
  CHECK_THROWS_WITH_AS(
      mgi::make_deform_context(gf3, 1, FinAbGroup{{2}}),
      doctest::Contains("BadIndex"), mgi::error);
  // Wrong domain shape: [2] instead of [2,2] for n = 3.
  CHECK_THROWS_WITH_AS(
      mgi::make_deform_context(
          gf3, 3, FinAbGroup{{2}},
          mgi::make_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}, {0, 0, 0, 1})),
      doctest::Contains("InvalidCocycle"), mgi::error);
  // Wrong codomain: table valued in [4] against Z = [2].
  CHECK_THROWS_WITH_AS(
      mgi::make_deform_context(gf3, 3, FinAbGroup{{2}},
                               factor1_doubled_cocycle()),
      doctest::Contains("InvalidCocycle"), mgi::error);
  // Asymmetric table.
  {
    std::vector<std::uint32_t> t(16, 0);
    t[1 * 4 + 2] = 1;  // f((1,0),(0,1)) = 1, mirror entry 0
    CHECK_THROWS_WITH_AS(
        mgi::make_deform_context(
            gf3, 3, FinAbGroup{{2}},
            mgi::make_cocycle(FinAbGroup{{2, 2}}, FinAbGroup{{2}}, t)),
        doctest::Contains("InvalidCocycle"), mgi::error);
  }
}

TEST_CASE("the twisted triangular product conjugates the unipotent part") {
  const mgi::RingSpec gf3 = mgi::parse_ring("gf:3");
  const mgi::DeformContext ctx =
      mgi::make_deform_context(gf3, 3, FinAbGroup{{2}});

  const mgi::DeformedTnElem x{mgi::transvection(gf3, 3, 1, 2, mgi::ring_of(gf3, 1)),
                              mgi::torus_identity(ctx)};
  const mgi::DeformedTnElem y{mgi::identity(gf3, 3), torus(0, {2, 1}, gf3)};

  // x has trivial torus part, so x y keeps the unipotent t_12(1)...
  const mgi::DeformedTnElem xy = mgi::tn_product(ctx, x, y);
  CHECK(xy.u == mgi::transvection(gf3, 3, 1, 2, mgi::ring_of(gf3, 1)));
  CHECK(mgi::residue(xy.t.b[0]) == 2);

  // ...while y x conjugates it by diag(2, 1, 1): t_12(1) -> t_12(2).
  const mgi::DeformedTnElem yx = mgi::tn_product(ctx, y, x);
  CHECK(yx.u == mgi::transvection(gf3, 3, 1, 2, mgi::ring_of(gf3, 2)));
  CHECK(mgi::residue(yx.t.b[0]) == 2);

  // Inverses round-trip through the semidirect law, twisted or not.
  for (const mgi::Cocycle& f : {mgi::trivial_cocycle(FinAbGroup{{2, 2}},
                                                     FinAbGroup{{2}}),
                                factor1_cocycle()}) {
    const mgi::DeformContext c =
        mgi::make_deform_context(gf3, 3, FinAbGroup{{2}}, f);
    const mgi::DeformedTnElem id = mgi::tn_identity(c);
    std::vector<mgi::DeformedTnElem> samples = {x, y, xy, yx};
    samples.push_back({mgi::transvection(gf3, 3, 2, 3, mgi::ring_of(gf3, 2)),
                       torus(1, {2, 2}, gf3)});
    samples.push_back({mgi::transvection(gf3, 3, 1, 3, mgi::ring_of(gf3, 1)),
                       torus(1, {1, 2}, gf3)});
    for (const mgi::DeformedTnElem& s : samples) {
      const mgi::DeformedTnElem sinv = mgi::tn_inverse(c, s);
      CHECK(mgi::tn_key(mgi::tn_product(c, s, sinv)) == mgi::tn_key(id));
      CHECK(mgi::tn_key(mgi::tn_product(c, sinv, s)) == mgi::tn_key(id));
    }
  }

  // Unit-checking rejects a non-unit torus coordinate.
  CHECK_THROWS_WITH_AS(
      mgi::tn_product(ctx, x,
                      {mgi::identity(gf3, 3), torus(0, {0, 1}, gf3)}),
      doctest::Contains("NonUnit"), mgi::error);
  // Matrix part must be unitriangular.
  CHECK_THROWS_WITH_AS(
      mgi::tn_product(ctx,
                      {mgi::diag_elem(gf3, 3, 1, mgi::ring_of(gf3, 2)),
                       mgi::torus_identity(ctx)},
                      y),
      doctest::Contains("NotUnitriangular"), mgi::error);
}

TEST_CASE("deformed instances have the predicted orders") {
  const mgi::RingSpec gf3 = mgi::parse_ring("gf:3");
  const FinAbGroup z2{{2}};
  const FinAbGroup z4{{4}};

  struct Shape {
    FinAbGroup z;
    mgi::Cocycle f;
    std::uint32_t order;
  };
  const std::vector<Shape> shapes = {
      {z2, mgi::trivial_cocycle(FinAbGroup{{2, 2}}, z2), 216},
      {z2, factor1_cocycle(), 216},
      {z4, mgi::trivial_cocycle(FinAbGroup{{2, 2}}, z4), 432},
      {z4, factor1_doubled_cocycle(), 432},
  };
  for (const Shape& s : shapes) {
    const mgi::DeformContext ctx = mgi::make_deform_context(gf3, 3, s.z, s.f);
    const mgi::TnInstance inst = mgi::tn_instance(ctx);
    CHECK(inst.table.size == s.order);
    CHECK(inst.ut_count == 27);
    CHECK(inst.elements.size() == s.order);
    CHECK(inst.table.identity == 0);
    CHECK(mgi::is_identity(inst.elements[0].u));
    CHECK(inst.elements[0].t.z == 0);

    // index_of inverts the element listing.
    std::mt19937 rng(20250816);
    for (int trial = 0; trial < 25; ++trial) {
      const std::uint32_t i = rng() % inst.table.size;
      CHECK(inst.index_of(ctx, inst.elements[i]) == i);
    }

    // The instance table agrees with the arithmetic product law.
    for (int trial = 0; trial < 50; ++trial) {
      const std::uint32_t i = rng() % inst.table.size;
      const std::uint32_t j = rng() % inst.table.size;
      const mgi::DeformedTnElem p =
          mgi::tn_product(ctx, inst.elements[i], inst.elements[j]);
      CHECK(inst.index_of(ctx, p) == inst.table.product(i, j));
    }
  }

  // The cap is enforced: GF(5), n = 3, Z = [4] would need 8000 elements.
  const mgi::DeformContext big =
      mgi::make_deform_context(mgi::parse_ring("gf:5"), 3, z4);
  CHECK_THROWS_WITH_AS(mgi::tn_instance(big), doctest::Contains("TooLarge"),
                       mgi::error);
  CHECK(mgi::tn_instance(big, 8000).table.size == 8000);
}

TEST_CASE("the center of a deformed instance is the copy of Z") {
  const mgi::RingSpec gf3 = mgi::parse_ring("gf:3");

  for (const mgi::Cocycle& f : {mgi::trivial_cocycle(FinAbGroup{{2, 2}},
                                                     FinAbGroup{{2}}),
                                factor1_cocycle()}) {
    const mgi::DeformContext ctx =
        mgi::make_deform_context(gf3, 3, FinAbGroup{{2}}, f);
    const std::vector<mgi::DeformedTnElem> c = mgi::tn_center(ctx);
    REQUIRE(c.size() == 2);
    for (const mgi::DeformedTnElem& e : c) {
      CHECK(mgi::is_identity(e.u));
      CHECK(mgi::residue(e.t.b[0]) == 1);
      CHECK(mgi::residue(e.t.b[1]) == 1);
    }
    CHECK(c[0].t.z == 0);
    CHECK(c[1].t.z == 1);
  }

  // Collapsed center: Z = [1] gives the triangular group with last diagonal
  // entry 1, whose center is trivial.
  const mgi::DeformContext k3 =
      mgi::make_deform_context(gf3, 3, FinAbGroup{{1}});
  const std::vector<mgi::DeformedTnElem> c = mgi::tn_center(k3);
  REQUIRE(c.size() == 1);
  CHECK(mgi::is_identity(c[0].u));
}

TEST_CASE("trivial deformations collapse onto triangular groups") {
  // GF(3), n = 3: the collapse lands exactly on T_3, order 216.
  {
    const mgi::DeformContext ctx = mgi::make_deform_context(
        mgi::parse_ring("gf:3"), 3, FinAbGroup{{2}});
    const mgi::CollapseIso iso = mgi::trivial_collapse_iso(ctx);
    CHECK(iso.report.all_pass());
    CHECK(iso.image.size() == 216);
    CHECK(record_by_id(iso.report, "image-size").observed == "216");
    CHECK(record_by_id(iso.report, "image-is-triangular-group").observed ==
          "same set");
  }
  // GF(5), n = 2: order 80.
  {
    const mgi::DeformContext ctx = mgi::make_deform_context(
        mgi::parse_ring("gf:5"), 2, FinAbGroup{{4}});
    const mgi::CollapseIso iso = mgi::trivial_collapse_iso(ctx);
    CHECK(iso.report.all_pass());
    CHECK(iso.image.size() == 80);
  }
  // GF(2), n = 3: the torus is trivial and the collapse is onto UT_3.
  {
    const mgi::DeformContext ctx = mgi::make_deform_context(
        mgi::parse_ring("gf:2"), 3, FinAbGroup{{1}});
    const mgi::CollapseIso iso = mgi::trivial_collapse_iso(ctx);
    CHECK(iso.report.all_pass());
    CHECK(iso.image.size() == 8);
  }
  // A twisted instance does not collapse.
  {
    const mgi::DeformContext ctx = mgi::make_deform_context(
        mgi::parse_ring("gf:3"), 3, FinAbGroup{{2}}, factor1_cocycle());
    CHECK_THROWS_WITH_AS(mgi::trivial_collapse_iso(ctx),
                         doctest::Contains("NotTrivialCocycle"), mgi::error);
  }
  // Z must be identified with the unit group.
  {
    const mgi::DeformContext ctx = mgi::make_deform_context(
        mgi::parse_ring("gf:3"), 3, FinAbGroup{{4}});
    CHECK_THROWS_WITH_AS(mgi::trivial_collapse_iso(ctx),
                         doctest::Contains("SpecMismatch"), mgi::error);
  }
}

TEST_CASE("the distinguisher separates twisted from untwisted instances") {
  const mgi::RingSpec gf3 = mgi::parse_ring("gf:3");
  const FinAbGroup z2{{2}};
  const mgi::DeformContext plain = mgi::make_deform_context(gf3, 3, z2);
  const mgi::DeformContext twisted =
      mgi::make_deform_context(gf3, 3, z2, factor1_cocycle());

  // Twisting by the carry cocycle changes the group, not just the extension:
  // the twisted instance has elements of order 4, the direct product has
  // none (its unipotent part has exponent 3 and its torus exponent 2).
  const mgi::DeformVerdict v = mgi::deformation_distinguisher(plain, twisted);
  CHECK(v.verdict == "group-nonisomorphic via invariant");
  CHECK(record_by_id(v.evidence, "cohomologous").observed == "false");
  CHECK(record_by_id(v.evidence, "separating-invariant").observed ==
        "order-multiset");
  CHECK(record_by_id(v.evidence, "orders").observed == "216 vs 216");

  // A deformation is equivalent to itself...
  CHECK(mgi::deformation_distinguisher(twisted, twisted).verdict ==
        "extension-equivalent");

  // ...and to any coboundary translate of itself.
  {
    const std::vector<std::uint32_t> psi = {0, 1, 1, 0};
    const mgi::Cocycle shifted = mgi::cocycle_product(
        factor1_cocycle(),
        mgi::coboundary_from(FinAbGroup{{2, 2}}, z2, psi));
    const mgi::DeformContext moved =
        mgi::make_deform_context(gf3, 3, z2, shifted);
    const mgi::DeformVerdict w = mgi::deformation_distinguisher(twisted, moved);
    CHECK(w.verdict == "extension-equivalent");
    CHECK(record_by_id(w.evidence, "cohomologous").observed == "true");
  }

  // Carrying on the first versus the second coordinate: the cocycles are
  // not cohomologous, but the instances are isomorphic (swap the flags), so
  // no computed invariant separates them.
  {
    const mgi::DeformContext other =
        mgi::make_deform_context(gf3, 3, z2, factor2_cocycle());
    const mgi::DeformVerdict w =
        mgi::deformation_distinguisher(twisted, other);
    CHECK(w.verdict == "extension-inequivalent");
    CHECK(record_by_id(w.evidence, "cohomologous").observed == "false");
    CHECK(record_by_id(w.evidence, "separating-invariant").observed == "none");
  }

  // Mismatched shapes are rejected.
  const mgi::DeformContext z4ctx =
      mgi::make_deform_context(gf3, 3, FinAbGroup{{4}});
  CHECK_THROWS_WITH_AS(mgi::deformation_distinguisher(plain, z4ctx),
                       doctest::Contains("SpecMismatch"), mgi::error);
}

TEST_CASE("derived subgroups of deformed instances are the unipotent part") {
  const mgi::RingSpec gf3 = mgi::parse_ring("gf:3");
  const FinAbGroup z2{{2}};
  const FinAbGroup z4{{4}};

  struct Shape {
    FinAbGroup z;
    mgi::Cocycle f;
  };
  const std::vector<Shape> shapes = {
      {z2, mgi::trivial_cocycle(FinAbGroup{{2, 2}}, z2)},
      {z2, factor1_cocycle()},
      {z4, mgi::trivial_cocycle(FinAbGroup{{2, 2}}, z4)},
      {z4, factor1_doubled_cocycle()},
  };
  for (const Shape& s : shapes) {
    const mgi::DeformContext ctx = mgi::make_deform_context(gf3, 3, s.z, s.f);
    const std::vector<mgi::DeformedTnElem> d = mgi::tn_derived_subgroup(ctx);
    REQUIRE(d.size() == 27);
    std::set<std::string> keys;
    for (const mgi::DeformedTnElem& e : d) {
      CHECK(mgi::is_upper_unitriangular(e.u));
      CHECK(e.t.z == 0);
      CHECK(mgi::residue(e.t.b[0]) == 1);
      CHECK(mgi::residue(e.t.b[1]) == 1);
      keys.insert(e.u.to_string());
    }
    // All 27 unitriangular matrices appear: the derived subgroup is the
    // embedded copy of UT_3(GF(3)).
    CHECK(keys.size() == 27);
  }
}

TEST_CASE("the deformed general linear product law validates its context") {
  const mgi::RingSpec gf7 = mgi::parse_ring("gf:7");
  const std::uint32_t n = 3;
  const FinAbGroup b2{{2}};
  const FinAbGroup q3{{3}};

  auto d1 = [&](long long v) {
    return mgi::diag_elem(gf7, n, 1, mgi::ring_of(gf7, v));
  };
  const mgi::Matrix id = mgi::identity(gf7, n);

  // A fully untwisted context: trivial h, identity action, identity p.
  // The law degenerates to the direct product B x H_1 x A/A^n.
  const mgi::Cocycle h0 = mgi::trivial_cocycle(q3, b2);
  const std::vector<mgi::Matrix> act0 = {id, id, id};
  const std::vector<mgi::Matrix> p0(9, id);
  const std::vector<mgi::Matrix> samples = {
      mgi::transvection(gf7, n, 1, 2, mgi::ring_of(gf7, 3)), d1(6)};
  const mgi::GlDeformContext ctx0 =
      mgi::make_gl_context(gf7, n, b2, q3, h0, act0, p0, samples);

  const mgi::GlDeformElem x{1, samples[0], 2};
  const mgi::GlDeformElem y{1, d1(6), 2};
  const mgi::GlDeformElem xy = mgi::gl_deform_product(ctx0, x, y);
  CHECK(xy.b == 0);
  CHECK(xy.a == 1);
  CHECK(xy.c == mgi::mat_mul(samples[0], d1(6)));

  // Identity element behaves.
  const mgi::GlDeformElem e = mgi::gl_identity(ctx0);
  const mgi::GlDeformElem ex = mgi::gl_deform_product(ctx0, e, x);
  CHECK(ex.b == x.b);
  CHECK(ex.a == x.a);
  CHECK(ex.c == x.c);

  // Carrier membership is policed: det 3 is not a cube mod 7.
  CHECK_THROWS_WITH_AS(
      mgi::gl_deform_product(ctx0, x, mgi::GlDeformElem{0, d1(3), 0}),
      doctest::Contains("InconsistentContext"), mgi::error);

  // Context tampering is rejected.
  // (a) Non-diagonal p value.
  {
    std::vector<mgi::Matrix> bad = p0;
    bad[1 * 3 + 2] = samples[0];
    bad[2 * 3 + 1] = samples[0];
    CHECK_THROWS_WITH_AS(
        mgi::make_gl_context(gf7, n, b2, q3, h0, act0, bad, samples),
        doctest::Contains("InconsistentContext"), mgi::error);
  }
  // (b) Action of the identity coset must be scalar.
  {
    std::vector<mgi::Matrix> bad = act0;
    bad[0] = samples[0];
    CHECK_THROWS_WITH_AS(
        mgi::make_gl_context(gf7, n, b2, q3, h0, bad, p0, samples),
        doctest::Contains("InconsistentContext"), mgi::error);
  }
  // (c) h must satisfy the cocycle identity.
  {
    mgi::Cocycle bad = h0;
    bad.table[1 * 3 + 1] = 1;  // h(1,1) = 1 alone breaks associativity
    CHECK_THROWS_WITH_AS(
        mgi::make_gl_context(gf7, n, b2, q3, bad, act0, p0, samples),
        doctest::Contains("InconsistentContext"), mgi::error);
  }
  // (d) Samples must live in the carrier subgroup.
  CHECK_THROWS_WITH_AS(
      mgi::make_gl_context(gf7, n, b2, q3, h0, act0, p0, {d1(3)}),
      doctest::Contains("InconsistentContext"), mgi::error);
}

TEST_CASE("cube-class corrections reconstruct the general linear group") {
  const mgi::RingSpec gf7 = mgi::parse_ring("gf:7");
  const std::uint32_t n = 3;
  auto d1 = [&](long long v) {
    return mgi::diag_elem(gf7, n, 1, mgi::ring_of(gf7, v));
  };
  const mgi::Matrix id = mgi::identity(gf7, n);

  // Coset representatives of the cube classes of GF(7)^x: 1, 3, 2.
  const std::vector<long long> reps = {1, 3, 2};
  std::vector<mgi::Matrix> action;
  for (long long r : reps) action.push_back(d1(r));

  // p(q1, q2) = d_1(rep(q1) rep(q2) rep(q1+q2)^-1), valued in {I, d_1(6)}.
  std::vector<mgi::Matrix> p;
  for (std::uint32_t i = 0; i < 3; ++i) {
    for (std::uint32_t j = 0; j < 3; ++j) {
      const mgi::RingElem prod = mgi::ring_mul(
          gf7, mgi::ring_of(gf7, reps[i]), mgi::ring_of(gf7, reps[j]));
      const mgi::RingElem corr = mgi::ring_mul(
          gf7, prod,
          mgi::ring_inv(gf7, mgi::ring_of(gf7, reps[(i + j) % 3])));
      p.push_back(mgi::diag_elem(gf7, n, 1, corr));
    }
  }
  CHECK(p[1 * 3 + 1] == id);     // 3 * 3 = 2 is already a representative
  CHECK(p[1 * 3 + 2] == d1(6));  // 3 * 2 = 6 = 6 * 1
  CHECK(p[2 * 3 + 2] == d1(6));  // 2 * 2 = 4 = 6 * 3

  const FinAbGroup b1{{1}};
  const FinAbGroup q3{{3}};
  const std::vector<mgi::Matrix> samples = {
      mgi::transvection(gf7, n, 1, 2, mgi::ring_of(gf7, 3)),
      mgi::transvection(gf7, n, 2, 3, mgi::ring_of(gf7, 5)), d1(6)};
  const mgi::GlDeformContext ctx = mgi::make_gl_context(
      gf7, n, b1, q3, mgi::trivial_cocycle(q3, b1), action, p, samples);

  // phi(b, c, q) = c d_1(rep q) is a group homomorphism into GL_3(GF(7)).
  auto phi = [&](const mgi::GlDeformElem& g) {
    return mgi::mat_mul(g.c, d1(reps[g.a]));
  };
  std::mt19937_64 rng(20250816);
  auto random_carrier = [&]() {
    mgi::Matrix m = id;
    for (int step = 0; step < 6; ++step) {
      const std::uint32_t kind = rng() % 3;
      if (kind == 2) {
        m = mgi::mat_mul(m, d1(6));
      } else {
        const std::uint32_t i = 1 + rng() % n;
        std::uint32_t j = 1 + rng() % n;
        while (j == i) j = 1 + rng() % n;
        m = mgi::mat_mul(m, mgi::transvection(
                                gf7, n, i, j,
                                mgi::ring_of(gf7, 1 + (long long)(rng() % 6))));
      }
    }
    return m;
  };
  for (int trial = 0; trial < 60; ++trial) {
    const mgi::GlDeformElem g{0, random_carrier(), (std::uint32_t)(rng() % 3)};
    const mgi::GlDeformElem h{0, random_carrier(), (std::uint32_t)(rng() % 3)};
    CHECK(phi(mgi::gl_deform_product(ctx, g, h)) ==
          mgi::mat_mul(phi(g), phi(h)));
  }

  // Tampering the correction table breaks associativity on the grid.
  {
    std::vector<mgi::Matrix> bad = p;
    bad[2 * 3 + 2] = id;
    CHECK_THROWS_WITH_AS(
        mgi::make_gl_context(gf7, n, b1, q3, mgi::trivial_cocycle(q3, b1),
                             action, bad, samples),
        doctest::Contains("InconsistentContext"), mgi::error);
  }
}
