#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mgi/cohom.hpp"
#include "mgi/error.hpp"

using mgi::Cocycle;
using mgi::FinAbGroup;

namespace {

// Builds a cocycle table from a value functional on index pairs.
template <typename F>
Cocycle table_from(const FinAbGroup& b, const FinAbGroup& a, F value,
                   bool symmetric = true) {
  const std::uint64_t n = b.size();
  std::vector<std::uint32_t> t(n * n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) t[x * n + y] = value(x, y);
  }
  return mgi::make_cocycle(b, a, std::move(t), symmetric);
}

// The order-4 extension cocycle on Z/2 with values in Z/2: f(1,1) = g.
Cocycle z4_cocycle() {
  return mgi::make_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}, {0, 0, 0, 1},
                           true);
}

// The carry cocycle of 0 -> Z/3 -> Z/9 -> Z/3 -> 0.
Cocycle carry3_cocycle() {
  return mgi::make_cocycle(FinAbGroup{{3}}, FinAbGroup{{3}},
                           {0, 0, 0, 0, 0, 1, 0, 1, 1}, true);
}

const mgi::CheckRecord& record_by_id(const mgi::Report& rep,
                                     const std::string& id) {
  for (const auto& r : rep.records()) {
    if (r.id == id) return r;
  }
  static mgi::CheckRecord dummy;
  REQUIRE_MESSAGE(false, "missing record " << id);
  return dummy;
}

}  // namespace

TEST_CASE("finite abelian carriers do mixed-radix arithmetic") {
  const FinAbGroup g{{2, 3}};
  CHECK(g.size() == 6);
  CHECK(g.describe() == std::string("Z/2 x Z/3"));
  CHECK(FinAbGroup{}.describe() == std::string("1"));
  CHECK(FinAbGroup{}.size() == 1);

  for (std::uint32_t i = 0; i < 6; ++i) {
    CHECK(g.index(g.tuple(i)) == i);
    CHECK(g.add(i, g.neg(i)) == 0);
    CHECK(g.sub(i, i) == 0);
  }
  CHECK(g.index({1, 0}) == 1);
  CHECK(g.index({0, 1}) == 2);
  CHECK(g.add(g.index({1, 2}), g.index({1, 2})) == g.index({0, 1}));

  CHECK(g.element_order(0) == 1);
  CHECK(g.element_order(g.index({1, 0})) == 2);
  CHECK(g.element_order(g.index({0, 1})) == 3);
  CHECK(g.element_order(g.index({1, 1})) == 6);

  CHECK_THROWS_WITH_AS(g.index({1, 0, 0}), doctest::Contains("BadIndex"),
                       mgi::error);
  CHECK_THROWS_WITH_AS(g.index({0, 3}), doctest::Contains("BadIndex"),
                       mgi::error);
  CHECK_THROWS_WITH_AS(mgi::trivial_cocycle(FinAbGroup{{128}}, FinAbGroup{{2}}),
                       doctest::Contains("TooLarge"), mgi::error);
  CHECK_THROWS_WITH_AS(
      mgi::make_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}, {0, 0, 0}),
      doctest::Contains("InvalidCocycle"), mgi::error);
  CHECK_THROWS_WITH_AS(
      mgi::make_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}, {0, 0, 0, 2}),
      doctest::Contains("InvalidCocycle"), mgi::error);
}

TEST_CASE("cocycle axioms are certified over full triple sweeps") {
  const mgi::Report triv =
      mgi::cocycle_check(mgi::trivial_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}));
  CHECK(triv.all_pass());
  CHECK(record_by_id(triv, "normalization").expected ==
        std::string("0 failures / 4 cases"));
  CHECK(record_by_id(triv, "cocycle-identity").expected ==
        std::string("0 failures / 8 cases"));
  CHECK(record_by_id(triv, "symmetry").expected ==
        std::string("0 failures / 3 cases"));
  CHECK(triv.suite() == std::string("cocycle"));

  CHECK(mgi::cocycle_check(z4_cocycle()).all_pass());
  CHECK(mgi::cocycle_check(carry3_cocycle()).all_pass());

  // Broken normalization: f(1, x) is not the identity.
  const Cocycle bad_norm =
      mgi::make_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}, {1, 0, 0, 1}, true);
  const mgi::Report rn = mgi::cocycle_check(bad_norm);
  CHECK_FALSE(rn.all_pass());
  CHECK_FALSE(record_by_id(rn, "normalization").pass);
  CHECK(record_by_id(rn, "normalization-first-violation").observed ==
        std::string("x = 0"));

  // Normalized and symmetric, but the associativity-style identity fails.
  const Cocycle bad_ident = mgi::make_cocycle(
      FinAbGroup{{3}}, FinAbGroup{{2}}, {0, 0, 0, 0, 1, 0, 0, 0, 0}, true);
  const mgi::Report ri = mgi::cocycle_check(bad_ident);
  CHECK(record_by_id(ri, "normalization").pass);
  CHECK_FALSE(record_by_id(ri, "cocycle-identity").pass);
  CHECK(record_by_id(ri, "identity-first-violation").observed ==
        std::string("(x,y,z) = (1,1,2)"));

  // Asymmetric table carrying the symmetric flag.
  const Cocycle bad_sym = mgi::make_cocycle(
      FinAbGroup{{3}}, FinAbGroup{{2}}, {0, 0, 0, 0, 0, 1, 0, 0, 0}, true);
  const mgi::Report rs = mgi::cocycle_check(bad_sym);
  CHECK_FALSE(record_by_id(rs, "symmetry").pass);
  CHECK(record_by_id(rs, "symmetry-first-violation").observed ==
        std::string("(x,y) = (2,1)"));

  // Without the flag no symmetry record is emitted at all.
  const Cocycle unflagged = mgi::make_cocycle(
      FinAbGroup{{3}}, FinAbGroup{{2}}, {0, 0, 0, 0, 0, 1, 0, 0, 0}, false);
  const mgi::Report ru = mgi::cocycle_check(unflagged);
  for (const auto& r : ru.records()) {
    CHECK(r.id.find("symmetry") == std::string::npos);
  }
}

TEST_CASE("coboundaries arise from pointed maps and split back") {
  const FinAbGroup z2{{2}};
  const FinAbGroup z3{{3}};

  CHECK(mgi::coboundary_from(z2, z2, {0, 0}).table ==
        std::vector<std::uint32_t>{0, 0, 0, 0});
  // Over Z/2 every pointed map has a trivial coboundary: 2 psi(g) = 0.
  CHECK(mgi::coboundary_from(z2, z2, {0, 1}).table ==
        std::vector<std::uint32_t>{0, 0, 0, 0});

  // All nine pointed maps Z/3 -> Z/3 give cocycles; exactly three tables
  // appear, since homomorphisms (three of them) have trivial coboundary.
  std::set<std::vector<std::uint32_t>> tables;
  for (std::uint32_t v1 = 0; v1 < 3; ++v1) {
    for (std::uint32_t v2 = 0; v2 < 3; ++v2) {
      const Cocycle g = mgi::coboundary_from(z3, z3, {0, v1, v2});
      CHECK(mgi::cocycle_check(g).all_pass());
      tables.insert(g.table);
    }
  }
  CHECK(tables.size() == 3);

  CHECK_THROWS_WITH_AS(mgi::coboundary_from(z2, z2, {1, 0}),
                       doctest::Contains("InvalidCocycle"), mgi::error);
  CHECK_THROWS_WITH_AS(mgi::coboundary_from(z2, z2, {0, 0, 0}),
                       doctest::Contains("InvalidCocycle"), mgi::error);
  CHECK_THROWS_WITH_AS(mgi::coboundary_from(z2, z2, {0, 2}),
                       doctest::Contains("InvalidCocycle"), mgi::error);

  // Round trips over two shapes: every pointed map's coboundary is
  // recognized, and the recovered witness reproduces the exact table.
  const FinAbGroup b22{{2, 2}};
  for (std::uint32_t v1 = 0; v1 < 2; ++v1) {
    for (std::uint32_t v2 = 0; v2 < 2; ++v2) {
      for (std::uint32_t v3 = 0; v3 < 2; ++v3) {
        const Cocycle g = mgi::coboundary_from(b22, z2, {0, v1, v2, v3});
        const auto w = mgi::is_coboundary(g);
        REQUIRE(w.has_value());
        CHECK(mgi::coboundary_from(b22, z2, *w).table == g.table);
      }
    }
  }
  const FinAbGroup z4{{4}};
  for (std::uint32_t v1 = 0; v1 < 2; ++v1) {
    for (std::uint32_t v2 = 0; v2 < 2; ++v2) {
      for (std::uint32_t v3 = 0; v3 < 2; ++v3) {
        const Cocycle g = mgi::coboundary_from(z4, z2, {0, v1, v2, v3});
        const auto w = mgi::is_coboundary(g);
        REQUIRE(w.has_value());
        CHECK(mgi::coboundary_from(z4, z2, *w).table == g.table);
      }
    }
  }
}

TEST_CASE("coboundary witnesses exist exactly when the extension splits") {
  const FinAbGroup z2{{2}};

  const auto triv_w = mgi::is_coboundary(mgi::trivial_cocycle(z2, z2));
  REQUIRE(triv_w.has_value());
  CHECK(*triv_w == std::vector<std::uint32_t>{0, 0});

  CHECK_FALSE(mgi::is_coboundary(z4_cocycle()).has_value());
  CHECK_FALSE(mgi::is_coboundary(carry3_cocycle()).has_value());

  // Translating by a coboundary cannot create a witness.
  const Cocycle shifted = mgi::cocycle_product(
      z4_cocycle(), mgi::coboundary_from(z2, z2, {0, 1}));
  CHECK_FALSE(mgi::is_coboundary(shifted).has_value());

  // The symmetric cross-term pairing on Z/2 x Z/2 is the coboundary of
  // psi(x) = x1 x2.
  const FinAbGroup b22{{2, 2}};
  const Cocycle cross = table_from(b22, z2, [&](std::uint32_t x, std::uint32_t y) {
    const auto tx = b22.tuple(x);
    const auto ty = b22.tuple(y);
    return (tx[0] * ty[1] + tx[1] * ty[0]) % 2;
  });
  CHECK(mgi::cocycle_check(cross).all_pass());
  const auto cross_w = mgi::is_coboundary(cross);
  REQUIRE(cross_w.has_value());
  CHECK(mgi::coboundary_from(b22, z2, *cross_w).table == cross.table);

  // A table that is not a symmetric cocycle has no witness.
  const Cocycle asym = mgi::make_cocycle(FinAbGroup{{3}}, FinAbGroup{{2}},
                                         {0, 0, 0, 0, 0, 1, 0, 0, 0}, false);
  CHECK_FALSE(mgi::is_coboundary(asym).has_value());
}

TEST_CASE("extension groups realize the twisted product law") {
  const FinAbGroup z2{{2}};

  const mgi::TableGroup klein =
      mgi::extension_group(mgi::trivial_cocycle(z2, z2));
  CHECK(klein.size == 4);
  CHECK(klein.abelian());
  CHECK(klein.order_multiset() == std::vector<std::uint64_t>{1, 2, 2, 2});

  const mgi::TableGroup c4 = mgi::extension_group(z4_cocycle());
  CHECK(c4.size == 4);
  CHECK(c4.abelian());
  CHECK(c4.order_multiset() == std::vector<std::uint64_t>{1, 2, 4, 4});

  const mgi::TableGroup c9 = mgi::extension_group(carry3_cocycle());
  CHECK(c9.order_multiset() ==
        std::vector<std::uint64_t>{1, 3, 3, 9, 9, 9, 9, 9, 9});

  // Inverses and identity from the table itself.
  for (std::uint32_t x = 0; x < c4.size; ++x) {
    CHECK(c4.product(x, c4.inverse_of(x)) == c4.identity);
    CHECK(c4.product(c4.identity, x) == x);
  }

  // A non-symmetric bilinear cocycle yields a non-abelian extension (the
  // dihedral group of order 8), so abelian <=> symmetric in both directions.
  const FinAbGroup b22{{2, 2}};
  const Cocycle skew = table_from(
      b22, z2,
      [&](std::uint32_t x, std::uint32_t y) {
        return (b22.tuple(x)[1] * b22.tuple(y)[0]) % 2;
      },
      false);
  CHECK(mgi::cocycle_check(skew).all_pass());
  const mgi::TableGroup d4 = mgi::extension_group(skew);
  CHECK(d4.size == 8);
  CHECK_FALSE(d4.abelian());
  CHECK(d4.order_multiset() ==
        std::vector<std::uint64_t>{1, 2, 2, 2, 2, 2, 4, 4});

  CHECK_THROWS_WITH_AS(
      mgi::extension_group(mgi::make_cocycle(z2, z2, {0, 1, 1, 0}, false)),
      doctest::Contains("InvalidCocycle"), mgi::error);
  CHECK_THROWS_WITH_AS(
      mgi::extension_group(
          mgi::trivial_cocycle(FinAbGroup{{64}}, FinAbGroup{{32}})),
      doctest::Contains("TooLarge"), mgi::error);
}

TEST_CASE("extension classes count by the gcd rule") {
  for (std::uint32_t m = 1; m <= 4; ++m) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
      const mgi::ExtClasses ext =
          mgi::ext_group(FinAbGroup{{m}}, FinAbGroup{{n}});
      CHECK_MESSAGE(ext.order == std::gcd(m, n), "m=" << m << " n=" << n);
      CHECK(ext.reps.size() == ext.order);
      for (const Cocycle& r : ext.reps) {
        CHECK(mgi::cocycle_check(r).all_pass());
      }
      for (std::size_t i = 0; i < ext.reps.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          CHECK_FALSE(mgi::cohomologous(ext.reps[i], ext.reps[j]).equivalent);
        }
      }
    }
  }

  const mgi::ExtClasses k4 =
      mgi::ext_group(FinAbGroup{{2, 2}}, FinAbGroup{{2}});
  CHECK(k4.order == 4);
  CHECK(k4.reps[0].table == std::vector<std::uint32_t>(16, 0));

  const mgi::ExtClasses two = mgi::ext_group(FinAbGroup{{2}}, FinAbGroup{{2}});
  CHECK(two.order == 2);
  CHECK(two.reps[1].table == std::vector<std::uint32_t>{0, 0, 0, 1});

  CHECK(mgi::ext_group(FinAbGroup{{2}}, FinAbGroup{{3}}).order == 1);
  CHECK(mgi::ext_group(FinAbGroup{{1}}, FinAbGroup{{4}}).order == 1);

  CHECK_THROWS_WITH_AS(mgi::ext_group(FinAbGroup{{8, 8}}, FinAbGroup{{4}}),
                       doctest::Contains("TooLarge"), mgi::error);
}

TEST_CASE("cohomologous is an equivalence compatible with extensions") {
  const FinAbGroup z4{{4}};
  const FinAbGroup z2{{2}};
  const Cocycle f = table_from(z4, z2, [](std::uint32_t x, std::uint32_t y) {
    return static_cast<std::uint32_t>((x + y) / 4);  // carry into Z/2
  });
  CHECK(mgi::cocycle_check(f).all_pass());

  CHECK(mgi::cohomologous(f, f).equivalent);

  const Cocycle g1 = mgi::coboundary_from(z4, z2, {0, 1, 0, 1});
  const Cocycle g2 = mgi::coboundary_from(z4, z2, {0, 0, 1, 1});
  const Cocycle f1 = mgi::cocycle_product(f, g1);
  const Cocycle f2 = mgi::cocycle_product(f1, g2);

  const mgi::CohomologousResult r1 = mgi::cohomologous(f, f1);
  REQUIRE(r1.equivalent);
  // Witness convention: f = f1 * d(psi).
  CHECK(mgi::cocycle_product(f1, mgi::coboundary_from(z4, z2, r1.psi)).table ==
        f.table);
  CHECK(mgi::cohomologous(f1, f).equivalent);   // symmetry of the relation
  CHECK(mgi::cohomologous(f, f2).equivalent);   // transitivity target
  CHECK(mgi::cohomologous(f1, f2).equivalent);

  CHECK_FALSE(mgi::cohomologous(z4_cocycle(),
                                mgi::trivial_cocycle(z2, z2))
                  .equivalent);
  CHECK_THROWS_WITH_AS(
      mgi::cohomologous(z4_cocycle(), mgi::trivial_cocycle(z4, z2)),
      doctest::Contains("SpecMismatch"), mgi::error);

  // Equivalent cocycles give isomorphic extensions via (b, a) -> (b, a psi(b)).
  const mgi::TableGroup ef1 = mgi::extension_group(f1);
  const mgi::TableGroup ef = mgi::extension_group(f);
  CHECK(ef1.order_multiset() == ef.order_multiset());
  const std::vector<std::uint32_t>& psi = r1.psi;  // f = f1 * d(psi)
  const std::uint64_t as = z2.size();
  auto phi = [&](std::uint32_t e) {  // E(f1) -> E(f)
    const auto [b, a] = ef1.labels[e];
    return static_cast<std::uint32_t>(b * as + z2.add(a, psi[b]));
  };
  for (std::uint32_t x = 0; x < ef1.size; ++x) {
    for (std::uint32_t y = 0; y < ef1.size; ++y) {
      CHECK(phi(ef1.product(x, y)) == ef.product(phi(x), phi(y)));
    }
  }
}

TEST_CASE("torsion-block coboundary verdicts") {
  const FinAbGroup b23{{2, 3}};
  const FinAbGroup z3{{3}};

  const mgi::CotResult triv = mgi::cot_check(
      mgi::trivial_cocycle(b23, z3), mgi::CotSplit{{0}, {1}});
  CHECK(triv.cot);
  CHECK(triv.decomposition_verified);
  CHECK(triv.torsion_part.domain.orders == std::vector<std::uint32_t>{2});

  // Lift the carry cocycle through the second coordinate. Reading the first
  // block as torsion gives a coboundary verdict; swapping the blocks puts
  // the obstruction inside the torsion part and flips the answer.
  const Cocycle lifted = table_from(b23, z3, [&](std::uint32_t x, std::uint32_t y) {
    return carry3_cocycle().at(b23.tuple(x)[1], b23.tuple(y)[1]);
  });
  CHECK(mgi::cocycle_check(lifted).all_pass());

  const mgi::CotResult ok = mgi::cot_check(lifted, mgi::CotSplit{{0}, {1}});
  CHECK(ok.cot);
  CHECK(ok.decomposition_verified);
  CHECK(ok.complement_part.table == carry3_cocycle().table);
  CHECK(ok.torsion_part.table == std::vector<std::uint32_t>(4, 0));

  const mgi::CotResult bad = mgi::cot_check(lifted, mgi::CotSplit{{1}, {0}});
  CHECK_FALSE(bad.cot);
  CHECK(bad.decomposition_verified);
  CHECK(bad.torsion_part.table == carry3_cocycle().table);

  // Whole domain as the torsion block.
  const mgi::CotResult whole =
      mgi::cot_check(z4_cocycle(), mgi::CotSplit{{0}, {}});
  CHECK_FALSE(whole.cot);
  CHECK(whole.torsion_part.table == z4_cocycle().table);
  const mgi::CotResult whole_triv = mgi::cot_check(
      mgi::trivial_cocycle(FinAbGroup{{2}}, FinAbGroup{{2}}),
      mgi::CotSplit{{0}, {}});
  CHECK(whole_triv.cot);

  CHECK_THROWS_WITH_AS(mgi::cot_check(lifted, mgi::CotSplit{{0}, {0, 1}}),
                       doctest::Contains("BadSplit"), mgi::error);
  CHECK_THROWS_WITH_AS(mgi::cot_check(lifted, mgi::CotSplit{{0}, {}}),
                       doctest::Contains("BadSplit"), mgi::error);
  CHECK_THROWS_WITH_AS(mgi::cot_check(lifted, mgi::CotSplit{{0, 2}, {1}}),
                       doctest::Contains("BadSplit"), mgi::error);
}

TEST_CASE("scalar factor recovery on unit-group powers") {
  const FinAbGroup z2{{2}};
  const FinAbGroup b22{{2, 2}};

  const mgi::BnFactorization triv =
      mgi::bn_factorize(mgi::trivial_cocycle(b22, z2));
  CHECK(triv.components.size() == 2);
  CHECK(triv.product_cohomologous);
  CHECK(triv.fn.table == std::vector<std::uint32_t>(4, 0));
  CHECK(triv.fn_matches_inverse);

  // Supported on the first factor: the components see exactly that factor,
  // and the scalar relation returns the inverse on the nose (order 2 values).
  const Cocycle first = table_from(b22, z2, [&](std::uint32_t x, std::uint32_t y) {
    return z4_cocycle().at(b22.tuple(x)[0], b22.tuple(y)[0]);
  });
  const mgi::BnFactorization bf = mgi::bn_factorize(first);
  CHECK(bf.components[0].table == z4_cocycle().table);
  CHECK(bf.components[1].table == std::vector<std::uint32_t>(4, 0));
  CHECK(bf.product_cohomologous);
  CHECK(bf.diagonal_restriction.table == z4_cocycle().table);
  CHECK(bf.fn.table == z4_cocycle().table);  // self-inverse mod 2
  CHECK(bf.fn_matches_inverse);

  // Cross-term pairing: both factor restrictions collapse, and the lifted
  // product is trivial; the pairing itself is a coboundary, so the
  // factorization still verifies.
  const Cocycle cross = table_from(b22, z2, [&](std::uint32_t x, std::uint32_t y) {
    const auto tx = b22.tuple(x);
    const auto ty = b22.tuple(y);
    return (tx[0] * ty[1] + tx[1] * ty[0]) % 2;
  });
  const mgi::BnFactorization cf = mgi::bn_factorize(cross);
  CHECK(cf.components[0].table == std::vector<std::uint32_t>(4, 0));
  CHECK(cf.components[1].table == std::vector<std::uint32_t>(4, 0));
  CHECK(cf.product_cohomologous);
  CHECK(cf.diagonal_restriction.table == std::vector<std::uint32_t>(4, 0));
  CHECK(cf.fn_matches_inverse);

  // Carry cocycle on the first of two Z/3 factors: the re-derived scalar
  // companion differs from the literal inverse table but stays cohomologous.
  const FinAbGroup b33{{3, 3}};
  const FinAbGroup z3{{3}};
  const Cocycle carried = table_from(b33, z3, [&](std::uint32_t x, std::uint32_t y) {
    return carry3_cocycle().at(b33.tuple(x)[0], b33.tuple(y)[0]);
  });
  const mgi::BnFactorization cb = mgi::bn_factorize(carried);
  CHECK(cb.components[0].table == carry3_cocycle().table);
  CHECK(cb.components[1].table == std::vector<std::uint32_t>(9, 0));
  CHECK(cb.product_cohomologous);
  CHECK(cb.fn.table != mgi::cocycle_inverse(cb.diagonal_restriction).table);
  CHECK(cb.fn_matches_inverse);

  CHECK_THROWS_WITH_AS(
      mgi::bn_factorize(mgi::trivial_cocycle(FinAbGroup{{2, 3}}, z2)),
      doctest::Contains("SpecMismatch"), mgi::error);
}

TEST_CASE("one hundred coboundary round trips") {
  const std::vector<std::vector<std::uint32_t>> domains = {
      {2}, {3}, {4}, {2, 2}, {2, 3}, {6}, {2, 2, 2}, {4, 2}};
  const std::vector<std::vector<std::uint32_t>> codomains = {
      {2}, {3}, {4}, {2, 2}, {6}};
  std::mt19937 rng(20250816);
  int trips = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const FinAbGroup b{domains[rng() % domains.size()]};
    const FinAbGroup a{codomains[rng() % codomains.size()]};
    std::vector<std::uint32_t> psi(b.size(), 0);
    for (std::size_t i = 1; i < psi.size(); ++i) {
      psi[i] = static_cast<std::uint32_t>(rng() % a.size());
    }
    const Cocycle g = mgi::coboundary_from(b, a, psi);
    CHECK(mgi::cocycle_check(g).all_pass());
    const auto w = mgi::is_coboundary(g);
    REQUIRE(w.has_value());
    CHECK(mgi::coboundary_from(b, a, *w).table == g.table);
    ++trips;
  }
  CHECK(trips == 100);
}
