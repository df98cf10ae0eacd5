#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "mgi/cohom.hpp"
#include "mgi/deform.hpp"
#include "mgi/json_io.hpp"
#include "mgi/matrix.hpp"
#include "mgi/ring.hpp"
#include "mgi/word.hpp"

using namespace mgi;

namespace {

// f((x1,x2),(y1,y2)) = carry of x1 + y1 mod 2.
Cocycle factor1_cocycle() {
  FinAbGroup dom{{2, 2}};
  FinAbGroup cod{{2}};
  std::vector<std::uint32_t> table(16, 0);
  for (std::uint32_t x = 0; x < 4; ++x)
    for (std::uint32_t y = 0; y < 4; ++y)
      if (dom.tuple(x)[0] + dom.tuple(y)[0] >= 2) table[x * 4 + y] = 1;
  return make_cocycle(dom, cod, table);
}

}  // namespace

TEST_CASE("matrix documents round-trip") {
  RingSpec gf5 = parse_ring("gf:5");
  Matrix m(gf5, 3);
  m.set(1, 2, ring_of(gf5, 2));
  m.set(3, 1, ring_of(gf5, 4));
  CHECK(matrix_from_json(matrix_to_json(m)) == m);

  RingSpec qq = parse_ring("q");
  Matrix r(qq, 2);
  r.set(1, 1, ring_of(qq, rational(3, 7)));
  r.set(1, 2, ring_of(qq, -5));
  r.set(2, 2, ring_of(qq, rational(-1, 2)));
  std::string text = matrix_to_json(r);
  CHECK(text.find("3/7") != std::string::npos);
  CHECK(matrix_from_json(text) == r);

  // Plain integer entries are accepted on input.
  Matrix a = matrix_from_json(
      R"({"ring":"gf:5","n":2,"entries":[[1,2],[0,1]]})");
  CHECK(a.at(1, 2) == ring_of(gf5, 2));
  CHECK(a.at(2, 2) == ring_of(gf5, 1));
}

TEST_CASE("matrix documents reject malformed and ill-typed input") {
  // Malformed JSON carries the offending byte position.
  try {
    matrix_from_json(R"({"ring":"gf:5","n":2,"entries":[[1,2],[0,)");
    FAIL("expected json_parse_error");
  } catch (const json_parse_error& e) {
    CHECK(e.byte() > 0);
    CHECK(std::string(e.what()).find("parse error at byte") !=
          std::string::npos);
  }

  // Schema violations report byte 0.
  CHECK_THROWS_AS(matrix_from_json(R"({"n":2,"entries":[[1,2],[0,1]]})"),
                  json_parse_error);
  CHECK_THROWS_AS(
      matrix_from_json(R"({"ring":"gf:5","n":3,"entries":[[1,2],[0,1]]})"),
      json_parse_error);
  CHECK_THROWS_AS(
      matrix_from_json(R"({"ring":"nope","n":2,"entries":[[1,2],[0,1]]})"),
      json_parse_error);
  CHECK_THROWS_AS(
      matrix_from_json(R"({"ring":"gf:5","n":2,"entries":[[1,"x"],[0,1]]})"),
      json_parse_error);
  CHECK_THROWS_AS(matrix_from_json(R"({"ring":"gf:5","n":0,"entries":[]})"),
                  json_parse_error);
}

TEST_CASE("word documents round-trip and evaluate") {
  RingSpec gf5 = parse_ring("gf:5");
  TransvectionWord w = word_from_json(
      R"({"ring":"gf:5","n":3,"letters":[[1,2,"2"],[2,3,"3"]],)"
      R"("diag":{"index":3,"value":"4"}})");
  REQUIRE(w.letters.size() == 2);
  REQUIRE(w.diag.has_value());
  CHECK(w.diag->index == 3);
  CHECK(w.diag_pos == 2);
  Matrix expect = mat_mul(
      mat_mul(transvection(gf5, 3, 1, 2, ring_of(gf5, 2)),
              transvection(gf5, 3, 2, 3, ring_of(gf5, 3))),
      diag_elem(gf5, 3, 3, ring_of(gf5, 4)));
  CHECK(eval_word(w) == expect);
  CHECK(word_from_json(word_to_json(w)).letters == w.letters);

  // A non-trailing diagonal factor keeps its position through the format.
  TransvectionWord mid = w;
  mid.diag_pos = 1;
  std::string text = word_to_json(mid);
  CHECK(text.find("\"pos\"") != std::string::npos);
  TransvectionWord back = word_from_json(text);
  CHECK(back.diag_pos == 1);
  CHECK(eval_word(back) == eval_word(mid));
  CHECK(eval_word(back) != eval_word(w));
}

TEST_CASE("word documents reject bad shapes") {
  CHECK_THROWS_AS(
      word_from_json(R"({"ring":"gf:5","n":3,"letters":[[1,1,"2"]]})"),
      json_parse_error);
  CHECK_THROWS_AS(
      word_from_json(R"({"ring":"gf:5","n":3,"letters":[[1,4,"2"]]})"),
      json_parse_error);
  CHECK_THROWS_AS(word_from_json(R"({"ring":"gf:5","n":3,"letters":[],)"
                                 R"("diag":{"index":3,"value":"0"}})"),
                  json_parse_error);
  CHECK_THROWS_AS(word_from_json(R"({"ring":"gf:5","n":3,)"
                                 R"("letters":[[1,2,"2"]],"pos":0})"),
                  json_parse_error);
  CHECK_THROWS_AS(word_from_json(R"({"ring":"gf:5","n":3,"letters":[],)"
                                 R"("diag":{"index":3,"value":"4"},"pos":5})"),
                  json_parse_error);
}

TEST_CASE("cocycle documents round-trip") {
  Cocycle f = factor1_cocycle();
  Cocycle back = cocycle_from_json(cocycle_to_json(f));
  CHECK(back.domain == f.domain);
  CHECK(back.codomain == f.codomain);
  CHECK(back.table == f.table);
  CHECK(back.symmetric_flag);

  // Omitted keys default to the identity: an empty table is trivial.
  Cocycle triv = cocycle_from_json(R"({"domain":[2,2],"codomain":[2],)"
                                   R"("table":{}})");
  for (std::uint32_t v : triv.table) CHECK(v == 0);

  Cocycle asym = f;
  asym.symmetric_flag = false;
  std::string text = cocycle_to_json(asym);
  CHECK(text.find("\"symmetric\"") != std::string::npos);
  CHECK_FALSE(cocycle_from_json(text).symmetric_flag);

  CHECK_THROWS_AS(cocycle_from_json(R"x({"domain":[2,2],"codomain":[2],)x"
                                    R"x("table":{"(1,0)":"(1)"}})x"),
                  json_parse_error);
  CHECK_THROWS_AS(cocycle_from_json(R"x({"domain":[2,2],"codomain":[2],)x"
                                    R"x("table":{"(1,0)|(2,0)":"(1)"}})x"),
                  json_parse_error);
  CHECK_THROWS_AS(cocycle_from_json(R"x({"domain":[2,2],"codomain":[2],)x"
                                    R"x("table":{"(1,0)|(1,0)":"(2)"}})x"),
                  json_parse_error);
}

TEST_CASE("deformation documents build validated contexts") {
  DeformContext ctx =
      make_deform_context(parse_ring("gf:3"), 3, FinAbGroup{{2}},
                          factor1_cocycle());
  std::string text = deform_to_json(ctx);
  DeformContext back = deform_from_json(text);
  CHECK(back.ring == ctx.ring);
  CHECK(back.n == ctx.n);
  CHECK(back.z == ctx.z);
  CHECK(back.f.table == ctx.f.table);

  // Omitted cocycle means the trivial one.
  DeformContext plain =
      deform_from_json(R"({"ring":"gf:3","n":3,"Z":[2]})");
  for (std::uint32_t v : plain.f.table) CHECK(v == 0);

  // Well-formed JSON whose cocycle does not fit the context is a domain
  // error, not a parse error.
  CHECK_THROWS_WITH_AS(
      deform_from_json(R"({"ring":"gf:3","n":3,"Z":[2],)"
                       R"("cocycle":{"domain":[2],"codomain":[2],)"
                       R"("table":{}}})"),
      doctest::Contains("InvalidCocycle"), error);
}
