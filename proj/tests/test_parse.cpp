#include "doctest.h"

#include "ezdkit/algebra.hpp"
#include "ezdkit/parse.hpp"
#include "fixtures.hpp"

using namespace ezdkit;

TEST_CASE("presentation of the four-variable example ring") {
  auto src = parse_presentation(
      "# comment line\n"
      "field = GF(5)\n"
      "vars = s t u v\n"
      "relations = s^2, s*v, t^2, t*v,\n"
      "            u^2, u*v, v^2 - s*t - s*u\n");
  CHECK(src.vars == std::vector<std::string>{"s", "t", "u", "v"});
  CHECK(src.relations.size() == 7);
  CHECK(src.relations[0].degree == 2);
  CHECK(src.relations[6].terms.size() == 3);
  CHECK(src.degree_cap == 6);
}

TEST_CASE("one cubic relation over QQ") {
  auto src = parse_presentation("field = QQ\nvars = x\nrelations = x^3\n");
  CHECK(src.vars.size() == 1);
  CHECK(src.relations.size() == 1);
  CHECK(src.relations[0].degree == 3);
}

TEST_CASE("non-homogeneous relation rejected") {
  try {
    parse_presentation("field = GF(2)\nvars = x y z\nrelations = x*y + z\n");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NonHomogeneousRelation);
  }
}

TEST_CASE("errors carry positions and kinds") {
  CHECK_THROWS_AS(parse_presentation("field = GF(5)\nvars = x x\n"), Error);
  CHECK_THROWS_AS(parse_presentation("vars = x\nrelations = x^2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("field = GF(5)\nvars = x\nrelations = x^\n"), ParseError);
  try {
    parse_presentation("field = GF(5)\nvars = x\nrelations = @\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("field specs") {
  CHECK(parse_fieldspec("QQ").kind == FieldSpec::Kind::Rationals);
  auto gf9 = parse_fieldspec("GF(3^2; g^2+g+2)");
  CHECK(gf9.kind == FieldSpec::Kind::Extension);
  CHECK(gf9.p == 3);
  CHECK(gf9.modulus == std::vector<std::uint64_t>{2, 1, 1});
  CHECK(gf9.gen_name == "g");
  CHECK_THROWS(parse_fieldspec("GF(3^2; g^3+1)")); // degree mismatch
}

TEST_CASE("element parsing in the example ring") {
  auto A = testing::noconca_ring();
  // coordinate vector (0; 1,1,2,-1; 0,0,0) over basis (1; s,t,u,v; st,su,tu)
  AElem x = parse_element("s+t+2*u-v", A);
  REQUIRE(A->dim() == 8);
  Vec want = {A->field()->from_int(0), A->field()->from_int(1), A->field()->from_int(1),
              A->field()->from_int(2), A->field()->from_int(4), A->field()->from_int(0),
              A->field()->from_int(0), A->field()->from_int(0)};
  CHECK(x.c == want);
  CHECK(A->is_zero(parse_element("0", A)));
  CHECK(A->is_zero(parse_element("s*s", A)));
  // s*t lands on the degree-2 basis vector st
  AElem st = parse_element("s*t", A);
  CHECK(st.c[A->offset(2) + 0] == A->field()->one());
  CHECK_THROWS_AS(parse_element("s+q", A), Error);
}

TEST_CASE("matrix parsing") {
  auto A = testing::noconca_ring();
  auto rows = parse_matrix_rows("t, -t+u-v ; t+u-v, s+u", A);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].size() == 2);
  CHECK(rows[0][0] == parse_element("t", A));
  CHECK(rows[1][1] == parse_element("s+u", A));
  auto single = parse_matrix_rows("v", A); // 1x1
  REQUIRE(single.size() == 1);
  CHECK(single[0].size() == 1);
}

TEST_CASE("ragged rows rejected") {
  auto A = testing::noconca_ring();
  try {
    parse_matrix_rows("s, ; t", A);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::RaggedRows);
  }
  try {
    parse_matrix_rows("s, t ; u", A);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::RaggedRows);
  }
}

TEST_CASE("round trip render/parse") {
  auto A = testing::noconca_ring();
  Rng rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    AElem x = A->zero();
    for (auto& c : x.c) c = A->field()->sample(rng);
    CHECK(parse_element(A->render(x), A) == x);
  }
  CHECK(A->render(A->zero()) == "0");
  auto Q = GradedAlgebra::build(parse_presentation("field = QQ\nvars = x\nrelations = x^3\n"));
  AElem q = parse_element("-1/2*x + x^2", Q);
  CHECK(parse_element(Q->render(q), Q) == q);
}

TEST_CASE("parser is total: no crashes on fuzzed input") {
  auto A = testing::noconca_ring();
  Rng rng(0xf22);
  const std::string alphabet = "stuv0123456789+-*^()/, ;\n#qg_";
  int parsed = 0, rejected = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    std::string s;
    int len = 1 + (int)rng.below(24);
    for (int i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
    try {
      (void)parse_element(s, A);
      ++parsed;
    } catch (const ParseError&) {
      ++rejected;
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(parsed + rejected == 3000);
  // seeded well-formed expressions always parse and round-trip
  for (int iter = 0; iter < 200; ++iter) {
    AElem x = A->zero();
    for (auto& c : x.c) c = A->field()->sample(rng);
    std::string s = A->render(x);
    CHECK(parse_element(s, A) == x);
  }
}
