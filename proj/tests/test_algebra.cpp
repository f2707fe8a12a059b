#include "doctest.h"

#include "ezdkit/algebra.hpp"
#include "fixtures.hpp"

using namespace ezdkit;

TEST_CASE("hilbert series") {
  auto R8 = testing::noconca_ring();
  CHECK(R8->hilbert() == std::vector<int>{1, 4, 3});
  CHECK(R8->top_degree() == 2);
  CHECK(R8->dim() == 8);

  auto C3 = testing::conca_example(3);
  CHECK(C3->hilbert() == std::vector<int>{1, 3, 2});

  auto DVR = GradedAlgebra::build(parse_presentation("field = QQ\nvars = x\nrelations = x^3\n"));
  CHECK(DVR->hilbert() == std::vector<int>{1, 1, 1});
}

TEST_CASE("degree-2 basis of the example ring is st, su, tu") {
  auto A = testing::noconca_ring();
  CHECK(A->monomial_string(2, 0) == "s*t");
  CHECK(A->monomial_string(2, 1) == "s*u");
  CHECK(A->monomial_string(2, 2) == "t*u");
  // v^2 = st + su
  AElem v2 = parse_element("v^2", A);
  CHECK(v2 == parse_element("s*t + s*u", A));
}

TEST_CASE("not artinian within cap") {
  try {
    GradedAlgebra::build(parse_presentation("field = GF(2)\nvars = x y\nrelations = x*y\n"));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotArtinianWithinCap);
  }
}

TEST_CASE("the certified pair of the example ring multiplies to zero") {
  auto A = testing::noconca_ring();
  AElem x = parse_element("s+t+2*u-v", A);
  AElem w = parse_element("3*s+t-2*u+4*v", A);
  CHECK(A->is_zero(A->multiply(x, w)));
  // unit law and commutativity
  CHECK(A->multiply(x, A->one()) == x);
  CHECK(A->multiply(x, w) == A->multiply(w, x));
}

TEST_CASE("multiplication operator") {
  auto A = testing::conca_example(3, "GF(2)");
  CHECK(Mat::identity(A->field(), A->dim()) == A->multiplication_operator(A->one()));
  CHECK(A->multiplication_operator(A->zero()).is_zero());
  // l((x1)) = e = 3 (image enumeration done by rank)
  CHECK(rank_of(A->multiplication_operator(parse_element("x1", A))) == 3);
}

TEST_CASE("annihilators and lengths") {
  auto A = testing::conca_example(3);
  CHECK(A->annihilator(A->one()).dim() == 0);
  CHECK(A->annihilator(A->zero()).dim() == A->dim());
  AElem x1 = parse_element("x1", A);
  IdealView ann = A->annihilator(x1);
  CHECK(ann.dim() == 3);
  CHECK(ann.same_subspace(A->principal_ideal(x1)));
  // rank-nullity: l(R) = l((x)) + l(ann x)
  CHECK(A->principal_ideal(x1).dim() + ann.dim() == A->dim());
}

TEST_CASE("socle and gorenstein") {
  auto A = testing::noconca_ring();
  IdealView soc = A->socle();
  CHECK(soc.dim() == 3);
  CHECK(soc.same_subspace(A->maximal_ideal_power(2)));
  CHECK(!A->is_gorenstein());
  CHECK(A->is_short());
  CHECK(A->maximal_ideal_power(3).dim() == 0);

  auto G = GradedAlgebra::build(
      parse_presentation("field = GF(2)\nvars = x y\nrelations = x^2, y^2\n"));
  IdealView gsoc = G->socle();
  CHECK(gsoc.dim() == 1);
  CHECK(gsoc.contains(parse_element("x*y", G)));
  CHECK(G->is_gorenstein());

  auto DVR = GradedAlgebra::build(parse_presentation("field = QQ\nvars = x\nrelations = x^3\n"));
  CHECK(DVR->is_gorenstein());
  CHECK(DVR->is_short());
}

TEST_CASE("membership mod powers of m") {
  auto A = testing::conca_example(3);
  AElem x1 = parse_element("x1", A), x2 = parse_element("x2", A);
  CHECK(A->span_membership_mod(x1, {x1}, 2));
  CHECK(!A->span_membership_mod(x2, {x1}, 2));
  auto R8 = testing::noconca_ring();
  CHECK(R8->lin_indep_mod_m2({parse_element("s", R8), parse_element("t", R8),
                              parse_element("u", R8), parse_element("v", R8)}));
  CHECK(!R8->lin_indep_mod_m2({parse_element("s", R8), parse_element("2*s", R8)}));
  CHECK(!R8->lin_indep_mod_m2({parse_element("s*t", R8)})); // zero mod m^2
}

TEST_CASE("unit inversion") {
  auto A = testing::noconca_ring();
  Rng rng(3);
  for (int iter = 0; iter < 50; ++iter) {
    AElem u = A->zero();
    for (auto& c : u.c) c = A->field()->sample(rng);
    if (A->field()->is_zero(u.c[0])) u.c[0] = A->field()->one();
    CHECK(A->multiply(u, A->invert(u)) == A->one());
  }
}

TEST_CASE("element enumeration of m") {
  auto A = testing::conca_example(3, "GF(2)");
  REQUIRE(A->m_size() == 32); // 2^5
  AElem x = A->m_element_at(17);
  CHECK(A->in_m(x));
}
