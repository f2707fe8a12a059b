#include "doctest.h"

#include "ezdkit/generic.hpp"
#include "fixtures.hpp"

using namespace ezdkit;

TEST_CASE("grassmannian dimensions") {
  auto F = Field::make(FieldSpec::prime(5));
  Rng rng(1);
  auto s2 = sample_quadratic_algebra(2, F, rng);
  CHECK(s2.relations.size() == 2);
  auto s3 = sample_quadratic_algebra(3, F, rng);
  CHECK(s3.relations.size() == 4);
  auto s4 = sample_quadratic_algebra(4, F, rng);
  CHECK(s4.relations.size() == 7);
  for (const auto& rel : s4.relations) CHECK(rel.degree == 2);
}

TEST_CASE("linear form test on the e=3 fixture") {
  auto C = testing::conca_example(3);
  LinearFormVerdict v = linear_form_ezd_test(C, parse_element("x1", C));
  CHECK(v.ezd);
  // l' is an associate of x1
  CHECK(C->principal_ideal(v.partner).same_subspace(C->principal_ideal(parse_element("x1", C))));
  CHECK(!linear_form_ezd_test(C, C->zero()).ezd);
  CHECK(!linear_form_ezd_test(C, parse_element("x2", C)).ezd);
  CHECK_THROWS_AS(linear_form_ezd_test(C, parse_element("x1*x2", C)), Error);
}

TEST_CASE("every linear form degenerates in the example ring over F_2") {
  auto A = testing::noconca_ring("GF(2)");
  for (std::uint64_t i = 1; i < 16; ++i) {
    AElem ell = A->zero();
    std::uint64_t rest = i;
    for (int g = 0; g < 4; ++g) {
      ell.c[A->offset(1) + g] = A->field()->from_int((long long)(rest & 1));
      rest >>= 1;
    }
    CHECK(!linear_form_ezd_test(A, ell).ezd);
  }
}

TEST_CASE("linear form test agrees with the certificate on the example ring") {
  auto A = testing::noconca_ring("GF(5)");
  AElem x = parse_element("s+t+2*u-v", A);
  LinearFormVerdict v = linear_form_ezd_test(A, x);
  REQUIRE(v.ezd);
  CHECK(is_exact_pair(v.partner, x));
}

TEST_CASE("classification of the fixture instance") {
  auto C = testing::conca_example(3);
  InstanceClass cls = classify_quadratic_instance(C->source(), 7);
  CHECK(cls.hilbert_ok);
  CHECK(cls.ezd_ok);
  CHECK(cls.conca_ok);
  auto R8 = testing::noconca_ring("GF(3)");
  InstanceClass c8 = classify_quadratic_instance(R8->source(), 7);
  CHECK(c8.hilbert_ok);
  CHECK(!c8.ezd_ok);
  CHECK(!c8.conca_ok);
}

TEST_CASE("exhaustive classification of Gr(2,3) over F_2") {
  // the seven 2-dimensional quadric subspaces = kernels of nonzero
  // functionals on span{x^2, xy, y^2}
  auto F = Field::make(FieldSpec::prime(2));
  int hilbert_ok = 0, ezd_ok = 0, conca_ok = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        Mat phi(F, 1, 3);
        phi.at(0, 0) = F->from_int(a);
        phi.at(0, 1) = F->from_int(b);
        phi.at(0, 2) = F->from_int(c);
        auto kernel = nullspace(phi);
        REQUIRE(kernel.size() == 2);
        PresentationSource src;
        src.fspec = F->spec();
        src.field = F;
        src.vars = {"x", "y"};
        int exps[3][2] = {{2, 0}, {1, 1}, {0, 2}};
        for (const auto& v : kernel) {
          PolyExpr rel;
          rel.degree = 2;
          for (int t = 0; t < 3; ++t)
            if (!F->is_zero(v[t])) rel.terms.push_back({v[t], {exps[t][0], exps[t][1]}});
          src.relations.push_back(rel);
        }
        InstanceClass cls = classify_quadratic_instance(src, 11);
        hilbert_ok += cls.hilbert_ok;
        ezd_ok += cls.ezd_ok;
        conca_ok += cls.conca_ok;
      }
  // hand enumeration: the artinian points are the kernels of (0,1,0),
  // (1,0,1), (1,1,0), (0,1,1); each is a complete intersection with both
  // an exact zero divisor and a Conca generator
  CHECK(hilbert_ok == 4);
  CHECK(ezd_ok == 4);
  CHECK(conca_ok == 4);
}

TEST_CASE("density reports are deterministic and monotone") {
  auto F = Field::make(FieldSpec::prime(11));
  SampleReport a = density_report(3, F, 40, 12345);
  SampleReport b = density_report(3, F, 40, 12345);
  CHECK(a.hilbert_ok == b.hilbert_ok);
  CHECK(a.ezd_ok == b.ezd_ok);
  CHECK(a.conca_ok == b.conca_ok);
  CHECK(a.conca_ok <= a.ezd_ok);
  CHECK(a.ezd_ok <= a.hilbert_ok);
  CHECK(a.hilbert_ok <= a.total);
  // thread count does not change the outcome
  SampleReport c = density_report(3, F, 40, 12345, 4);
  CHECK(c.ezd_ok == a.ezd_ok);
  CHECK(c.hilbert_ok == a.hilbert_ok);
  CHECK(c.conca_ok == a.conca_ok);
  // different seeds explore different points
  SampleReport d = density_report(3, F, 40, 54321);
  (void)d;
}
