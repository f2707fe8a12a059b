#include "doctest.h"

#include "ezdkit/matrix.hpp"

using namespace ezdkit;

namespace {

Mat mat_of(const FieldPtr& F, int r, int c, std::initializer_list<long long> vals) {
  Mat m(F, r, c);
  auto it = vals.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = F->from_int(*it++);
  return m;
}

} // namespace

TEST_CASE("echelon rank basics") {
  auto F = Field::make(FieldSpec::prime(5));
  CHECK(row_echelon(Mat::identity(F, 3)).rank == 3);
  CHECK(row_echelon(Mat(F, 2, 4)).rank == 0);
  // [[1,2],[2,4]] over F_5 -> rank 1 (second row is twice the first)
  Mat m = mat_of(F, 2, 2, {1, 2, 2, 4});
  auto e = row_echelon(m);
  CHECK(e.rank == 1);
  CHECK(e.pivot_cols == std::vector<int>{0});
  // idempotent
  CHECK(row_echelon(e.rref).rref == e.rref);
}

TEST_CASE("nullspace") {
  auto F2 = Field::make(FieldSpec::prime(2));
  CHECK(nullspace(Mat::identity(F2, 4)).empty());
  CHECK(nullspace(Mat(F2, 2, 3)).size() == 3);
  // [[1,1]] over F_2 -> {(1,1)}
  Mat m = mat_of(F2, 1, 2, {1, 1});
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == Vec{F2->one(), F2->one()});
}

TEST_CASE("rank-nullity over several fields") {
  Rng rng(7);
  for (auto spec : {FieldSpec::prime(3), FieldSpec::prime(101), FieldSpec::rationals()}) {
    auto F = Field::make(spec);
    for (int iter = 0; iter < 30; ++iter) {
      int r = 1 + (int)rng.below(5), c = 1 + (int)rng.below(5);
      Mat m(F, r, c);
      for (auto& x : m.a) x = F->sample(rng);
      auto ns = nullspace(m);
      CHECK((int)ns.size() == c - rank_of(m));
      for (const auto& v : ns) {
        Vec mv = m.apply(v);
        for (const auto& x : mv) CHECK(F->is_zero(x));
      }
    }
  }
}

TEST_CASE("solve") {
  auto F = Field::make(FieldSpec::prime(5));
  // identity: solution = rhs
  Mat id = Mat::identity(F, 3);
  Vec b = {F->from_int(1), F->from_int(2), F->from_int(3)};
  CHECK(solve(id, b) == b);
  // zero matrix, nonzero rhs: no solution
  CHECK(!solve(Mat(F, 2, 2), {F->one(), F->zero()}).has_value());
  // [[2]] x = (3) over F_5: x = 4
  Mat m = mat_of(F, 1, 1, {2});
  CHECK(solve(m, {F->from_int(3)}) == Vec{F->from_int(4)});
}

TEST_CASE("determinant") {
  auto F = Field::make(FieldSpec::prime(7));
  CHECK(determinant(Mat::identity(F, 4)) == F->one());
  Mat m = mat_of(F, 2, 2, {1, 2, 3, 4}); // det = -2 = 5
  CHECK(determinant(m) == F->from_int(5));
  Mat sing = mat_of(F, 2, 2, {1, 2, 2, 4});
  CHECK(F->is_zero(determinant(sing)));
}

TEST_CASE("row space") {
  auto F = Field::make(FieldSpec::prime(3));
  RowSpace rs(F, 3);
  CHECK(rs.insert({F->one(), F->one(), F->zero()}));
  CHECK(rs.insert({F->zero(), F->one(), F->one()}));
  CHECK(!rs.insert({F->one(), F->from_int(2), F->one()})); // sum of the two
  CHECK(rs.dim() == 2);
  CHECK(rs.contains({F->from_int(2), F->zero(), F->one()}));
  // canonical: same space from different generators gives identical basis
  RowSpace rs2(F, 3);
  rs2.insert({F->one(), F->from_int(2), F->one()});
  rs2.insert({F->one(), F->one(), F->zero()});
  CHECK(rs.same_space(rs2));
}
