#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twistor/linalg.hpp"

using namespace twistor;

TEST_CASE("rational scalars round-trip and compute exactly") {
  Rat a = Rat::from_string("3/7");
  CHECK(a * Rat(7) == Rat(3));
  CHECK(a.str() == "3/7");
  CHECK(Rat(-2, 4).str() == "-1/2");
  auto [is_sq, root] = Rat(9, 16).exact_sqrt();
  CHECK(is_sq);
  CHECK(root == Rat(3, 4));
  CHECK_FALSE(Rat(2).exact_sqrt().first);
  CRat z(Rat(1), Rat(2));
  CHECK(abs2(z) == Rat(5));
  CHECK(conj(z) == CRat(Rat(1), Rat(-2)));
  CHECK(CRat::i() * CRat::i() == CRat(Rat(-1), Rat(0)));
}

TEST_CASE("exact rank, nullspace, and inverse") {
  RatMat a(2, 3);
  a << Rat(1), Rat(2), Rat(3), Rat(2), Rat(4), Rat(6);
  CHECK(rank<Rat>(a) == 1);
  CHECK(rank_fast(a) == 1);
  RatMat ns = nullspace<Rat>(a);
  REQUIRE(ns.cols() == 2);
  RatMat z = a * ns;
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) CHECK(z(i, j).is_zero());

  RatMat m(2, 2);
  m << Rat(1), Rat(2), Rat(3), Rat(4);
  CHECK(rank_fast(m) == 2);
  RatMat id = m * inverse<Rat>(m);
  CHECK(id(0, 0) == Rat(1));
  CHECK(id(0, 1) == Rat(0));
  CHECK(id(1, 0) == Rat(0));
  CHECK(id(1, 1) == Rat(1));

  RatMat sing = RatMat::Zero(2, 2);
  CHECK_THROWS_AS(inverse<Rat>(sing), singular_matrix);
}

TEST_CASE("float rank uses a relative threshold") {
  RealMat f(3, 3);
  f << 1, 2, 3, 4, 5, 6, 7, 8, 9.0001;
  CHECK(rank<double>(f) == 3);
  f(2, 2) = 9;
  CHECK(rank<double>(f) == 2);
  f(2, 2) = 9 + 1e-13;  // below the default relative tolerance
  CHECK(rank<double>(f) == 2);
}

TEST_CASE("solve returns exact solutions and detects inconsistency") {
  RatMat m(2, 2);
  m << Rat(2), Rat(0), Rat(0), Rat(3);
  Vec<Rat> b(2);
  b << Rat(1), Rat(1);
  auto x = solve<Rat>(m, b);
  REQUIRE(x.has_value());
  CHECK((*x)(0) == Rat(1, 2));
  CHECK((*x)(1) == Rat(1, 3));
  RatMat wide(2, 1);
  wide << Rat(1), Rat(2);
  Vec<Rat> off(2);
  off << Rat(1), Rat(3);
  CHECK_FALSE(solve<Rat>(wide, off).has_value());
}

TEST_CASE("hermitian definiteness certificates over exact complex scalars") {
  CRatMat c(2, 2);
  c << CRat(1), CRat(Rat(0), Rat(1)), CRat(Rat(0), Rat(-1)), CRat(2);
  CHECK(hermitian_definiteness<CRat>(c) == Definiteness::positive);
  c(1, 1) = CRat(Rat(1, 2));
  CHECK(hermitian_definiteness<CRat>(c) == Definiteness::indefinite);
  CRatMat n = -CRatMat::Identity(2, 2);
  CHECK(hermitian_definiteness<CRat>(n) == Definiteness::negative);
  CRatMat non(2, 2);
  non << CRat(1), CRat(2), CRat(3), CRat(4);
  CHECK_THROWS_AS(hermitian_definiteness<CRat>(non), not_hermitian);
}

TEST_CASE("subspaces reject zero columns and compare by span") {
  CRatMat b(2, 1);
  b << CRat(1), CRat(Rat(0), Rat(1));
  SubspaceC u(2, b);
  CHECK(u.dim() == 1);
  CRatMat scaled = CRat(Rat(2)) * b;
  CHECK(u == SubspaceC(2, scaled));
  CRatMat zero = CRatMat::Zero(2, 1);
  CHECK_THROWS_AS(SubspaceC(2, zero), error);
}

TEST_CASE("real points of complex spans") {
  CRatMat b(2, 1);
  b << CRat(1), CRat(Rat(0), Rat(1));  // span{(1, i)}: no real points
  CHECK(real_points_dimension<CRat>(SubspaceC(2, b)) == 0);
  CRatMat b2(2, 1);
  b2 << CRat(1), CRat(1);  // span{(1, 1)}: a real line
  CHECK(real_points_dimension<CRat>(SubspaceC(2, b2)) == 1);
}

TEST_CASE("principal angles between coordinate lines") {
  CplxMat p1(3, 1), p2(3, 1);
  p1 << 1, 0, 0;
  p2 << 0, 1, 0;
  auto ang = principal_angles(SubspaceCd(3, p1), SubspaceCd(3, p2));
  REQUIRE(ang.size() == 1);
  CHECK(ang[0] == doctest::Approx(1.5707963267948966));
  auto same = principal_angles(SubspaceCd(3, p1), SubspaceCd(3, p1));
  CHECK(same[0] == doctest::Approx(0.0));
}
