#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twistor/period.hpp"

using namespace twistor;

namespace {

bool cmat_equal(const CRatMat& a, const CRatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

// Closed form of the normalized period of a I + b J + c K on the
// quaternionic line: blocks of (-bc + ai)/(a^2+c^2) and (ab + ci)/(a^2+c^2).
CRatMat sphere_period(int n, const Rat& a, const Rat& b, const Rat& c) {
  Rat den = a * a + c * c;
  CRat diag = CRat(-b * c / den, a / den);
  CRat off = CRat(a * b / den, c / den);
  CRatMat z = CRatMat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    z(i, i) = diag;
    z(n + i, n + i) = diag;
    z(i, n + i) = off;
    z(n + i, i) = -off;
  }
  return z;
}

}  // namespace

TEST_CASE("normalized period of the reference structure is i Id") {
  for (int n = 1; n <= 2; ++n) {
    auto rep = standard_rep<Rat>(-1, n);
    auto pm = normalized_period<Rat>(rep.I);
    CHECK(cmat_equal(pm.Z,
                     CRatMat(CRat::i() * CRatMat::Identity(2 * n, 2 * n))));
  }
}

TEST_CASE("quaternionic-line periods match the closed form exactly") {
  for (int n = 1; n <= 2; ++n) {
    auto rep = standard_rep<Rat>(-1, n);
    auto check = [&](const Rat& a, const Rat& b, const Rat& c) {
      RatMat lam = a * rep.I + b * rep.B + c * RatMat(rep.I * rep.B);
      auto pm = normalized_period<Rat>(lam);
      CHECK(cmat_equal(pm.Z, sphere_period(n, a, b, c)));
    };
    check(Rat(3, 5), Rat(0), Rat(4, 5));
    check(Rat(3, 5), Rat(4, 5), Rat(0));
    check(Rat(2, 7), Rat(3, 7), Rat(6, 7));
    check(Rat(2, 3), Rat(-1, 3), Rat(2, 3));
  }
}

TEST_CASE("split-line periods are scalar with the closed-form value") {
  auto h1 = standard_rep<Rat>(1, 1);
  // a I + b R at (5/4, 3/4): Z = ((-b + i)/(a + c)) Id with c = 0
  RatMat lam = Rat(5, 4) * h1.I + Rat(3, 4) * h1.B;
  auto pm = normalized_period<Rat>(lam);
  CRat zval(Rat(-3, 5), Rat(4, 5));  // (-3/4 + i)/(5/4)
  CHECK(cmat_equal(pm.Z, CRatMat(zval * CRatMat::Identity(2, 2))));

  auto dp = dual_period<Rat>(pm.Z);
  CRat gval(Rat(0), Rat(-5, 8));  // -((a + c)/2) i
  CRat eval(Rat(1, 2), Rat(-3, 8));  // (1 - b i)/2
  CHECK(cmat_equal(dp.G, CRatMat(gval * CRatMat::Identity(2, 2))));
  CHECK(cmat_equal(dp.E, CRatMat(eval * CRatMat::Identity(2, 2))));
}

TEST_CASE("dual period identities hold exactly") {
  auto rep = standard_rep<Rat>(-1, 1);
  for (auto [a, b, c] : {std::array<Rat, 3>{Rat(3, 5), Rat(4, 5), Rat(0)},
                         std::array<Rat, 3>{Rat(2, 7), Rat(3, 7), Rat(6, 7)}}) {
    RatMat lam = a * rep.I + b * rep.B + c * RatMat(rep.I * rep.B);
    auto pm = normalized_period<Rat>(lam);
    auto dp = dual_period<Rat>(pm.Z);
    CRatMat zbar = detail::conj_matrix<CRat>(pm.Z);
    CRatMat ebar = detail::conj_matrix<CRat>(dp.E);
    CRatMat gbar = detail::conj_matrix<CRat>(dp.G);
    CHECK(cmat_equal(CRatMat(dp.E + pm.Z * dp.G),
                     CRatMat(CRatMat::Identity(2, 2))));
    CHECK(cmat_equal(CRatMat(ebar + pm.Z * gbar), CRatMat(CRatMat::Zero(2, 2))));
  }
  CHECK_THROWS_AS(dual_period<Rat>(CRatMat(CRatMat::Identity(2, 2))),
                  degenerate_imaginary_part);
}

TEST_CASE("hermitian form of the standard polarization") {
  auto h1 = standard_rep<Rat>(1, 1);
  RatMat q0 = RatMat::Zero(4, 4);
  q0.topRightCorner(2, 2) = RatMat::Identity(2, 2);
  q0.bottomLeftCorner(2, 2) = -RatMat::Identity(2, 2);
  auto h = hermitian_form<Rat>(q0, h1.I);
  CHECK(cmat_equal(h, CRatMat(CRat(Rat(1, 2)) * CRatMat::Identity(2, 2))));
  CHECK(is_kahler_at<Rat>(q0, h1.I));
  CHECK_FALSE(is_kahler_at<Rat>(q0, RatMat(-h1.I)));
}

TEST_CASE("invariant-form dimensions match the formulas exactly") {
  for (int n = 1; n <= 3; ++n) {
    for (int eps : {-1, 1}) {
      auto line = line_from_rep<Rat>(standard_rep<Rat>(eps, n));
      CHECK(hdg_space<Rat>(line).dim == 2 * n * n + n);
      CHECK(hdg_dim_formula(eps, n) == 2 * n * n + n);
    }
    for (int k = 1; k <= n; ++k) {
      auto line = line_from_rep<Rat>(standard_rep<Rat>(0, n, k));
      CHECK(hdg_space<Rat>(line).dim ==
            k * (k + 1) + (2 * n - k) * (2 * n - k));
    }
  }
  CHECK(hdg_dim_formula(-1, 1) == 3);
  CHECK(hdg_dim_formula(0, 2, 1) == 11);
  CHECK(hdg_dim_formula(0, 2, 2) == 10);
  CHECK(hdg_dim_formula(0, 3, 1) == 27);
  CHECK(hdg_dim_formula(0, 3, 2) == 22);
  CHECK(hdg_dim_formula(0, 3, 3) == 21);
}

TEST_CASE("sampling mode agrees with the closed-form conditions") {
  for (int eps : {-1, 1}) {
    auto line = line_from_rep<Rat>(standard_rep<Rat>(eps, 1));
    CHECK(hdg_space<Rat>(line, HdgMode::closed_form).dim ==
          hdg_space<Rat>(line, HdgMode::generic_sampling).dim);
  }
  auto line0 = line_from_rep<Rat>(standard_rep<Rat>(0, 1, 1));
  CHECK(hdg_space<Rat>(line0, HdgMode::closed_form).dim ==
        hdg_space<Rat>(line0, HdgMode::generic_sampling).dim);
}

TEST_CASE("invariant forms satisfy the first bilinear relation on the line") {
  auto line = line_from_rep<Rat>(standard_rep<Rat>(-1, 1));
  auto space = hdg_space<Rat>(line);
  auto pts = sample_points<Rat>(line, 4);
  for (const auto& q : space.basis)
    for (const auto& p : pts) CHECK(first_bilinear_holds<Rat>(q, p.matrix));
}

TEST_CASE("Kahler certificates per line type") {
  auto hyp = line_from_rep<Rat>(standard_rep<Rat>(1, 1));
  auto c1 = kahler_certificate<Rat>(hyp, '+', 6);
  CHECK(c1.status == KahlerStatus::cone);
  CHECK(c1.verified);
  CHECK(c1.samples_checked >= 5);
  auto c1m = kahler_certificate<Rat>(hyp, '-', 6);
  CHECK(c1m.status == KahlerStatus::cone);
  CHECK(c1m.verified);

  auto sphere = line_from_rep<Rat>(standard_rep<Rat>(-1, 1));
  auto cm = kahler_certificate<Rat>(sphere, '+', 6);
  CHECK(cm.status == KahlerStatus::none);
  CHECK(cm.verified);
  CHECK(cm.reason == "antipodal");

  auto planes = line_from_rep<Rat>(standard_rep<Rat>(0, 1, 1));
  auto c0 = kahler_certificate<Rat>(planes, '+', 6);
  CHECK(c0.status == KahlerStatus::none);
  CHECK(c0.verified);
  CHECK(c0.reason == "isotropic");
}
