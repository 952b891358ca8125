// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twistor/connectivity.hpp"
#include "twistor/grassmann.hpp"
#include "twistor/period.hpp"

using namespace twistor;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!pass) ++failures;
}

LinePoint<Rat> random_point(const TwistorLine<Rat>& line,
                            std::mt19937_64& rng) {
  for (;;) {
    Rat u(static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 4) + 1);
    Rat v(static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 4) + 1);
    Rat q = u * u + v * v;
    Rat den = Rat(1) - line.c * q;
    if (den.is_zero()) continue;
    Rat s = rng() % 2 ? Rat(1) : Rat(-1);
    return point<Rat>(line, s * (Rat(1) + line.c * q) / den,
                      Rat(2) * s * u / den, Rat(2) * s * v / den);
  }
}

bool cmat_equal(const CRatMat& a, const CRatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

void criterion1() {
  bool ok = true;
  std::ostringstream why;
  for (int n = 1; n <= 3; ++n) {
    for (int eps : {-1, 1}) {
      auto line = line_from_rep<Rat>(standard_rep<Rat>(eps, n));
      int dim = hdg_space<Rat>(line).dim;
      if (dim != 2 * n * n + n) {
        ok = false;
        why << " eps=" << eps << ",n=" << n << ":" << dim;
      }
    }
    for (int k = 1; k <= n; ++k) {
      auto line = line_from_rep<Rat>(standard_rep<Rat>(0, n, k));
      int dim = hdg_space<Rat>(line).dim;
      if (dim != k * (k + 1) + (2 * n - k) * (2 * n - k)) {
        ok = false;
        why << " eps=0,n=" << n << ",k=" << k << ":" << dim;
      }
    }
  }
  report(1, "invariant-form dimensions match the formulas exactly", ok,
         why.str());
}

void criterion2() {
  bool ok = true;
  auto hyp = line_from_rep<Rat>(standard_rep<Rat>(1, 1));
  for (char comp : {'+', '-'}) {
    auto cert = kahler_certificate<Rat>(hyp, comp, 5);
    ok = ok && cert.status == KahlerStatus::cone && cert.verified &&
         cert.samples_checked >= 5;
    // The witness is definite only on its own sheet.
    if (cert.witness) {
      for (auto& p : sample_points<Rat>(hyp, 5, comp == '+' ? '-' : '+'))
        ok = ok && !is_kahler_at<Rat>(*cert.witness, p.matrix);
    }
  }
  auto sphere = line_from_rep<Rat>(standard_rep<Rat>(-1, 1));
  auto cm = kahler_certificate<Rat>(sphere, '+', 5);
  ok = ok && cm.status == KahlerStatus::none && cm.verified &&
       cm.reason == "antipodal";
  auto planes = line_from_rep<Rat>(standard_rep<Rat>(0, 1, 1));
  auto c0 = kahler_certificate<Rat>(planes, '+', 5);
  ok = ok && c0.status == KahlerStatus::none && c0.verified &&
       c0.reason == "isotropic";
  report(2, "Kahler certificates per type with >= 5 samples", ok);
}

void criterion3() {
  bool ok = true;
  auto hm = standard_rep<Rat>(-1, 1);
  auto check_sphere = [&](Rat a, Rat b, Rat c) {
    RatMat lam = a * hm.I + b * hm.B + c * RatMat(hm.I * hm.B);
    auto pm = normalized_period<Rat>(lam);
    Rat den = a * a + c * c;
    CRat diag = CRat(-b * c / den, a / den);
    CRat off = CRat(a * b / den, c / den);
    CRatMat z(2, 2);
    z << diag, off, -off, diag;
    ok = ok && cmat_equal(pm.Z, z);
    auto dp = dual_period<Rat>(pm.Z);
    ok = ok &&
         cmat_equal(CRatMat(dp.E + pm.Z * dp.G),
                    CRatMat(CRatMat::Identity(2, 2))) &&
         cmat_equal(CRatMat(detail::conj_matrix<CRat>(dp.E) +
                            pm.Z * detail::conj_matrix<CRat>(dp.G)),
                    CRatMat(CRatMat::Zero(2, 2)));
  };
  check_sphere(Rat(3, 5), Rat(0), Rat(4, 5));
  check_sphere(Rat(3, 5), Rat(4, 5), Rat(0));
  check_sphere(Rat(2, 7), Rat(3, 7), Rat(6, 7));
  auto h1 = standard_rep<Rat>(1, 1);
  RatMat lam = Rat(5, 4) * h1.I + Rat(3, 4) * h1.B;
  auto pm = normalized_period<Rat>(lam);
  ok = ok && cmat_equal(pm.Z, CRatMat(CRat(Rat(-3, 5), Rat(4, 5)) *
                                      CRatMat::Identity(2, 2)));
  auto dp = dual_period<Rat>(pm.Z);
  ok = ok &&
       cmat_equal(dp.G, CRatMat(CRat(Rat(0), Rat(-5, 8)) *
                                CRatMat::Identity(2, 2))) &&
       cmat_equal(CRatMat(dp.E + pm.Z * dp.G),
                  CRatMat(CRatMat::Identity(2, 2)));
  report(3, "period closed forms and dual identities, exact", ok);
}

void criterion4() {
  bool ok = true;
  // (a) embedded structures are never in L_R: 100 sampled points.
  int sampled = 0;
  for (int eps : {-1, 0, 1}) {
    auto line =
        line_from_rep<Rat>(standard_rep<Rat>(eps, 1, eps == 0 ? 1 : 0));
    for (auto& p : sample_points<Rat>(line, 17)) {
      auto [inlr, dim] = in_LR<Rat>(embed<Rat>(p.matrix));
      ok = ok && !inlr && dim == 0;
      ++sampled;
    }
  }
  auto sphere2 = line_from_rep<Rat>(standard_rep<Rat>(-1, 2));
  std::mt19937_64 rng(99);
  while (sampled < 100) {
    auto p = random_point(sphere2, rng);
    auto [inlr, dim] = in_LR<Rat>(embed<Rat>(p.matrix));
    ok = ok && !inlr && dim == 0;
    ++sampled;
  }
  // (b) circle points: real dimension 2n, distinct spans, 8 points.
  for (int n : {1, 2}) {
    auto h1 = line_from_rep<Rat>(standard_rep<Rat>(1, n));
    const std::vector<std::pair<Rat, Rat>> dirs = {
        {Rat(1), Rat(0)},       {Rat(0), Rat(1)},
        {Rat(-1), Rat(0)},      {Rat(0), Rat(-1)},
        {Rat(3, 5), Rat(4, 5)}, {Rat(-3, 5), Rat(4, 5)},
        {Rat(4, 5), Rat(3, 5)}, {Rat(5, 13), Rat(12, 13)}};
    std::vector<GrassPoint<Rat>> pts;
    for (auto& [c0, s0] : dirs) {
      auto p = infinity_circle_point<Rat>(h1, c0, s0);
      auto [inlr, dim] = in_LR<Rat>(p);
      ok = ok && inlr && dim == 2 * n;
      for (auto& q : pts) ok = ok && !(p == q);
      pts.push_back(p);
    }
  }
  // (c) plane-pair limits equal the kernel/image closed form.
  for (auto [n, k] : {std::pair<int, int>{1, 1}, {2, 1}, {2, 2}}) {
    auto rep = standard_rep<Rat>(0, n, k);
    auto line = line_from_rep<Rat>(rep);
    auto [pp, pm] = infinity_points<Rat>(line);
    CRatMat ic = complexify<Rat>(rep.I);
    RatMat im = column_space_basis<Rat>(rep.B);
    RatMat ker = nullspace<Rat>(rep.B);
    const Eigen::Index d = 4 * n;
    for (char sign : {'+', '-'}) {
      CRat s = sign == '+' ? CRat::i() : -CRat::i();
      CRatMat span(d, im.cols() + ker.cols());
      span.leftCols(im.cols()) = complexify<Rat>(im);
      span.rightCols(ker.cols()) =
          (CRatMat::Identity(d, d) - s * ic) * complexify<Rat>(ker);
      auto expect = GrassPoint<Rat>::from_span(d, span);
      ok = ok && (expect == (sign == '+' ? pp : pm));
    }
  }
  // (d) float principal angles decrease to below 1e-2.
  for (int eps : {0, 1}) {
    auto line =
        line_from_rep<double>(standard_rep<double>(eps, 1, eps == 0 ? 1 : 0));
    auto decay = limit_convergence(line, RaySpec{}, {10, 100, 1000});
    ok = ok && decay[0].second > decay[1].second &&
         decay[1].second > decay[2].second && decay[2].second < 1e-2;
  }
  report(4, "infinity behavior: membership, circle points, limits, angles",
         ok);
}

void criterion5() {
  bool ok = true;
  auto h1 = line_from_rep<Rat>(standard_rep<Rat>(1, 1));
  auto r1 = infinity_tangent_report<Rat>(h1);
  ok = ok && r1.plane_dim == 2 && r1.boundary_in_cone &&
       r1.interior_hits == 0 && r1.samples == 8 && r1.verdict;
  auto h0 = line_from_rep<Rat>(standard_rep<Rat>(0, 1, 1));
  auto r0 = infinity_tangent_report<Rat>(h0);
  ok = ok && r0.plane_dim == 2 && r0.interior_hits == 0 && r0.verdict;
  // Parameter laws on a 5x5 rational grid.
  auto hom_of = [&](const CRat& z) {
    return tangent_at_infinity_N<Rat>(h0, '+', z);
  };
  std::vector<CRat> grid;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      if (a != 0 || b != 0) grid.push_back(CRat(Rat(a), Rat(b)));
  for (std::size_t i = 0; i < grid.size(); i += 5)
    for (std::size_t j = i + 1; j < grid.size(); j += 7) {
      CRat z1 = grid[i], z2 = grid[j];
      if ((z1 + z2).is_zero()) continue;
      auto f1 = hom_of(z1);
      auto f2 = hom_of(z2);
      auto fsum = hom_of(z1 * z2 / (z1 + z2));
      TangentHom<Rat> manual{f1.base, f1.domain_basis,
                             CRatMat(f1.map + f2.map)};
      ok = ok && hom_equal<Rat>(manual, fsum);
    }
  for (const CRat& z : {CRat(1), CRat::i(), CRat(Rat(-1), Rat(2))})
    for (const Rat& a : {Rat(3), Rat(-1, 2)}) {
      auto fz = hom_of(z);
      auto fs = hom_of(z / CRat(a));
      TangentHom<Rat> manual{fz.base, fz.domain_basis,
                             CRatMat(CRat(a) * fz.map)};
      ok = ok && hom_equal<Rat>(manual, fs);
    }
  report(5, "tangent-cone verdicts and parameter laws", ok);
}

void criterion6() {
  bool ok = true;
  std::ostringstream why;
  for (int n = 1; n <= 3; ++n)
    for (int eps : {-1, 1}) {
      auto rep = standard_rep<Rat>(eps, n);
      auto line = line_from_rep<Rat>(rep);
      auto st = stabilizer_tangent<Rat>(rep.I);
      if (static_cast<int>(st.basis.size()) != 8 * n * n) ok = false;
      auto cent = algebra_centralizer_tangent<Rat>(rep);
      if (static_cast<int>(cent.size()) != 4 * n * n) ok = false;
      std::mt19937_64 rng(500 + 10 * n + eps);
      auto p1 = random_point(line, rng);
      auto p2 = random_point(line, rng);
      auto s1 = stabilizer_tangent<Rat>(p1.matrix);
      auto s2 = stabilizer_tangent<Rat>(p2.matrix);
      bool indep = !detail::matrices_equal<Rat>(p1.matrix, p2.matrix, 0) &&
                   !detail::matrices_equal<Rat>(RatMat(-p1.matrix), p2.matrix,
                                                0);
      if (indep) {
        auto inter = span_intersection<Rat>(s1.basis, s2.basis);
        if (!spans_equal<Rat>(detail::vectorized_span<Rat>(inter),
                              detail::vectorized_span<Rat>(cent)))
          ok = false;
      }
      if (!generator_transversality<Rat>(rep)) ok = false;
      // Random triples: transversality iff nonzero determinant.
      int triples = n == 1 ? 35 : (n == 2 ? 10 : 5);
      for (int t = 0; t < triples; ++t) {
        auto q1 = random_point(line, rng);
        auto q2 = random_point(line, rng);
        auto q3 = random_point(line, rng);
        bool det_nonzero =
            !triple_coordinate_determinant<Rat>(q1, q2, q3).is_zero();
        if (triple_transversality<Rat>(line, q1, q2, q3) != det_nonzero) {
          ok = false;
          why << " triple n=" << n << ",eps=" << eps << ",t=" << t;
        }
      }
    }
  report(6, "stabilizer/centralizer dimensions and transversality", ok,
         why.str());
}

void criterion7() {
  bool ok = true;
  std::ostringstream why;
  for (int eps : {-1, 1})
    for (int s = 0; s < 10; ++s) {
      std::mt19937_64 rng(2026 + static_cast<std::uint64_t>(s));
      std::uniform_real_distribution<double> dist(-0.25, 0.25);
      RealMat A = standard_rep<double>(eps, 1).I;
      RealMat g = RealMat::Identity(4, 4);
      for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) g(r, c) += dist(rng);
      if (g.determinant() <= 0) g.col(0) *= -1.0;
      RealMat B = g * A * g.inverse();
      try {
        auto path = connect(A, B, eps, 0.5, 31 + 7 * s);
        auto rep = validate_path(path);
        bool here = rep.verdict && rep.max_junction < 1e-8 &&
                    path.endpoint_residual < 1e-8 &&
                    path.max_newton_iterations <= 50;
        if (!here) {
          ok = false;
          why << " eps=" << eps << ",seed=" << s;
        }
      } catch (const error& e) {
        ok = false;
        why << " eps=" << eps << ",seed=" << s << ":" << e.what();
      }
    }
  report(7, "connectivity paths for 10 seeded pairs per type", ok, why.str());
}

void criterion8() {
  bool ok = true;
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) {
      auto rep = standard_rep<Rat>(0, n, k);
      int conjugates = n == 3 ? 4 : (n == 2 ? 7 : 20);
      for (int t = 0; t < conjugates; ++t) {
        RatMat g;
        do {
          g = RatMat(4 * n, 4 * n);
          for (int i = 0; i < 4 * n; ++i)
            for (int j = 0; j < 4 * n; ++j)
              g(i, j) = Rat(static_cast<int>(rng() % 5) - 2);
        } while (rank<Rat>(g) != 4 * n);
        auto conj = conjugate_rep<Rat>(g, rep);
        if (classify_nilpotent_rep<Rat>(conj.I, conj.B) != k) ok = false;
        RatMat gb = adapted_nilpotent_basis<Rat>(conj.I, conj.B);
        RatMat gbi = inverse<Rat>(gb);
        if (!detail::matrices_equal<Rat>(RatMat(gbi * conj.I * gb), rep.I, 0) ||
            !detail::matrices_equal<Rat>(RatMat(gbi * conj.B * gb), rep.B, 0))
          ok = false;
      }
    }
  report(8, "nilpotent classification and adapted-basis round trips", ok);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
