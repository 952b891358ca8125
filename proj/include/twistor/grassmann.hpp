// The period domain inside the Grassmannian: the embedding
// I -> (Id - iI) V_R, the real locus L_R, limit points of twistor lines at
// infinity, tangent homomorphisms there, and tangent-cone membership.
#ifndef TWISTOR_GRASSMANN_HPP
#define TWISTOR_GRASSMANN_HPP

#include <utility>
#include <vector>

#include "twistor/line.hpp"

namespace twistor {

template <typename T>
using GrassPoint = Subspace<complex_of<T>>;

template <typename T>
GrassPoint<T> embed(const Mat<T>& lambda, double tol = kDefaultTol) {
  using C = complex_of<T>;
  if (!is_complex_structure<T>(lambda, tol))
    throw not_complex_structure("embed: lambda^2 != -Id");
  const Eigen::Index d = lambda.rows();
  Mat<C> u = Mat<C>::Identity(d, d) - imaginary_unit<T>() *
                                          complexify<T>(lambda);
  return GrassPoint<T>::from_span(d, u, tol);
}

template <typename T>
std::pair<bool, int> in_LR(const GrassPoint<T>& u, double tol = kDefaultTol) {
  int dim = real_points_dimension<complex_of<T>>(u, tol);
  return {dim > 0, dim};
}

// Left multiplication by p preserves the tangent plane of the quadric at p:
// checked symbolically in span coordinates via the product table
// p * q = (-xu + c(yv + zw)) Id + c(zv - yw) I + (zu - xw) B + (xv - yu) K.
template <typename T>
bool tangent_invariance_check(const TwistorLine<T>& line,
                              const LinePoint<T>& p,
                              double tol = kDefaultTol) {
  Mat<T> grad(1, 3);
  grad(0, 0) = p.x;
  grad(0, 1) = -line.c * p.y;
  grad(0, 2) = -line.c * p.z;
  Mat<T> tangent = nullspace<T>(grad, tol);  // 3 x 2
  Mat<T> image(3, tangent.cols());
  for (Eigen::Index j = 0; j < tangent.cols(); ++j) {
    T u = tangent(0, j), v = tangent(1, j), w = tangent(2, j);
    image(0, j) = line.c * (p.z * v - p.y * w);
    image(1, j) = p.z * u - p.x * w;
    image(2, j) = p.x * v - p.y * u;
  }
  return spans_equal<T>(image, tangent, tol);
}

// The circle of limit points of the hyperboloid line:
// W + iW for W = (I + c0 B + s0 K) V_R, with c0^2 + s0^2 = 1.
template <typename T>
GrassPoint<T> infinity_circle_point(const TwistorLine<T>& line, const T& c0,
                                    const T& s0, double tol = kDefaultTol) {
  if (line.epsilon != 1)
    throw wrong_epsilon("infinity_circle_point: needs the hyperboloid line");
  if (!scalar_traits<T>::is_zero(line.c - T(1), real_of<T>(1), tol))
    throw error("infinity_circle_point: generator must be normalized");
  if (!scalar_traits<T>::is_zero(c0 * c0 + s0 * s0 - T(1), real_of<T>(1),
                                 tol))
    throw off_circle("infinity_circle_point: c0^2 + s0^2 != 1");
  Mat<T> m = line.I + c0 * line.B + s0 * line.K();
  Mat<T> w = column_space_basis<T>(m, tol);
  return GrassPoint<T>(line.dim(), complexify<T>(w), tol);
}

// The two limit points of the plane pair: p+- = (Im N + i Im N) direct sum
// (Id -+ iI) Ker N (the middle overlap collapses to complex dimension 2n).
template <typename T>
std::pair<GrassPoint<T>, GrassPoint<T>> infinity_points(
    const TwistorLine<T>& line, double tol = kDefaultTol) {
  using C = complex_of<T>;
  if (line.epsilon != 0)
    throw wrong_epsilon("infinity_points: needs the plane-pair line");
  const Eigen::Index d = line.dim();
  Mat<T> im = column_space_basis<T>(line.B, tol);
  Mat<T> ker = nullspace<T>(line.B, tol);
  auto build = [&](int sigma) {
    Mat<C> ic = complexify<T>(line.I);
    Mat<C> proj = Mat<C>::Identity(d, d) -
                  C(sigma) * imaginary_unit<T>() * ic;
    Mat<C> span(d, im.cols() + ker.cols());
    span.leftCols(im.cols()) = complexify<T>(im);
    span.rightCols(ker.cols()) = proj * complexify<T>(ker);
    return GrassPoint<T>::from_span(d, span, tol);
  };
  return {build(1), build(-1)};
}

// Curve specification for the float-domain limit checks: for the hyperboloid
// c(t) = sheet * (t I + sqrt(t^2 - 1)(c0 B + s0 K)); for the plane pair
// c(t) = sheet * I + t (alpha B + beta K).
struct RaySpec {
  char component = '+';
  double c0 = 1.0, s0 = 0.0;
  double alpha = 1.0, beta = 0.0;
};

inline std::vector<std::pair<double, double>> limit_convergence(
    const TwistorLine<double>& line, const RaySpec& ray,
    const std::vector<double>& t_grid, double tol = kDefaultTol) {
  double sheet = ray.component == '-' ? -1.0 : 1.0;
  Subspace<std::complex<double>> target =
      line.epsilon == 1
          ? infinity_circle_point<double>(line, ray.c0, ray.s0, tol)
          : (ray.component == '-'
                 ? infinity_points<double>(line, tol).second
                 : infinity_points<double>(line, tol).first);
  std::vector<std::pair<double, double>> out;
  for (double t : t_grid) {
    Mat<double> lambda;
    if (line.epsilon == 1) {
      double r = std::sqrt(t * t - 1.0);
      lambda = sheet * (t * line.I +
                        r * (ray.c0 * line.B + ray.s0 * line.K()));
    } else if (line.epsilon == 0) {
      lambda = sheet * line.I + t * (ray.alpha * line.B + ray.beta * line.K());
    } else {
      throw wrong_epsilon("limit_convergence: sphere lines have no infinity");
    }
    auto angles = principal_angles(embed<double>(lambda, tol), target);
    out.emplace_back(t, angles.empty() ? 0.0 : angles.front());
  }
  return out;
}

// A tangent vector of Gr(2n, V_C) at p as a homomorphism p -> V_C, given by
// images of an explicit complex basis of p; its class modulo Hom(p, p) is
// the actual tangent vector.
template <typename T>
struct TangentHom {
  GrassPoint<T> base;
  Mat<complex_of<T>> domain_basis;  // 4n x 2n, spans base
  Mat<complex_of<T>> map;           // 4n x 2n images
};

namespace detail {

// Greedy complement of the span of `avoid` using candidate columns in the
// given order; returns `count` picked columns.
template <typename T>
Mat<T> greedy_complement(const Mat<T>& avoid, const Mat<T>& candidates,
                         Eigen::Index count, bool reverse_scan, double tol) {
  Mat<T> span = avoid;
  Mat<T> picked(avoid.rows(), count);
  Eigen::Index got = 0;
  for (Eigen::Index m = 0; m < candidates.cols() && got < count; ++m) {
    Eigen::Index c = reverse_scan ? candidates.cols() - 1 - m : m;
    Vec<T> u = candidates.col(c);
    if (span_contains<T>(span, u, tol)) continue;
    picked.col(got++) = u;
    Mat<T> grown(span.rows(), span.cols() + 1);
    grown.leftCols(span.cols()) = span;
    grown.col(span.cols()) = u;
    span = grown;
  }
  if (got != count) throw error("greedy_complement: not enough candidates");
  return picked;
}

// I-invariant greedy complement: picks (u, Iu) pairs; returns 2*pairs cols
// ordered u_1..u_m, Iu_1..Iu_m.
template <typename T>
Mat<T> greedy_invariant_complement(const Mat<T>& I, const Mat<T>& avoid,
                                   const Mat<T>& candidates,
                                   Eigen::Index pairs, bool reverse_scan,
                                   double tol) {
  Mat<T> span = avoid;
  Mat<T> us(avoid.rows(), pairs), ius(avoid.rows(), pairs);
  Eigen::Index got = 0;
  for (Eigen::Index m = 0; m < candidates.cols() && got < pairs; ++m) {
    Eigen::Index c = reverse_scan ? candidates.cols() - 1 - m : m;
    Vec<T> u = candidates.col(c);
    if (span_contains<T>(span, u, tol)) continue;
    Vec<T> iu = I * u;
    us.col(got) = u;
    ius.col(got) = iu;
    ++got;
    Mat<T> grown(span.rows(), span.cols() + 2);
    grown.leftCols(span.cols()) = span;
    grown.col(span.cols()) = u;
    grown.col(span.cols() + 1) = iu;
    span = grown;
  }
  if (got != pairs)
    throw error("greedy_invariant_complement: not enough candidates");
  Mat<T> out(avoid.rows(), 2 * pairs);
  out.leftCols(pairs) = us;
  out.rightCols(pairs) = ius;
  return out;
}

}  // namespace detail

// The tangent map of the closed hyperboloid line at the circle point
// p = (I + R) V_R + i (I + R) V_R: on a complement U of Ker(I + R),
// (I + R) u -> (b IR + i Id) u. b parametrizes the one-parameter family of
// interior tangent directions; b-independent terms give phi_0.
template <typename T>
TangentHom<T> tangent_at_infinity_R(const TwistorLine<T>& line, const T& b,
                                    bool alternate_complement = false,
                                    double tol = kDefaultTol) {
  using C = complex_of<T>;
  const Eigen::Index d = line.dim();
  Mat<T> ipr = line.I + line.B;  // I + R, rank 2n
  Mat<T> ker = nullspace<T>(ipr, tol);
  Mat<T> u = detail::greedy_complement<T>(
      ker, Mat<T>(Mat<T>::Identity(d, d)), d / 2, alternate_complement, tol);
  Mat<C> domain = complexify<T>(Mat<T>(ipr * u));
  Mat<C> map = complexify<T>(Mat<T>(b * (line.K() * u))) +
               imaginary_unit<T>() * complexify<T>(u);
  GrassPoint<T> base = infinity_circle_point<T>(line, T(1), T(0), tol);
  return TangentHom<T>{std::move(base), std::move(domain), std::move(map)};
}

// The circle direction at the same point: (I + R) u -> IR u.
template <typename T>
TangentHom<T> circle_direction_hom(const TwistorLine<T>& line,
                                   bool alternate_complement = false,
                                   double tol = kDefaultTol) {
  using C = complex_of<T>;
  const Eigen::Index d = line.dim();
  Mat<T> ipr = line.I + line.B;
  Mat<T> ker = nullspace<T>(ipr, tol);
  Mat<T> u = detail::greedy_complement<T>(
      ker, Mat<T>(Mat<T>::Identity(d, d)), d / 2, alternate_complement, tol);
  Mat<C> domain = complexify<T>(Mat<T>(ipr * u));
  Mat<C> map = complexify<T>(Mat<T>(line.K() * u));
  GrassPoint<T> base = infinity_circle_point<T>(line, T(1), T(0), tol);
  return TangentHom<T>{std::move(base), std::move(domain), std::move(map)};
}

// The tangent family phi_z at p+- of the plane-pair line, z != 0: with
// u'_j = ((alpha - beta I)|_U)^{-1} u_j for z = alpha + i beta,
// N u_j -> i (Id - sigma i I) u'_j, N I u_j -> i (Id - sigma i I) I u'_j,
// and the Ker N part of the basis maps to zero.
template <typename T>
TangentHom<T> tangent_at_infinity_N(const TwistorLine<T>& line, char which,
                                    const complex_of<T>& z,
                                    bool alternate_complement = false,
                                    double tol = kDefaultTol) {
  using C = complex_of<T>;
  if (line.epsilon != 0)
    throw wrong_epsilon("tangent_at_infinity_N: needs the plane-pair line");
  if (scalar_traits<C>::is_zero(z, real_of<T>(1), tol))
    throw zero_parameter("tangent_at_infinity_N: z must be nonzero");
  int sigma = which == '-' ? -1 : 1;
  const Eigen::Index d = line.dim();
  const Mat<T>& N = line.B;
  Mat<T> ker = nullspace<T>(N, tol);
  Mat<T> im = column_space_basis<T>(N, tol);
  const Eigen::Index k = im.cols() / 2;
  const Eigen::Index l = (ker.cols() - im.cols()) / 2;  // = 2(n - k)
  // U: I-invariant complement of Ker N (k pairs).
  Mat<T> u = detail::greedy_invariant_complement<T>(
      line.I, ker, Mat<T>(Mat<T>::Identity(d, d)), k, alternate_complement,
      tol);
  // W: I-invariant complement of Im N inside Ker N (l pairs).
  Mat<T> w = detail::greedy_invariant_complement<T>(line.I, im, ker, l,
                                                    alternate_complement, tol);
  // u' = (alpha - beta I)^{-1} u on U, columnwise via the 2k-dim frame.
  T alpha = real(z), beta = imag(z);
  Mat<T> a_on_u = alpha * u - beta * Mat<T>(line.I * u);
  Mat<T> uprime(d, u.cols());
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    auto sol = solve<T>(a_on_u, Vec<T>(u.col(j)), tol);
    if (!sol) throw error("tangent_at_infinity_N: frame solve failed");
    uprime.col(j) = u * *sol;
  }
  Mat<C> ic = complexify<T>(line.I);
  Mat<C> reduce = Mat<C>::Identity(d, d) -
                  C(sigma) * imaginary_unit<T>() * ic;
  // Domain basis: N u_1..N u_k, N I u_1..N I u_k, (Id - sigma iI) w_1..w_l.
  Mat<C> domain(d, 2 * k + l);
  domain.leftCols(2 * k) = complexify<T>(Mat<T>(N * u));
  domain.rightCols(l) = reduce * complexify<T>(w.leftCols(l));
  Mat<C> map = Mat<C>::Zero(d, 2 * k + l);
  map.leftCols(2 * k) =
      imaginary_unit<T>() * (reduce * complexify<T>(uprime));
  auto pts = infinity_points<T>(line, tol);
  GrassPoint<T> base = sigma == 1 ? pts.first : pts.second;
  return TangentHom<T>{std::move(base), std::move(domain), std::move(map)};
}

// Equality of tangent homomorphisms modulo Hom(p, p), re-expressing the
// second hom in the first one's domain basis.
template <typename T>
bool hom_equal(const TangentHom<T>& h1, const TangentHom<T>& h2,
               double tol = kDefaultTol) {
  using C = complex_of<T>;
  if (!(h1.base == h2.base)) return false;
  Mat<C> transformed(h1.map.rows(), h2.domain_basis.cols());
  for (Eigen::Index j = 0; j < h2.domain_basis.cols(); ++j) {
    auto x = solve<C>(h1.domain_basis, Vec<C>(h2.domain_basis.col(j)), tol);
    if (!x) return false;
    transformed.col(j) = h1.map * *x;
  }
  for (Eigen::Index j = 0; j < transformed.cols(); ++j)
    if (!span_contains<C>(h1.base.basis(),
                          Vec<C>(transformed.col(j) - h2.map.col(j)), tol))
      return false;
  return true;
}

// phi belongs to TC_p L_R iff phi(p cap V_R) cap V_R != {0}: there is a real
// combination with a real, nonzero image.
template <typename T>
bool in_tangent_cone_LR(const TangentHom<T>& phi, double tol = kDefaultTol) {
  using C = complex_of<T>;
  using RT = real_of<T>;
  Mat<RT> rp = real_points_basis<C>(phi.domain_basis, tol);
  if (rp.cols() == 0)
    throw base_not_in_lr("in_tangent_cone_LR: base point not in L_R");
  Mat<C> psi(phi.map.rows(), rp.cols());
  for (Eigen::Index j = 0; j < rp.cols(); ++j) {
    auto x = solve<C>(phi.domain_basis,
                      Vec<C>(complexify<T>(Mat<T>(rp.col(j)))), tol);
    if (!x) throw error("in_tangent_cone_LR: coordinate solve failed");
    psi.col(j) = phi.map * *x;
  }
  Mat<RT> re = real_part<C>(psi), im = imag_part<C>(psi);
  Mat<RT> both(2 * psi.rows(), psi.cols());
  both.topRows(psi.rows()) = re;
  both.bottomRows(psi.rows()) = im;
  int null_im = static_cast<int>(psi.cols()) - rank<RT>(im, tol);
  int null_both = static_cast<int>(psi.cols()) - rank<RT>(both, tol);
  return null_im > null_both;
}

struct InfinityTangentReport {
  int plane_dim = 0;
  bool boundary_in_cone = false;
  int interior_hits = 0;
  int samples = 0;
  bool verdict = false;
  bool singular_corollary = false;
};

namespace detail {

// Real dimension of the span of tangent homs (same domain basis) modulo
// Hom(p, p): coordinates in a completion basis, stacked real and imaginary
// parts.
template <typename T>
int hom_plane_dim(const GrassPoint<T>& base,
                  const Mat<complex_of<T>>& domain,
                  const std::vector<Mat<complex_of<T>>>& maps, double tol) {
  using C = complex_of<T>;
  using RT = real_of<T>;
  const Eigen::Index d = domain.rows();
  Mat<C> full(d, base.basis().cols() + d);
  full.leftCols(base.basis().cols()) = base.basis();
  full.rightCols(d) = Mat<C>::Identity(d, d);
  Mat<C> frame = column_space_basis<C>(full, tol);  // first cols span p
  const Eigen::Index pdim = base.basis().cols();
  const Eigen::Index half = (d - pdim) * domain.cols();
  Mat<RT> rows(static_cast<Eigen::Index>(maps.size()), 2 * half);
  for (std::size_t m = 0; m < maps.size(); ++m) {
    Eigen::Index out = 0;
    for (Eigen::Index j = 0; j < domain.cols(); ++j) {
      auto x = solve<C>(frame, Vec<C>(maps[m].col(j)), tol);
      if (!x) throw error("hom_plane_dim: frame solve failed");
      for (Eigen::Index r = pdim; r < d; ++r) {
        rows(static_cast<Eigen::Index>(m), out) = real((*x)(r));
        rows(static_cast<Eigen::Index>(m), half + out) = imag((*x)(r));
        ++out;
      }
    }
  }
  return rank<RT>(rows, tol);
}

}  // namespace detail

// Theorem-1 style tangent-cone summary at the line's infinity points.
template <typename T>
InfinityTangentReport infinity_tangent_report(const TwistorLine<T>& line,
                                              double tol = kDefaultTol) {
  InfinityTangentReport rep;
  const std::vector<std::pair<int, int>> dirs = {
      {0, 1}, {1, 1}, {-1, 1}, {2, 1}, {1, 2}, {-1, 2}, {3, 1}, {1, 3}};
  if (line.epsilon == 1) {
    auto l = circle_direction_hom<T>(line, false, tol);
    auto phi0 = tangent_at_infinity_R<T>(line, T(0), false, tol);
    rep.plane_dim = detail::hom_plane_dim<T>(l.base, l.domain_basis,
                                             {l.map, phi0.map}, tol);
    rep.boundary_in_cone = in_tangent_cone_LR<T>(l, tol);
    rep.samples = static_cast<int>(dirs.size());
    for (auto [a, b] : dirs) {
      TangentHom<T> h{l.base, l.domain_basis,
                      Mat<complex_of<T>>(T(a) * l.map + T(b) * phi0.map)};
      if (in_tangent_cone_LR<T>(h, tol)) ++rep.interior_hits;
    }
    rep.verdict = rep.plane_dim == 2 && rep.boundary_in_cone &&
                  rep.interior_hits == 0;
    return rep;
  }
  if (line.epsilon != 0)
    throw wrong_epsilon("infinity_tangent_report: needs epsilon 0 or 1");
  rep.samples = 0;
  rep.plane_dim = 2;
  bool all_out = true;
  for (char which : {'+', '-'}) {
    auto phi1 = tangent_at_infinity_N<T>(line, which, complex_of<T>(T(1)),
                                         false, tol);
    auto phii = tangent_at_infinity_N<T>(
        line, which, imaginary_unit<T>(), false, tol);
    int pd = detail::hom_plane_dim<T>(phi1.base, phi1.domain_basis,
                                      {phi1.map, phii.map}, tol);
    rep.plane_dim = std::min(rep.plane_dim, pd);
    for (auto [a, b] : dirs) {
      ++rep.samples;
      TangentHom<T> h{
          phi1.base, phi1.domain_basis,
          Mat<complex_of<T>>(T(a) * phi1.map + T(b) * phii.map)};
      if (in_tangent_cone_LR<T>(h, tol)) {
        ++rep.interior_hits;
        all_out = false;
      }
    }
  }
  rep.verdict = rep.plane_dim == 2 && all_out;
  rep.singular_corollary = rep.verdict;
  return rep;
}

}  // namespace twistor

#endif  // TWISTOR_GRASSMANN_HPP
