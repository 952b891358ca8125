#ifndef TWISTOR_CONNECTIVITY_HPP
#define TWISTOR_CONNECTIVITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "twistor/line.hpp"
#include "twistor/linalg.hpp"
#include "twistor/rep.hpp"

namespace twistor {

inline constexpr double kNewtonTol = 1e-10;
inline constexpr int kNewtonMaxIter = 50;

// Basis of the commutant {X : X lambda = lambda X} of a complex structure.
template <typename T>
struct StabilizerTangent {
  Mat<T> lambda;
  std::vector<Mat<T>> basis;
};

namespace detail {

// Real basis [u_1..u_m | lambda u_1..lambda u_m] adapted to lambda^2 = -Id,
// chosen greedily from the standard basis (optionally seeded-shuffled).
template <typename T>
Mat<T> adapted_frame(const Mat<T>& lambda, double tol,
                     std::uint64_t seed = 0) {
  const Eigen::Index d = lambda.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[j]);
    }
  }
  Mat<T> frame(d, d);
  Eigen::Index have = 0;
  if constexpr (scalar_traits<T>::is_exact) {
    for (Eigen::Index idx : order) {
      if (have == d) break;
      Mat<T> trial(d, have + 2);
      trial.leftCols(have) = frame.leftCols(have);
      trial.col(have) = Mat<T>::Identity(d, d).col(idx);
      trial.col(have + 1) = lambda * trial.col(have);
      if (rank<T>(trial, tol) == have + 2) {
        frame.col(have) = trial.col(have);
        frame.col(have + 1) = trial.col(have + 1);
        have += 2;
      }
    }
  } else {
    // Conditioning matters here: pick each u as the standard vector with the
    // largest component orthogonal to span{u_i, lambda u_i}, normalized.
    Mat<T> ortho(d, d);  // orthonormalized copy of the chosen columns
    while (have < d) {
      Eigen::Index best = -1;
      double best_score = tol;
      Vec<T> best_res;
      for (Eigen::Index idx : order) {
        Vec<T> e = Mat<T>::Identity(d, d).col(idx);
        Vec<T> res = e - ortho.leftCols(have) *
                             (ortho.leftCols(have).transpose() * e);
        double score = res.norm();
        if (score > best_score) {
          best_score = score;
          best = idx;
          best_res = res;
        }
      }
      if (best < 0) break;
      Vec<T> u = best_res / best_res.norm();
      frame.col(have) = u;
      frame.col(have + 1) = lambda * u;
      for (Eigen::Index c : {have, have + 1}) {
        Vec<T> w = frame.col(c);
        w -= ortho.leftCols(have) * (ortho.leftCols(have).transpose() * w);
        w -= ortho.leftCols(have) * (ortho.leftCols(have).transpose() * w);
        ortho.col(have) = w / w.norm();
        ++have;
      }
    }
  }
  if (have != d) throw error("adapted_frame: could not complete basis");
  // Reorder to [u_1..u_m | lambda u_1..lambda u_m].
  const Eigen::Index m = d / 2;
  Mat<T> out(d, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.col(i) = frame.col(2 * i);
    out.col(m + i) = frame.col(2 * i + 1);
  }
  return out;
}

// vec(X lambda - lambda X) = (lambda^T (x) Id - Id (x) lambda) vec(X).
template <typename T>
Mat<T> commutator_operator(const Mat<T>& lambda) {
  const Eigen::Index d = lambda.rows();
  Mat<T> op = Mat<T>::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      // Block (i,j) of lambda^T (x) Id is lambda(j,i) * Id.
      for (Eigen::Index r = 0; r < d; ++r)
        op(i * d + r, j * d + r) += lambda(j, i);
      // Id (x) lambda has lambda in each diagonal block.
      if (i == j)
        op.block(i * d, j * d, d, d) -= lambda;
    }
  return op;
}

// Commutant basis of an arbitrary square matrix, via the kernel of the
// commutator operator.  Works for squares +Id as well as -Id.
template <typename T>
std::vector<Mat<T>> commutant_basis(const Mat<T>& lambda, double tol) {
  const Eigen::Index d = lambda.rows();
  Mat<T> ker = nullspace<T>(commutator_operator<T>(lambda), tol);
  std::vector<Mat<T>> out;
  out.reserve(static_cast<std::size_t>(ker.cols()));
  for (Eigen::Index c = 0; c < ker.cols(); ++c)
    out.push_back(unvectorize<T>(Vec<T>(ker.col(c)), d, d));
  return out;
}

template <typename T>
Mat<T> vectorized_span(const std::vector<Mat<T>>& mats) {
  if (mats.empty()) throw error("vectorized_span: empty list");
  const Eigen::Index d = mats.front().rows();
  Mat<T> out(d * d, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t m = 0; m < mats.size(); ++m)
    out.col(static_cast<Eigen::Index>(m)) = vectorize<T>(mats[m]);
  return out;
}

}  // namespace detail

// Structured basis of {X : X lambda = lambda X} for a complex structure:
// in a frame where lambda is the standard block rotation, the commutant is
// {[[A, -B], [B, A]]}; dimension 8n^2 when lambda acts on R^{4n}.
template <typename T>
StabilizerTangent<T> stabilizer_tangent(const Mat<T>& lambda,
                                        double tol = kDefaultTol) {
  if (!is_complex_structure<T>(lambda, tol))
    throw not_complex_structure("stabilizer_tangent: lambda^2 != -Id");
  const Eigen::Index d = lambda.rows();
  const Eigen::Index m = d / 2;
  Mat<T> P = detail::adapted_frame<T>(lambda, tol);
  Mat<T> Pinv = inverse<T>(P, tol);
  StabilizerTangent<T> st;
  st.lambda = lambda;
  st.basis.reserve(static_cast<std::size_t>(2 * m * m));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      Mat<T> A = Mat<T>::Zero(d, d);
      A(j, k) = T(1);
      A(m + j, m + k) = T(1);
      st.basis.push_back(P * A * Pinv);
      Mat<T> B = Mat<T>::Zero(d, d);
      B(j, m + k) = T(-1);
      B(m + j, k) = T(1);
      st.basis.push_back(P * B * Pinv);
    }
  return st;
}

// Basis of {X : XI = IX and XB = BX}; dimension 4n^2 for epsilon = +-1.
template <typename T>
std::vector<Mat<T>> algebra_centralizer_tangent(const AlgebraRep<T>& rep,
                                                double tol = kDefaultTol) {
  const Eigen::Index d = rep.I.rows();
  Mat<T> stacked(2 * d * d, d * d);
  stacked.topRows(d * d) = detail::commutator_operator<T>(rep.I);
  stacked.bottomRows(d * d) = detail::commutator_operator<T>(rep.B);
  Mat<T> ker = nullspace<T>(stacked, tol);
  std::vector<Mat<T>> out;
  out.reserve(static_cast<std::size_t>(ker.cols()));
  for (Eigen::Index c = 0; c < ker.cols(); ++c)
    out.push_back(unvectorize<T>(Vec<T>(ker.col(c)), d, d));
  return out;
}

// Intersection of two spans of matrices, as a list of matrices.
template <typename T>
std::vector<Mat<T>> span_intersection(const std::vector<Mat<T>>& a,
                                      const std::vector<Mat<T>>& b,
                                      double tol = kDefaultTol) {
  Mat<T> Va = detail::vectorized_span<T>(a);
  Mat<T> Vb = detail::vectorized_span<T>(b);
  Mat<T> joint(Va.rows(), Va.cols() + Vb.cols());
  joint.leftCols(Va.cols()) = Va;
  joint.rightCols(Vb.cols()) = -Vb;
  Mat<T> ker = nullspace<T>(joint, tol);
  std::vector<Mat<T>> out;
  const Eigen::Index d = a.front().rows();
  Mat<T> combos = Va * ker.topRows(Va.cols());
  Mat<T> reduced = column_space_basis<T>(combos, tol);
  for (Eigen::Index c = 0; c < reduced.cols(); ++c)
    out.push_back(unvectorize<T>(Vec<T>(reduced.col(c)), d, d));
  return out;
}


namespace detail {

template <typename T>
int full_rank_dim(const Mat<T>& m, double tol) {
  if constexpr (scalar_traits<T>::is_exact)
    return rank_fast(m);
  else
    return rank<T>(m, tol);
}

}  // namespace detail

// True iff the three imaginary-unit commutants span a 12n^2 complement of
// the algebra centralizer inside gl(4n, R).
template <typename T>
bool generator_transversality(const AlgebraRep<T>& rep,
                              double tol = kDefaultTol) {
  if (rep.epsilon == 0)
    throw wrong_epsilon("generator_transversality: needs epsilon = +-1");
  auto cent = algebra_centralizer_tangent<T>(rep, tol);
  auto ci = detail::commutant_basis<T>(rep.I, tol);
  auto cj = detail::commutant_basis<T>(rep.B, tol);
  auto ck = detail::commutant_basis<T>(Mat<T>(rep.K()), tol);
  const Eigen::Index d = rep.I.rows();
  Mat<T> stack(d * d,
               static_cast<Eigen::Index>(cent.size() + ci.size() + cj.size() +
                                         ck.size()));
  Eigen::Index at = 0;
  for (const auto* group : {&cent, &ci, &cj, &ck})
    for (const auto& mtx : *group) stack.col(at++) = vectorize<T>(mtx);
  return detail::full_rank_dim<T>(stack, tol) == d * d;
}

// 3x3 determinant of the coordinate vectors of three line points.
template <typename T>
T triple_coordinate_determinant(const LinePoint<T>& p1, const LinePoint<T>& p2,
                                const LinePoint<T>& p3) {
  Mat<T> M(3, 3);
  M << p1.x, p1.y, p1.z, p2.x, p2.y, p2.z, p3.x, p3.y, p3.z;
  return M(0, 0) * (M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) -
         M(0, 1) * (M(1, 0) * M(2, 2) - M(1, 2) * M(2, 0)) +
         M(0, 2) * (M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0));
}

// True iff the stabilizer tangents of the three points, together with the
// line's algebra centralizer, span all of gl(4n, R).
template <typename T>
bool triple_transversality(const TwistorLine<T>& line, const LinePoint<T>& p1,
                           const LinePoint<T>& p2, const LinePoint<T>& p3,
                           double tol = kDefaultTol) {
  if (line.epsilon == 0)
    throw wrong_epsilon("triple_transversality: needs epsilon = +-1");
  AlgebraRep<T> rep{line.epsilon, line.n, 0, line.I, line.B};
  auto cent = algebra_centralizer_tangent<T>(rep, tol);
  auto s1 = stabilizer_tangent<T>(p1.matrix, tol);
  auto s2 = stabilizer_tangent<T>(p2.matrix, tol);
  auto s3 = stabilizer_tangent<T>(p3.matrix, tol);
  const Eigen::Index d = line.I.rows();
  Mat<T> stack(d * d,
               static_cast<Eigen::Index>(cent.size() + s1.basis.size() +
                                         s2.basis.size() + s3.basis.size()));
  Eigen::Index at = 0;
  for (const auto& mtx : cent) stack.col(at++) = vectorize<T>(mtx);
  for (const auto* st : {&s1, &s2, &s3})
    for (const auto& mtx : st->basis) stack.col(at++) = vectorize<T>(mtx);
  return detail::full_rank_dim<T>(stack, tol) == d * d;
}

struct NewtonResult {
  RealMat g1;
  RealMat g2;
  double residual = 0.0;
  int iterations = 0;
};

// Damped Newton for g1 g2 I3 g2^{-1} g1^{-1} = target with g1, g2 ranging
// over the stabilizer groups of I1 and I2.
inline NewtonResult local_connect(const LinePoint<double>& p1,
                                  const LinePoint<double>& p2,
                                  const LinePoint<double>& p3,
                                  const RealMat& target,
                                  double tol = kNewtonTol) {
  const Eigen::Index d = p3.matrix.rows();
  auto st1 = stabilizer_tangent<double>(p1.matrix);
  auto st2 = stabilizer_tangent<double>(p2.matrix);
  NewtonResult res;
  res.g1 = RealMat::Identity(d, d);
  res.g2 = RealMat::Identity(d, d);
  auto value = [&]() -> RealMat {
    RealMat g1i = res.g1.inverse();
    RealMat g2i = res.g2.inverse();
    return res.g1 * res.g2 * p3.matrix * g2i * g1i;
  };
  RealMat cur = value();
  double err = (target - cur).norm();
  res.residual = err;
  if (err < tol) return res;
  const Eigen::Index nb1 = static_cast<Eigen::Index>(st1.basis.size());
  const Eigen::Index nb2 = static_cast<Eigen::Index>(st2.basis.size());
  for (res.iterations = 1; res.iterations <= kNewtonMaxIter;
       ++res.iterations) {
    // Linearization: [X + g1 Y g1^{-1}, cur] = target - cur, X in Lie(G_I1),
    // Y in Lie(G_I2).
    RealMat g1i = res.g1.inverse();
    RealMat sys(d * d, nb1 + nb2);
    for (Eigen::Index c = 0; c < nb1; ++c) {
      RealMat br = st1.basis[static_cast<std::size_t>(c)] * cur -
                   cur * st1.basis[static_cast<std::size_t>(c)];
      sys.col(c) = vectorize<double>(br);
    }
    for (Eigen::Index c = 0; c < nb2; ++c) {
      RealMat conj_b =
          res.g1 * st2.basis[static_cast<std::size_t>(c)] * g1i;
      RealMat br = conj_b * cur - cur * conj_b;
      sys.col(nb1 + c) = vectorize<double>(br);
    }
    Eigen::VectorXd rhs = vectorize<double>(RealMat(target - cur));
    Eigen::VectorXd coef =
        sys.completeOrthogonalDecomposition().solve(rhs);
    RealMat X = RealMat::Zero(d, d), Y = RealMat::Zero(d, d);
    for (Eigen::Index c = 0; c < nb1; ++c)
      X += coef(c) * st1.basis[static_cast<std::size_t>(c)];
    for (Eigen::Index c = 0; c < nb2; ++c)
      Y += coef(nb1 + c) * st2.basis[static_cast<std::size_t>(c)];
    if (X.norm() + Y.norm() > 1e3)
      throw step_too_large("local_connect: target out of step radius");
    double scale = 1.0;
    RealMat save_g1 = res.g1, save_g2 = res.g2;
    bool improved = false;
    for (int halvings = 0; halvings < 25; ++halvings) {
      res.g1 = RealMat((scale * X).exp()) * save_g1;
      res.g2 = RealMat((scale * Y).exp()) * save_g2;
      RealMat trial = value();
      double trial_err = (target - trial).norm();
      if (trial_err < err) {
        cur = trial;
        err = trial_err;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) {
      res.g1 = save_g1;
      res.g2 = save_g2;
      throw not_converged("local_connect: no descent step", err);
    }
    res.residual = err;
    if (err < tol) return res;
  }
  throw not_converged("local_connect: iteration limit", err);
}

struct ChainSegment {
  TwistorLine<double> line;
  LinePoint<double> from_point;
  LinePoint<double> to_point;
  char component = '0';
};

struct TwistorPath {
  std::vector<ChainSegment> segments;
  std::vector<double> junction_residuals;
  double endpoint_residual = 0.0;
  int max_newton_iterations = 0;
};

namespace detail {

// Anticommuting partner with square epsilon * Id, built in a frame adapted
// to lambda.
inline RealMat anticommuting_partner(const RealMat& lambda, int epsilon,
                                     std::uint64_t seed,
                                     double tol = kDefaultTol) {
  const Eigen::Index d = lambda.rows();
  const Eigen::Index m = d / 2;
  RealMat P = adapted_frame<double>(lambda, tol, seed);
  RealMat M = RealMat::Zero(d, d);
  if (epsilon == 1) {
    M.topLeftCorner(m, m) = RealMat::Identity(m, m);
    M.bottomRightCorner(m, m) = -RealMat::Identity(m, m);
  } else {
    RealMat D = RealMat::Zero(m, m);
    D.topRightCorner(m / 2, m / 2) =
        -RealMat::Identity(m / 2, m / 2);
    D.bottomLeftCorner(m / 2, m / 2) = RealMat::Identity(m / 2, m / 2);
    M.topRightCorner(m, m) = D;
    M.bottomLeftCorner(m, m) = D;
  }
  return P * M * P.inverse();
}

// Projection to the quadric lambda^2 = -Id by lambda <- lambda (-lambda^2)^{-1/2},
// with the inverse square root from a Newton-Schulz iteration.
inline RealMat project_to_quadric(const RealMat& approx, double tol = 1e-13) {
  const Eigen::Index d = approx.rows();
  RealMat S = -(approx * approx);
  if ((S - RealMat::Identity(d, d)).norm() > 0.9)
    throw step_too_large("project_to_quadric: too far from the quadric");
  RealMat X = RealMat::Identity(d, d);
  for (int it = 0; it < 100; ++it) {
    RealMat next = 0.5 * X * (3.0 * RealMat::Identity(d, d) - S * X * X);
    double delta = (next - X).norm();
    X = next;
    if (delta < tol) break;
  }
  RealMat out = approx * X;
  if ((out * out + RealMat::Identity(d, d)).norm() > 1e-10)
    throw not_converged("project_to_quadric: inverse square root failed",
                        (out * out + RealMat::Identity(d, d)).norm());
  return out;
}

// Rational candidate coordinates for chain points, per type.
inline std::vector<std::array<double, 3>> candidate_points(int epsilon) {
  if (epsilon == 1)
    return {{5.0 / 3, 4.0 / 3, 0}, {5.0 / 3, 0, 4.0 / 3},
            {5.0 / 3, -4.0 / 3, 0}, {5.0 / 3, 0, -4.0 / 3},
            {5.0 / 4, 3.0 / 4, 0}, {5.0 / 4, 0, 3.0 / 4},
            {5.0 / 4, -3.0 / 4, 0}, {5.0 / 4, 0, -3.0 / 4},
            {13.0 / 12, 5.0 / 12, 0}, {13.0 / 12, 0, 5.0 / 12},
            {13.0 / 5, 12.0 / 5, 0}, {13.0 / 5, 0, 12.0 / 5},
            {5.0 / 4, 3.0 / 5, 9.0 / 20}, {5.0 / 3, 4.0 / 5, 16.0 / 15},
            {13.0 / 12, -5.0 / 12, 0}, {13.0 / 12, 0, -5.0 / 12}};
  return {{0, 1, 0}, {0, 0, 1}, {0, -1, 0}, {0, 0, -1},
          {0, 3.0 / 5, 4.0 / 5}, {0, 4.0 / 5, 3.0 / 5},
          {0, -3.0 / 5, 4.0 / 5}, {0, 3.0 / 5, -4.0 / 5},
          {3.0 / 5, 4.0 / 5, 0}, {3.0 / 5, 0, 4.0 / 5},
          {4.0 / 5, 3.0 / 5, 0}, {4.0 / 5, 0, 3.0 / 5},
          {5.0 / 13, 12.0 / 13, 0}, {5.0 / 13, 0, 12.0 / 13},
          {-3.0 / 5, 4.0 / 5, 0}, {12.0 / 13, 5.0 / 13, 0}};
}

}  // namespace detail

// Chain three line segments (S, g1 S, g1 g2 S) joining `current` to the
// solver's reached point near `target`; appends them to `path`.
inline RealMat connect_step(const RealMat& current, const RealMat& target,
                            int epsilon, std::uint64_t seed, TwistorPath& path,
                            double tol = kNewtonTol) {
  const Eigen::Index d = current.rows();
  const int n = static_cast<int>(d / 4);
  RealMat partner = detail::anticommuting_partner(current, epsilon, seed);
  AlgebraRep<double> rep{epsilon, n, 0, current, partner};
  if (!verify_rep<double>(rep).ok())
    throw invalid_rep("connect_step: partner construction failed");
  TwistorLine<double> line = line_from_rep<double>(rep);
  // I3 is the current point itself; pick I1, I2 maximizing the coordinate
  // determinant among rational candidates.
  LinePoint<double> p3 = point<double>(line, 1.0, 0.0, 0.0);
  auto cands = detail::candidate_points(epsilon);
  double best = -1.0;
  LinePoint<double> p1 = p3, p2 = p3;
  for (std::size_t a = 0; a < cands.size(); ++a)
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      double det = cands[a][1] * cands[b][2] - cands[a][2] * cands[b][1];
      if (std::abs(det) > best) {
        best = std::abs(det);
        p1 = point<double>(line, cands[a][0], cands[a][1], cands[a][2]);
        p2 = point<double>(line, cands[b][0], cands[b][1], cands[b][2]);
      }
    }
  NewtonResult sol = local_connect(p1, p2, p3, target, tol);
  path.max_newton_iterations =
      std::max(path.max_newton_iterations, sol.iterations);
  RealMat g1i = sol.g1.inverse();
  RealMat reached = sol.g1 * sol.g2 * p3.matrix * sol.g2.inverse() * g1i;

  auto conj_line = [&](const RealMat& g, const RealMat& gi) {
    TwistorLine<double> out = line;
    out.I = g * line.I * gi;
    out.B = g * line.B * gi;
    return out;
  };
  auto conj_point = [&](const TwistorLine<double>& ln,
                        const LinePoint<double>& p, const RealMat& g,
                        const RealMat& gi) {
    LinePoint<double> q = p;
    q.matrix = g * p.matrix * gi;
    (void)ln;
    return q;
  };
  RealMat g12 = sol.g1 * sol.g2;
  RealMat g12i = g12.inverse();
  TwistorLine<double> line2 = conj_line(sol.g1, g1i);
  TwistorLine<double> line3 = conj_line(g12, g12i);
  // g1 fixes I1 and g2 fixes I2, so consecutive segments meet exactly.
  LinePoint<double> j1 = p1;  // on S and on g1 S
  LinePoint<double> j2 = conj_point(line2, p2, sol.g1, g1i);  // on g1 S, g1g2 S
  LinePoint<double> end = conj_point(line3, p3, g12, g12i);
  end.matrix = reached;

  ChainSegment s1{line, p3, j1, epsilon == -1 ? '*' : '+'};
  ChainSegment s2{line2, j1, j2, epsilon == -1 ? '*' : '+'};
  ChainSegment s3{line3, j2, end, epsilon == -1 ? '*' : '+'};
  if (epsilon == 1) {
    s1.component = component_of<double>(line, p3);
    s2.component = component_of<double>(line2, j1);
    s3.component = component_of<double>(line3, j2);
  }
  if (!path.segments.empty())
    path.junction_residuals.push_back(
        (path.segments.back().to_point.matrix - s1.from_point.matrix).norm());
  path.segments.push_back(s1);
  path.junction_residuals.push_back((s1.to_point.matrix - s2.from_point.matrix).norm());
  path.segments.push_back(s2);
  path.junction_residuals.push_back((s2.to_point.matrix - s3.from_point.matrix).norm());
  path.segments.push_back(s3);
  return reached;
}

// Join two complex structures in one component by chains of three line
// segments, interpolating linearly and projecting back to the quadric.
inline TwistorPath connect(const RealMat& A, const RealMat& B, int epsilon,
                           double step = 0.5, std::uint64_t seed = 1,
                           double tol = kNewtonTol) {
  if (epsilon == 0)
    throw wrong_epsilon("connect: needs epsilon = +-1");
  if (!is_complex_structure<double>(A) || !is_complex_structure<double>(B))
    throw not_complex_structure("connect: endpoints must square to -Id");
  TwistorPath path;
  double dist = (B - A).norm();
  if (dist < tol) return path;
  int steps = std::max(1, static_cast<int>(std::ceil(dist / step)));
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      path = TwistorPath{};
      RealMat cur = A;
      for (int s = 1; s <= steps; ++s) {
        RealMat raw = A + (static_cast<double>(s) / steps) * (B - A);
        RealMat target = (s == steps && epsilon != 0)
                             ? B
                             : detail::project_to_quadric(raw);
        cur = connect_step(cur, target, epsilon,
                           seed + static_cast<std::uint64_t>(s), path, tol);
      }
      path.endpoint_residual = (path.segments.back().to_point.matrix - B).norm();
      return path;
    } catch (const step_too_large&) {
      steps *= 2;
    } catch (const not_converged&) {
      steps *= 2;
    }
  }
  throw not_converged("connect: step subdivision exhausted", dist);
}

struct SegmentReport {
  bool line_valid = false;
  bool from_on_line = false;
  bool to_on_line = false;
  bool component_ok = false;
  bool all() const {
    return line_valid && from_on_line && to_on_line && component_ok;
  }
};

struct PathReport {
  std::vector<SegmentReport> segments;
  double max_junction = 0.0;
  bool junctions_ok = true;
  bool verdict = true;
};

inline PathReport validate_path(const TwistorPath& path, double tol = 1e-8) {
  PathReport rep;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    SegmentReport sr;
    AlgebraRep<double> ar{seg.line.epsilon, seg.line.n, 0, seg.line.I,
                          seg.line.B};
    sr.line_valid = verify_rep<double>(ar).ok();
    auto check_point = [&](const LinePoint<double>& p) {
      try {
        return contains<double>(seg.line, p.matrix, tol).has_value();
      } catch (const error&) {
        return false;
      }
    };
    sr.from_on_line = check_point(seg.from_point);
    sr.to_on_line = check_point(seg.to_point);
    if (seg.line.epsilon == -1) {
      sr.component_ok = true;
    } else {
      try {
        sr.component_ok = component_of<double>(seg.line, seg.from_point) ==
                          component_of<double>(seg.line, seg.to_point);
      } catch (const error&) {
        sr.component_ok = false;
      }
    }
    if (i + 1 < path.segments.size()) {
      double jr = (seg.to_point.matrix -
                   path.segments[i + 1].from_point.matrix)
                      .norm();
      rep.max_junction = std::max(rep.max_junction, jr);
      if (jr > tol) rep.junctions_ok = false;
    }
    rep.segments.push_back(sr);
    if (!sr.all()) rep.verdict = false;
  }
  if (!rep.junctions_ok) rep.verdict = false;
  return rep;
}

}  // namespace twistor

#endif  // TWISTOR_CONNECTIVITY_HPP
