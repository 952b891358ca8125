// Representations of the algebras H(eps) = <i, j | i^2 = -1, j^2 = eps,
// ij + ji = 0> inside End(V_R), V_R = R^{4n}: construction of the standard
// block models, relation checking, classification of pairs of complex
// structures, the trace form, and adapted bases for the nilpotent case.
#ifndef TWISTOR_REP_HPP
#define TWISTOR_REP_HPP

#include <vector>

#include "twistor/linalg.hpp"

namespace twistor {

// A faithful representation of H(eps): generator images I (of i) and B (of j),
// with I^2 = -Id, B^2 = eps * Id, IB + BI = 0.
template <typename T>
struct AlgebraRep {
  int epsilon = -1;  // -1, 0, or 1
  Eigen::Index n = 1;
  int k = 0;  // nilpotent case only: rank B = 2k
  Mat<T> I;
  Mat<T> B;

  Eigen::Index dim() const { return 4 * n; }
  Mat<T> K() const { return I * B; }
};

template <typename T>
struct RepReport {
  bool i_squares = false;       // I^2 = -Id
  bool b_squares = false;       // B^2 = eps * Id
  bool anticommute = false;     // IB + BI = 0
  bool faithful = true;         // eps = 0 only: B != 0
  bool ok() const { return i_squares && b_squares && anticommute && faithful; }
};

namespace detail {

template <typename T>
bool matrices_equal(const Mat<T>& a, const Mat<T>& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  real_of<T> scale(0);
  if constexpr (!scalar_traits<T>::is_exact) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        scale = std::max({scale, std::sqrt(abs2(a(i, j))),
                          std::sqrt(abs2(b(i, j)))});
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!scalar_traits<T>::is_zero(a(i, j) - b(i, j), scale, tol))
        return false;
  return true;
}

template <typename T>
bool is_zero_matrix(const Mat<T>& a, double tol) {
  return matrices_equal<T>(a, Mat<T>(Mat<T>::Zero(a.rows(), a.cols())), tol);
}

}  // namespace detail

template <typename T>
bool is_complex_structure(const Mat<T>& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  Mat<T> msq = m * m;
  Mat<T> neg_id = -Mat<T>::Identity(m.rows(), m.cols());
  return detail::matrices_equal<T>(msq, neg_id, tol);
}

template <typename T>
RepReport<T> verify_rep(const Mat<T>& I, const Mat<T>& B, int epsilon,
                        double tol = kDefaultTol) {
  RepReport<T> rep;
  const Eigen::Index d = I.rows();
  Mat<T> id = Mat<T>::Identity(d, d);
  rep.i_squares = detail::matrices_equal<T>(Mat<T>(I * I), Mat<T>(-id), tol);
  rep.b_squares = detail::matrices_equal<T>(
      Mat<T>(B * B), Mat<T>(T(epsilon) * id), tol);
  rep.anticommute = detail::is_zero_matrix<T>(Mat<T>(I * B + B * I), tol);
  if (epsilon == 0) rep.faithful = !detail::is_zero_matrix<T>(B, tol);
  return rep;
}

template <typename T>
RepReport<T> verify_rep(const AlgebraRep<T>& rep, double tol = kDefaultTol) {
  return verify_rep<T>(rep.I, rep.B, rep.epsilon, tol);
}

namespace detail {

// [[0, -1_m], [1_m, 0]], the complex-structure block of size 2m.
template <typename T>
Mat<T> jblock(Eigen::Index m) {
  Mat<T> j = Mat<T>::Zero(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    j(i, m + i) = T(-1);
    j(m + i, i) = T(1);
  }
  return j;
}

}  // namespace detail

// The standard block models: for eps = +-1 the generators act on
// V = R^{2n} + R^{2n}; for eps = 0 the blocks are Im N (size 2k),
// W (size 2l, l = 2(n-k)), U (size 2k), with N carrying U identically
// onto Im N.
template <typename T>
AlgebraRep<T> standard_rep(int epsilon, Eigen::Index n, int k = 0) {
  AlgebraRep<T> rep;
  rep.epsilon = epsilon;
  rep.n = n;
  const Eigen::Index d = 4 * n;
  if (epsilon == -1 || epsilon == 1) {
    rep.I = Mat<T>::Zero(d, d);
    rep.I.topRightCorner(2 * n, 2 * n) = -Mat<T>::Identity(2 * n, 2 * n);
    rep.I.bottomLeftCorner(2 * n, 2 * n) = Mat<T>::Identity(2 * n, 2 * n);
    rep.B = Mat<T>::Zero(d, d);
    if (epsilon == -1) {
      Mat<T> i2n = detail::jblock<T>(n);
      rep.B.topLeftCorner(2 * n, 2 * n) = i2n;
      rep.B.bottomRightCorner(2 * n, 2 * n) = -i2n;
    } else {
      rep.B.topLeftCorner(2 * n, 2 * n) = Mat<T>::Identity(2 * n, 2 * n);
      rep.B.bottomRightCorner(2 * n, 2 * n) = -Mat<T>::Identity(2 * n, 2 * n);
    }
    return rep;
  }
  if (epsilon != 0) throw error("standard_rep: epsilon must be -1, 0, or 1");
  if (k < 1 || k > n) throw bad_k("standard_rep: need 1 <= k <= n");
  rep.k = k;
  const Eigen::Index l = 2 * (n - k);
  rep.I = Mat<T>::Zero(d, d);
  rep.I.block(0, 0, 2 * k, 2 * k) = -detail::jblock<T>(k);  // [[0,1],[-1,0]]
  rep.I.block(2 * k, 2 * k, 2 * l, 2 * l) = detail::jblock<T>(l);
  rep.I.block(2 * k + 2 * l, 2 * k + 2 * l, 2 * k, 2 * k) =
      detail::jblock<T>(k);
  rep.B = Mat<T>::Zero(d, d);
  rep.B.block(0, 2 * k + 2 * l, 2 * k, 2 * k) =
      Mat<T>::Identity(2 * k, 2 * k);
  return rep;
}

// Classification of a pair of complex structures generating a copy of H(eps):
// with J1 J2 + J2 J1 = 2 alpha Id, the operator B_raw = alpha J1 + J2
// anticommutes with J1 and squares to (alpha^2 - 1) Id. The sign of
// c = alpha^2 - 1 picks the algebra type.
template <typename T>
struct PairClassification {
  T alpha;
  int epsilon;   // sign of c
  Mat<T> I;      // = J1
  Mat<T> B_raw;  // = alpha J1 + J2, unnormalized: B_raw^2 = c Id
  T c;           // alpha^2 - 1
};

// The pairing (u, v) = -Tr(uv) / (4n).
template <typename T>
T trace_form(const Mat<T>& u, const Mat<T>& v, Eigen::Index n) {
  return -(u * v).trace() / T(static_cast<int>(4 * n));
}

template <typename T>
PairClassification<T> classify_pair(const Mat<T>& j1, const Mat<T>& j2,
                                    double tol = kDefaultTol) {
  if (j1.rows() != j1.cols() || j1.rows() != j2.rows() ||
      j2.rows() != j2.cols() || j1.rows() % 4 != 0)
    throw error("classify_pair: need square 4n x 4n inputs");
  const Eigen::Index d = j1.rows();
  if (!is_complex_structure<T>(j1, tol) || !is_complex_structure<T>(j2, tol))
    throw not_complex_structure("classify_pair: J^2 != -Id");
  Mat<T> anti = j1 * j2 + j2 * j1;
  T alpha = anti.trace() / T(static_cast<int>(2 * d));
  real_of<T> scale(0);
  if constexpr (!scalar_traits<T>::is_exact) {
    for (Eigen::Index i = 0; i < d; ++i)
      scale = std::max(scale, std::sqrt(abs2(anti(i, i))));
  }
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      T expect = (i == j) ? T(2) * alpha : T(0);
      if (!scalar_traits<T>::is_zero(anti(i, j) - expect, scale, tol))
        throw not_cospherical("classify_pair: J1J2 + J2J1 is not scalar");
    }
  PairClassification<T> out;
  out.alpha = alpha;
  out.I = j1;
  out.B_raw = alpha * j1 + j2;
  out.c = alpha * alpha - T(1);
  if (detail::is_zero_matrix<T>(out.B_raw, tol))
    throw proportional_inputs("classify_pair: J2 proportional to J1");
  if constexpr (scalar_traits<T>::is_exact) {
    out.epsilon = out.c.sign();
  } else {
    out.epsilon = std::abs(out.c) <= tol ? 0 : (out.c > 0 ? 1 : -1);
  }
  return out;
}

// Signature (pos, neg, null) of q(x, y) = scalar part of (xy + yx)/2 on
// span<I, B, K>: (0,3,0) for eps = -1, (2,1,0) for eps = 1, (0,1,2) for
// eps = 0.
template <typename T>
struct Signature {
  int pos = 0, neg = 0, null = 0;
  bool operator==(const Signature&) const = default;
};

template <typename T>
Signature<T> span_signature(const AlgebraRep<T>& rep,
                            double tol = kDefaultTol) {
  const Eigen::Index d = rep.dim();
  Mat<T> gens[3] = {rep.I, rep.B, rep.K()};
  Mat<T> gram(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      gram(a, b) = (gens[a] * gens[b] + gens[b] * gens[a]).trace() /
                   T(static_cast<int>(2 * d));
  Signature<T> sig;
  // Symmetric pivoting on the real 3x3 Gram matrix.
  std::vector<int> live = {0, 1, 2};
  while (!live.empty()) {
    int pk = -1;
    for (std::size_t m = 0; m < live.size(); ++m)
      if (!scalar_traits<T>::is_zero(gram(live[m], live[m]), real_of<T>(1),
                                     tol)) {
        pk = static_cast<int>(m);
        break;
      }
    if (pk < 0) {
      bool all_zero = true;
      for (int a : live)
        for (int b : live)
          if (!scalar_traits<T>::is_zero(gram(a, b), real_of<T>(1), tol))
            all_zero = false;
      if (all_zero) {
        sig.null += static_cast<int>(live.size());
        break;
      }
      sig.pos += 1;  // hyperbolic pair
      sig.neg += 1;
      break;
    }
    int p = live[pk];
    T d0 = gram(p, p);
    bool positive;
    if constexpr (scalar_traits<T>::is_exact)
      positive = d0.sign() > 0;
    else
      positive = d0 > 0;
    (positive ? sig.pos : sig.neg) += 1;
    live.erase(live.begin() + pk);
    for (int a : live)
      for (int b : live) gram(a, b) -= gram(a, p) * gram(p, b) / d0;
  }
  return sig;
}

// k = rank(N) / 2 for a valid H(0) representation (I, N).
template <typename T>
int classify_nilpotent_rep(const Mat<T>& I, const Mat<T>& N,
                           double tol = kDefaultTol) {
  auto rep = verify_rep<T>(I, N, 0, tol);
  if (!rep.ok()) throw invalid_rep("classify_nilpotent_rep: not an H(0) rep");
  int r = rank<T>(N, tol);
  if (r % 2 != 0)
    throw invalid_rep("classify_nilpotent_rep: odd rank of N");
  return r / 2;
}

// Change of basis g with g^{-1} I g and g^{-1} N g in the standard block
// form: columns ordered Nu_1..Nu_k, NIu_1..NIu_k, w_1..w_l, Iw_1..Iw_l,
// u_1..u_k, Iu_1..Iu_k, where U is an I-invariant complement of Ker N and
// W an I-invariant complement of Im N inside Ker N.
template <typename T>
Mat<T> adapted_nilpotent_basis(const Mat<T>& I, const Mat<T>& N,
                               double tol = kDefaultTol) {
  const int k = classify_nilpotent_rep<T>(I, N, tol);
  const Eigen::Index d = I.rows();
  const Eigen::Index n = d / 4;
  const Eigen::Index l = 2 * (n - k);

  Mat<T> ker = nullspace<T>(N, tol);         // dim 4n - 2k
  Mat<T> im = column_space_basis<T>(N, tol);  // dim 2k

  // Greedy I-invariant complement: while span(avoid + picked) is proper,
  // pick a standard basis vector e outside it, add (e, Ie). The accumulated
  // span is I-invariant throughout, which keeps the pairs independent.
  auto pick_pairs = [&](const Mat<T>& avoid, const Mat<T>& inside,
                        Eigen::Index count) {
    std::vector<Vec<T>> picked;
    Mat<T> span = avoid;
    for (Eigen::Index c = 0; c < inside.cols() &&
                             static_cast<Eigen::Index>(picked.size()) <
                                 2 * count;
         ++c) {
      Vec<T> u = inside.col(c);
      if (span_contains<T>(span, u, tol)) continue;
      Vec<T> iu = I * u;
      picked.push_back(u);
      picked.push_back(iu);
      Mat<T> grown(d, span.cols() + 2);
      grown.leftCols(span.cols()) = span;
      grown.col(span.cols()) = u;
      grown.col(span.cols() + 1) = iu;
      span = grown;
    }
    if (static_cast<Eigen::Index>(picked.size()) != 2 * count)
      throw invalid_rep("adapted_nilpotent_basis: complement search failed");
    return picked;
  };

  // U: I-invariant complement of Ker N, from standard basis candidates.
  auto us = pick_pairs(ker, Mat<T>(Mat<T>::Identity(d, d)), k);
  // W: I-invariant complement of Im N inside Ker N (dimension 2l).
  auto ws = pick_pairs(im, ker, l);

  Mat<T> g(d, d);
  for (int j = 0; j < k; ++j) {
    g.col(j) = N * us[2 * j];          // N u_j
    g.col(k + j) = N * us[2 * j + 1];  // N I u_j
  }
  for (Eigen::Index j = 0; j < l; ++j) {
    g.col(2 * k + j) = ws[2 * j];          // w_j
    g.col(2 * k + l + j) = ws[2 * j + 1];  // I w_j
  }
  for (int j = 0; j < k; ++j) {
    g.col(2 * k + 2 * l + j) = us[2 * j];          // u_j
    g.col(2 * k + 2 * l + k + j) = us[2 * j + 1];  // I u_j
  }
  if (rank<T>(g, tol) != d)
    throw invalid_rep("adapted_nilpotent_basis: basis not invertible");
  return g;
}

template <typename T>
AlgebraRep<T> conjugate_rep(const Mat<T>& g, const AlgebraRep<T>& rep,
                            double tol = kDefaultTol) {
  Mat<T> gi = inverse<T>(g, tol);
  AlgebraRep<T> out = rep;
  out.I = g * rep.I * gi;
  out.B = g * rep.B * gi;
  return out;
}

}  // namespace twistor

#endif  // TWISTOR_REP_HPP
