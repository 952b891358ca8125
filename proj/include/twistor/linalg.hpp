// Rank / nullspace / definiteness / subspace kernels. Exact scalars use plain
// Gaussian elimination with exact zero tests; float scalars pivot by magnitude
// and threshold relative to the largest pivot seen.
#ifndef TWISTOR_LINALG_HPP
#define TWISTOR_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "twistor/matrix.hpp"

namespace twistor {

enum class Definiteness { positive, negative, indefinite, degenerate };

inline const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive:
      return "positive";
    case Definiteness::negative:
      return "negative";
    case Definiteness::indefinite:
      return "indefinite";
    case Definiteness::degenerate:
      return "degenerate";
  }
  return "?";
}

namespace detail {

// Row echelon form. Pivot columns are recorded; for float scalars a pivot
// counts only if its magnitude exceeds tol * (largest pivot magnitude).
template <typename T>
struct Echelon {
  Mat<T> u;                     // reduced row echelon form
  std::vector<int> pivot_cols;  // one per pivot row
  int rank = 0;
};

template <typename T>
Echelon<T> echelon(Mat<T> a, double tol = kDefaultTol) {
  using RT = real_of<T>;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Echelon<T> res;
  RT largest(0);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    // best pivot in column c at or below row r
    Eigen::Index p = -1;
    RT best(0);
    for (Eigen::Index i = r; i < rows; ++i) {
      RT score = abs2(a(i, c));
      if (p < 0 || best < score) {
        best = score;
        p = i;
      }
    }
    if constexpr (scalar_traits<T>::is_exact) {
      if (best == RT(0)) continue;
    } else {
      if (largest < best) largest = best;
      if (!(best > tol * tol * std::max(1.0, largest))) continue;
    }
    a.row(r).swap(a.row(p));
    T inv_pivot = T(1);
    inv_pivot = inv_pivot / a(r, c);
    a.row(r) *= inv_pivot;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      T f = a(i, c);
      if constexpr (scalar_traits<T>::is_exact) {
        if (abs2(f) == RT(0)) continue;
      }
      a.row(i) -= f * a.row(r);
    }
    res.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  res.rank = static_cast<int>(r);
  res.u = std::move(a);
  return res;
}

// Rank over Z/p of a rational matrix; a lower bound for the exact rank.
// Returns nullopt when some denominator vanishes mod p.
inline std::optional<int> rank_mod_p(const RatMat& m, std::uint64_t p) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  auto mod = [&](const boost::multiprecision::cpp_int& x) -> std::uint64_t {
    auto r = static_cast<std::int64_t>(x % p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p)
                                            : r);
  };
  auto pow_mod = [&](std::uint64_t b, std::uint64_t e) {
    unsigned __int128 acc = 1, base = b % p;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
  };
  std::vector<std::vector<std::uint64_t>> a(rows,
                                            std::vector<std::uint64_t>(cols));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::uint64_t den = mod(denominator(m(i, j).raw()));
      if (den == 0) return std::nullopt;
      std::uint64_t num = mod(numerator(m(i, j).raw()));
      a[i][j] = static_cast<std::uint64_t>(
          (unsigned __int128)num * pow_mod(den, p - 2) % p);
    }
  int rank = 0;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    std::uint64_t inv = pow_mod(a[r][c], p - 2);
    for (Eigen::Index j = c; j < cols; ++j)
      a[r][j] = static_cast<std::uint64_t>((unsigned __int128)a[r][j] * inv %
                                           p);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = p - a[i][c];
      for (Eigen::Index j = c; j < cols; ++j)
        a[i][j] = static_cast<std::uint64_t>(
            (a[i][j] + (unsigned __int128)f * a[r][j]) % p);
    }
    ++rank;
    ++r;
  }
  return rank;
}

}  // namespace detail

template <typename T>
int rank(const Mat<T>& m, double tol = kDefaultTol) {
  return detail::echelon(m, tol).rank;
}

// Exact rank of a rational matrix with a modular fast path: a full-rank
// verdict mod p certifies full exact rank, otherwise fall back to exact
// elimination.
inline int rank_fast(const RatMat& m) {
  const int full = static_cast<int>(std::min(m.rows(), m.cols()));
  static constexpr std::uint64_t primes[] = {2147483647ull, 2305843009213693951ull};
  for (auto p : primes) {
    auto r = detail::rank_mod_p(m, p);
    if (r && *r == full) return full;
  }
  return rank<Rat>(m);
}

// Basis of the right kernel, one column per free variable. Exact in the
// rational domain.
template <typename T>
Mat<T> nullspace(const Mat<T>& m, double tol = kDefaultTol) {
  auto ech = detail::echelon(m, tol);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int c : ech.pivot_cols) is_pivot[c] = true;
  Mat<T> basis = Mat<T>::Zero(cols, cols - ech.rank);
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    basis(c, k) = T(1);
    for (int r = 0; r < ech.rank; ++r)
      basis(ech.pivot_cols[r], k) = -ech.u(r, c);
    ++k;
  }
  return basis;
}

// One solution of A x = b, or nullopt when inconsistent.
template <typename T>
std::optional<Vec<T>> solve(const Mat<T>& a, const Vec<T>& b,
                            double tol = kDefaultTol) {
  Mat<T> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto ech = detail::echelon(aug, tol);
  Vec<T> x = Vec<T>::Zero(a.cols());
  for (int r = 0; r < ech.rank; ++r) {
    if (ech.pivot_cols[r] == static_cast<int>(a.cols()))
      return std::nullopt;  // pivot in the rhs column
    x(ech.pivot_cols[r]) = ech.u(r, a.cols());
  }
  return x;
}

template <typename T>
Mat<T> inverse(const Mat<T>& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) throw error("inverse: non-square input");
  Mat<T> aug(a.rows(), 2 * a.cols());
  aug.leftCols(a.cols()) = a;
  aug.rightCols(a.cols()) = Mat<T>::Identity(a.rows(), a.cols());
  auto ech = detail::echelon(aug, tol);
  for (int r = 0; r < ech.rank; ++r)
    if (ech.pivot_cols[r] != r) throw singular_matrix("inverse: singular");
  if (ech.rank != a.rows()) throw singular_matrix("inverse: singular");
  return ech.u.rightCols(a.cols());
}

// Independent columns of m, as a basis of its column space.
template <typename T>
Mat<T> column_space_basis(const Mat<T>& m, double tol = kDefaultTol) {
  auto ech = detail::echelon(m, tol);
  Mat<T> basis(m.rows(), ech.rank);
  for (int r = 0; r < ech.rank; ++r) basis.col(r) = m.col(ech.pivot_cols[r]);
  return basis;
}

template <typename T>
bool spans_equal(const Mat<T>& a, const Mat<T>& b, double tol = kDefaultTol) {
  if (a.rows() != b.rows()) return false;
  int ra = rank<T>(a, tol), rb = rank<T>(b, tol);
  if (ra != rb) return false;
  Mat<T> joint(a.rows(), a.cols() + b.cols());
  joint.leftCols(a.cols()) = a;
  joint.rightCols(b.cols()) = b;
  return rank<T>(joint, tol) == ra;
}

template <typename T>
bool span_contains(const Mat<T>& basis, const Vec<T>& v,
                   double tol = kDefaultTol) {
  Mat<T> joint(basis.rows(), basis.cols() + 1);
  joint.leftCols(basis.cols()) = basis;
  joint.col(basis.cols()) = v;
  return rank<T>(joint, tol) == rank<T>(basis, tol);
}

// A complex subspace of C^ambient given by an independent column basis.
template <typename C>
class Subspace {
 public:
  Subspace(Eigen::Index ambient, Mat<C> basis, double tol = kDefaultTol)
      : ambient_(ambient), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_)
      throw error("Subspace: basis rows != ambient dimension");
    for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
      bool zero = true;
      for (Eigen::Index i = 0; i < ambient_ && zero; ++i)
        if (!scalar_traits<C>::is_zero(basis_(i, j), real_of<C>(1), tol))
          zero = false;
      if (zero) throw error("Subspace: zero basis column");
    }
    if (rank<C>(basis_, tol) != basis_.cols())
      throw error("Subspace: dependent basis columns");
  }

  // Reduce an arbitrary spanning set to a basis first.
  static Subspace from_span(Eigen::Index ambient, const Mat<C>& span,
                            double tol = kDefaultTol) {
    return Subspace(ambient, column_space_basis<C>(span, tol), tol);
  }

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  const Mat<C>& basis() const { return basis_; }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && spans_equal<C>(basis_, o.basis_);
  }

 private:
  Eigen::Index ambient_;
  Mat<C> basis_;
};

using SubspaceC = Subspace<CRat>;
using SubspaceCd = Subspace<std::complex<double>>;

// dim_R (U cap V_R): real vectors of the column span. With z = p + iq and
// basis B = Br + i Bi, the condition Im(B z) = 0 reads Bi p + Br q = 0, and
// z -> B z is injective on that kernel.
template <typename C>
int real_points_dimension(const Subspace<C>& u, double tol = kDefaultTol) {
  using RT = real_of<C>;
  Mat<RT> br = real_part<C>(u.basis());
  Mat<RT> bi = imag_part<C>(u.basis());
  Mat<RT> sys(u.ambient_dim(), 2 * u.dim());
  sys.leftCols(u.dim()) = bi;
  sys.rightCols(u.dim()) = br;
  return static_cast<int>(2 * u.dim()) - rank<RT>(sys, tol);
}

// Basis of U cap V_R as real columns: kernel vectors (p; q) of [Bi | Br]
// give the real member Br p - Bi q of the span, and the assignment is
// injective.
template <typename C>
Mat<real_of<C>> real_points_basis(const Mat<C>& basis,
                                  double tol = kDefaultTol) {
  using RT = real_of<C>;
  Mat<RT> br = real_part<C>(basis);
  Mat<RT> bi = imag_part<C>(basis);
  Mat<RT> sys(basis.rows(), 2 * basis.cols());
  sys.leftCols(basis.cols()) = bi;
  sys.rightCols(basis.cols()) = br;
  Mat<RT> ker = nullspace<RT>(sys, tol);
  Mat<RT> out(basis.rows(), ker.cols());
  for (Eigen::Index c = 0; c < ker.cols(); ++c)
    out.col(c) = br * ker.col(c).head(basis.cols()) -
                 bi * ker.col(c).tail(basis.cols());
  return out;
}

namespace detail {

// Exact definiteness by symmetric (hermitian) pivoting: count pivot signs of
// the diagonal Schur-complement elimination. A remaining nonzero block with an
// all-zero diagonal is hermitian-indefinite.
template <typename C>
Definiteness definiteness_exact(Mat<C> h) {
  int pos = 0, neg = 0, null = 0;
  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> live(n);
  for (Eigen::Index i = 0; i < n; ++i) live[i] = i;
  while (!live.empty()) {
    Eigen::Index pk = -1;
    for (std::size_t k = 0; k < live.size(); ++k)
      if (!(real(h(live[k], live[k])) == Rat(0))) {
        pk = static_cast<Eigen::Index>(k);
        break;
      }
    if (pk < 0) {
      bool all_zero = true;
      for (auto i : live)
        for (auto j : live)
          if (!(abs2(h(i, j)) == Rat(0))) all_zero = false;
      if (all_zero) {
        null += static_cast<int>(live.size());
        break;
      }
      // zero diagonal, nonzero off-diagonal: a hyperbolic 2x2 block
      return Definiteness::indefinite;
    }
    Eigen::Index p = live[pk];
    Rat d = real(h(p, p));
    (d > Rat(0) ? pos : neg) += 1;
    live.erase(live.begin() + pk);
    C dd = h(p, p);
    for (auto i : live)
      for (auto j : live) h(i, j) -= h(i, p) * h(p, j) / dd;
  }
  if (pos > 0 && neg > 0) return Definiteness::indefinite;
  if (null > 0) return Definiteness::degenerate;
  return pos > 0 ? Definiteness::positive : Definiteness::negative;
}

}  // namespace detail

// Classification of a hermitian matrix. Exact pivots in the rational domain,
// eigenvalue signs against tol in the float domain.
template <typename C>
Definiteness hermitian_definiteness(const Mat<C>& h, double tol = kDefaultTol) {
  if (h.rows() != h.cols()) throw not_hermitian("non-square");
  if constexpr (scalar_traits<C>::is_exact) {
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = 0; j < h.cols(); ++j)
        if (h(i, j) != Eigen::numext::conj(h(j, i)))
          throw not_hermitian("H != H^*");
    if (h.rows() == 0) return Definiteness::degenerate;
    return detail::definiteness_exact<C>(h);
  } else {
    double scale = 0;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = 0; j < h.cols(); ++j)
        scale = std::max(scale, std::sqrt(abs2(h(i, j))));
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = 0; j < h.cols(); ++j)
        if (std::sqrt(abs2(h(i, j) - Eigen::numext::conj(h(j, i)))) >
            tol * std::max(1.0, scale))
          throw not_hermitian("H != H^* beyond tolerance");
    Eigen::SelfAdjointEigenSolver<Mat<C>> es(h);
    const auto& ev = es.eigenvalues();
    double emax = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      emax = std::max(emax, std::abs(ev(i)));
    int pos = 0, neg = 0, null = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i)) <= tol * std::max(1.0, emax))
        ++null;
      else if (ev(i) > 0)
        ++pos;
      else
        ++neg;
    }
    if (pos > 0 && neg > 0) return Definiteness::indefinite;
    if (null > 0) return Definiteness::degenerate;
    return pos > 0 ? Definiteness::positive : Definiteness::negative;
  }
}

// Principal angles between equidimensional subspaces, nonincreasing, in
// [0, pi/2]. Float domain only.
inline std::vector<double> principal_angles(const SubspaceCd& u1,
                                            const SubspaceCd& u2) {
  if (u1.ambient_dim() != u2.ambient_dim() || u1.dim() != u2.dim())
    throw domain_mismatch("principal_angles: dimension mismatch");
  auto orth = [](const CplxMat& b) {
    Eigen::HouseholderQR<CplxMat> qr(b);
    CplxMat q = qr.householderQ() * CplxMat::Identity(b.rows(), b.cols());
    return q;
  };
  CplxMat q1 = orth(u1.basis()), q2 = orth(u2.basis());
  Eigen::JacobiSVD<CplxMat> svd(q1.adjoint() * q2);
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    double s = std::clamp(svd.singularValues()(i), 0.0, 1.0);
    angles.push_back(std::acos(s));
  }
  std::sort(angles.rbegin(), angles.rend());
  return angles;
}

inline std::vector<double> principal_angles(const SubspaceC&,
                                            const SubspaceC&) {
  throw domain_mismatch("principal_angles requires the float domain");
}

// Column-major vectorization helpers for commutation-type linear systems.
template <typename T>
Vec<T> vectorize(const Mat<T>& m) {
  Vec<T> v(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v(k++) = m(i, j);
  return v;
}

template <typename T>
Mat<T> unvectorize(const Vec<T>& v, Eigen::Index rows, Eigen::Index cols) {
  Mat<T> m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = v(k++);
  return m;
}

}  // namespace twistor

#endif  // TWISTOR_LINALG_HPP
