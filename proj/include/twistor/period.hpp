// Normalized period matrices, the Riemann bilinear relation machinery, the
// space Hdg_S of forms invariant along a twistor line, and Kahler-class
// certification per line type.
#ifndef TWISTOR_PERIOD_HPP
#define TWISTOR_PERIOD_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistor/line.hpp"

namespace twistor {

// Lattice-normalized period data of a complex structure lambda: rows p with
// p lambda = i p, scaled so the selected 2n lattice columns carry the
// identity. P_norm keeps the original column order; Z collects the
// complementary columns.
template <typename T>
struct PeriodMatrix {
  Mat<complex_of<T>> Z;                  // 2n x 2n
  std::vector<Eigen::Index> selection;   // the 2n identity columns
  Mat<complex_of<T>> P_norm;             // 2n x 4n, original column order
};

template <typename T>
PeriodMatrix<T> normalized_period(const Mat<T>& lambda,
                                  double tol = kDefaultTol) {
  using C = complex_of<T>;
  if (!is_complex_structure<T>(lambda, tol))
    throw not_complex_structure("normalized_period: lambda^2 != -Id");
  const Eigen::Index d = lambda.rows();  // 4n
  Mat<C> lt = complexify<T>(Mat<T>(lambda.transpose()));
  Mat<C> sys = lt - imaginary_unit<T>() * Mat<C>::Identity(d, d);
  Mat<C> ker = nullspace<C>(sys, tol);  // columns p^t, d x 2n
  Mat<C> p = ker.transpose();           // 2n x d rows
  auto ech = detail::echelon<C>(p, tol);
  if (ech.rank != d / 2)
    throw not_complex_structure("normalized_period: eigenspace rank defect");
  PeriodMatrix<T> out;
  Mat<C> a(d / 2, d / 2);
  for (int r = 0; r < ech.rank; ++r) {
    out.selection.push_back(ech.pivot_cols[r]);
    a.col(r) = p.col(ech.pivot_cols[r]);
  }
  out.P_norm = inverse<C>(a, tol) * p;
  out.Z = Mat<C>(d / 2, d / 2);
  Eigen::Index zc = 0;
  std::vector<bool> sel(d, false);
  for (auto c : out.selection) sel[c] = true;
  for (Eigen::Index c = 0; c < d; ++c)
    if (!sel[c]) out.Z.col(zc++) = out.P_norm.col(c);
  return out;
}

template <typename T>
struct DualPeriod {
  Mat<complex_of<T>> E;
  Mat<complex_of<T>> G;
};

template <typename T>
DualPeriod<T> dual_period(const Mat<complex_of<T>>& z,
                          double tol = kDefaultTol) {
  using C = complex_of<T>;
  Mat<C> zbar(z.rows(), z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    for (Eigen::Index i = 0; i < z.rows(); ++i) zbar(i, j) = conj(z(i, j));
  Mat<C> diff = z - zbar;
  DualPeriod<T> out;
  try {
    out.G = inverse<C>(diff, tol);
  } catch (const singular_matrix&) {
    throw degenerate_imaginary_part("dual_period: Z - conj(Z) singular");
  }
  out.E = Mat<C>::Identity(z.rows(), z.cols()) - z * out.G;
  return out;
}

namespace detail {

template <typename C>
Mat<C> conj_matrix(const Mat<C>& m) {
  Mat<C> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = conj(m(i, j));
  return out;
}

}  // namespace detail

// Pi with [P_norm; conj(P_norm)] * [Pi | conj(Pi)] = Id_{4n}.
template <typename T>
Mat<complex_of<T>> period_pi(const PeriodMatrix<T>& pm,
                             double tol = kDefaultTol) {
  using C = complex_of<T>;
  const Eigen::Index d = pm.P_norm.cols();
  Mat<C> omega(d, d);
  omega.topRows(d / 2) = pm.P_norm;
  omega.bottomRows(d / 2) = detail::conj_matrix<C>(pm.P_norm);
  return inverse<C>(omega, tol).leftCols(d / 2);
}

// The hermitian form of the second Riemann bilinear relation,
// H = -i Pi^t Q conj(Pi), in the holomorphic coordinates of lambda.
template <typename T>
Mat<complex_of<T>> hermitian_form(const Mat<T>& q, const Mat<T>& lambda,
                                  double tol = kDefaultTol) {
  using C = complex_of<T>;
  auto pm = normalized_period<T>(lambda, tol);
  Mat<C> pi = period_pi<T>(pm, tol);
  Mat<C> qc = complexify<T>(q);
  return Mat<C>(-imaginary_unit<T>() *
                (pi.transpose() * qc * detail::conj_matrix<C>(pi)));
}

// Restriction of a coordinate hermitian form to a real subspace: columns of
// m span the subspace in lattice coordinates, coords = P_norm * m.
template <typename T>
Mat<complex_of<T>> restrict_hermitian(const Mat<complex_of<T>>& h,
                                      const PeriodMatrix<T>& pm,
                                      const Mat<T>& m) {
  using C = complex_of<T>;
  Mat<C> coords = pm.P_norm * complexify<T>(m);
  return Mat<C>(coords.transpose() * h * detail::conj_matrix<C>(coords));
}

enum class HdgMode { closed_form, generic_sampling };

template <typename T>
struct HdgSpace {
  std::vector<Mat<T>> basis;  // alternating 4n x 4n forms
  int dim = 0;
};

namespace detail {

// Linear system rows for skew-symmetric unknowns Q, indexed by pairs
// (u < v). A condition either reads X^t Q X = r Q or X^t Q Y + Y^t Q X = 0;
// both sides are alternating, so only entries (a < b) generate rows.
template <typename T>
class SkewSystem {
 public:
  explicit SkewSystem(Eigen::Index d) : d_(d) {
    for (Eigen::Index u = 0; u < d; ++u)
      for (Eigen::Index v = u + 1; v < d; ++v) pairs_.push_back({u, v});
  }

  Eigen::Index unknowns() const {
    return static_cast<Eigen::Index>(pairs_.size());
  }

  // coefficient of q_{uv} in (X^t Q Y)_{ab}
  static T coeff(const Mat<T>& x, const Mat<T>& y, Eigen::Index u,
                 Eigen::Index v, Eigen::Index a, Eigen::Index b) {
    return x(u, a) * y(v, b) - x(v, a) * y(u, b);
  }

  void add_square_condition(const Mat<T>& x, const T& r) {
    for (auto [a, b] : pairs_) {
      Vec<T> row = Vec<T>::Zero(unknowns());
      for (Eigen::Index m = 0; m < unknowns(); ++m) {
        auto [u, v] = pairs_[m];
        row(m) = coeff(x, x, u, v, a, b);
        if (u == a && v == b) row(m) -= r;
      }
      rows_.push_back(std::move(row));
    }
  }

  void add_mixed_condition(const Mat<T>& x, const Mat<T>& y) {
    for (auto [a, b] : pairs_) {
      Vec<T> row = Vec<T>::Zero(unknowns());
      for (Eigen::Index m = 0; m < unknowns(); ++m) {
        auto [u, v] = pairs_[m];
        row(m) = coeff(x, y, u, v, a, b) + coeff(y, x, u, v, a, b);
      }
      rows_.push_back(std::move(row));
    }
  }

  std::vector<Mat<T>> solve_basis(double tol) const {
    Mat<T> sys(static_cast<Eigen::Index>(rows_.size()), unknowns());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      sys.row(static_cast<Eigen::Index>(i)) = rows_[i].transpose();
    Mat<T> null = nullspace<T>(sys, tol);
    std::vector<Mat<T>> basis;
    for (Eigen::Index c = 0; c < null.cols(); ++c) {
      Mat<T> q = Mat<T>::Zero(d_, d_);
      for (Eigen::Index m = 0; m < unknowns(); ++m) {
        auto [u, v] = pairs_[m];
        q(u, v) = null(m, c);
        q(v, u) = -null(m, c);
      }
      basis.push_back(std::move(q));
    }
    return basis;
  }

 private:
  Eigen::Index d_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs_;
  std::vector<Vec<T>> rows_;
};

}  // namespace detail

template <typename T>
bool first_bilinear_holds(const Mat<T>& q, const Mat<T>& lambda,
                          double tol = kDefaultTol) {
  return detail::matrices_equal<T>(Mat<T>(lambda.transpose() * q * lambda), q,
                                   tol);
}

// Hdg_S = {alternating Q : lambda^t Q lambda = Q for every lambda on S}.
// Closed-form mode imposes the six generator conditions equivalent to
// invariance along the whole line; sampling mode imposes invariance at three
// sampled points and double-checks the result on a fourth.
template <typename T>
HdgSpace<T> hdg_space(const TwistorLine<T>& line,
                      HdgMode mode = HdgMode::closed_form,
                      double tol = kDefaultTol) {
  const Eigen::Index d = line.dim();
  detail::SkewSystem<T> sys(d);
  if (mode == HdgMode::closed_form) {
    Mat<T> k = line.K();
    sys.add_square_condition(line.I, T(1));
    sys.add_square_condition(line.B, -line.c);
    sys.add_square_condition(k, -line.c);
    sys.add_mixed_condition(line.I, line.B);
    sys.add_mixed_condition(line.I, k);
    sys.add_mixed_condition(line.B, k);
  } else {
    auto pts = sample_points<T>(line, 4, '+', tol);
    for (int i = 0; i < 3; ++i)
      sys.add_square_condition(pts[i].matrix, T(1));
    HdgSpace<T> probe;
    probe.basis = sys.solve_basis(tol);
    for (const auto& q : probe.basis)
      if (!first_bilinear_holds<T>(q, pts[3].matrix, tol))
        throw error("hdg_space: sampling mode hit a degenerate sample");
    probe.dim = static_cast<int>(probe.basis.size());
    return probe;
  }
  HdgSpace<T> out;
  out.basis = sys.solve_basis(tol);
  out.dim = static_cast<int>(out.basis.size());
  return out;
}

inline int hdg_dim_formula(int epsilon, int n, int k = 0) {
  if (n < 1) throw error("hdg_dim_formula: n must be positive");
  if (epsilon == -1 || epsilon == 1) return 2 * n * n + n;
  if (epsilon != 0) throw error("hdg_dim_formula: bad epsilon");
  if (k < 1 || k > n) throw bad_k("hdg_dim_formula: need 1 <= k <= n");
  return k * (k + 1) + (2 * n - k) * (2 * n - k);
}

template <typename T>
bool is_kahler_at(const Mat<T>& q, const Mat<T>& lambda,
                  double tol = kDefaultTol) {
  return hermitian_definiteness<complex_of<T>>(
             hermitian_form<T>(q, lambda, tol), tol) ==
         Definiteness::positive;
}

enum class KahlerStatus { cone, none };

template <typename T>
struct KahlerCertificate {
  KahlerStatus status = KahlerStatus::none;
  std::string reason;            // "antipodal" | "isotropic" for none
  std::optional<Mat<T>> witness;  // Q for a cone witness
  char component = '+';
  int samples_checked = 0;
  bool verified = false;
};

// Kahler-class verdict per line type. eps = 1: exhibit a positive witness on
// the requested sheet. eps = -1: the antipodal obstruction H(Q, -lambda) =
// -conj(H(Q, lambda)) kills definiteness along the (connected) sphere.
// eps = 0: every invariant form is isotropic on Im N, so no H is definite.
template <typename T>
KahlerCertificate<T> kahler_certificate(const TwistorLine<T>& line,
                                        char component = '+',
                                        int samples = 5,
                                        double tol = kDefaultTol) {
  const Eigen::Index d = line.dim();
  auto hdg = hdg_space<T>(line, HdgMode::closed_form, tol);
  auto pts = sample_points<T>(line, samples,
                              line.epsilon == -1 ? '+' : component, tol);
  KahlerCertificate<T> cert;
  cert.component = component;
  cert.samples_checked = samples;
  if (line.epsilon == 1) {
    std::vector<Mat<T>> candidates;
    Mat<T> q0 = Mat<T>::Zero(d, d);
    q0.topRightCorner(d / 2, d / 2) = Mat<T>::Identity(d / 2, d / 2);
    q0.bottomLeftCorner(d / 2, d / 2) = -Mat<T>::Identity(d / 2, d / 2);
    T s = component == '-' ? T(-1) : T(1);
    candidates.push_back(Mat<T>(s * q0));
    for (const auto& q : hdg.basis) {
      candidates.push_back(q);
      candidates.push_back(Mat<T>(-q));
    }
    for (const auto& q : candidates) {
      bool good = true;
      for (const auto& p : pts)
        if (!first_bilinear_holds<T>(q, p.matrix, tol) ||
            !is_kahler_at<T>(q, p.matrix, tol)) {
          good = false;
          break;
        }
      if (good) {
        cert.status = KahlerStatus::cone;
        cert.witness = q;
        cert.verified = true;
        return cert;
      }
    }
    cert.status = KahlerStatus::cone;
    cert.verified = false;
    return cert;
  }
  if (line.epsilon == -1) {
    cert.status = KahlerStatus::none;
    cert.reason = "antipodal";
    bool ok = true;
    for (const auto& q : hdg.basis)
      for (const auto& p : pts) {
        auto h = hermitian_form<T>(q, p.matrix, tol);
        auto h_anti = hermitian_form<T>(q, Mat<T>(-p.matrix), tol);
        if (!detail::matrices_equal<complex_of<T>>(
                h_anti, Mat<complex_of<T>>(-detail::conj_matrix(h)), tol))
          ok = false;
        if (is_kahler_at<T>(q, p.matrix, tol) &&
            is_kahler_at<T>(q, Mat<T>(-p.matrix), tol))
          ok = false;
      }
    cert.verified = ok;
    return cert;
  }
  // eps = 0: isotropy of Im N.
  cert.status = KahlerStatus::none;
  cert.reason = "isotropic";
  Mat<T> im_n = column_space_basis<T>(line.B, tol);
  bool ok = im_n.cols() > 0;
  for (const auto& q : hdg.basis) {
    if (!detail::is_zero_matrix<T>(Mat<T>(im_n.transpose() * q * im_n), tol))
      ok = false;
    for (const auto& p : pts) {
      auto pm = normalized_period<T>(p.matrix, tol);
      Mat<complex_of<T>> pi = period_pi<T>(pm, tol);
      Mat<complex_of<T>> h =
          -imaginary_unit<T>() * (pi.transpose() * complexify<T>(q) *
                                  detail::conj_matrix<complex_of<T>>(pi));
      auto restricted = restrict_hermitian<T>(h, pm, im_n);
      if (!detail::matrices_equal<complex_of<T>>(
              restricted,
              Mat<complex_of<T>>(Mat<complex_of<T>>::Zero(
                  restricted.rows(), restricted.cols())),
              tol))
        ok = false;
    }
  }
  cert.verified = ok;
  return cert;
}

}  // namespace twistor

#endif  // TWISTOR_PERIOD_HPP
