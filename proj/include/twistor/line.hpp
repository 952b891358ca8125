// Generalized twistor lines: the loci of complex structures inside
// span<I, B, K> for a representation of H(eps). Coordinates (x, y, z) refer
// to x I + y B + z K; the membership quadric is x^2 - c (y^2 + z^2) = 1,
// where c = B^2 as a scalar. For a normalized generator c equals eps and the
// quadric is the literal sphere / two-sheeted hyperboloid / pair of planes.
#ifndef TWISTOR_LINE_HPP
#define TWISTOR_LINE_HPP

#include <array>
#include <optional>
#include <vector>

#include "twistor/rep.hpp"

namespace twistor {

enum class LineType { sphere, hyperboloid, planes };

inline const char* to_string(LineType t) {
  switch (t) {
    case LineType::sphere:
      return "sphere";
    case LineType::hyperboloid:
      return "hyperboloid";
    case LineType::planes:
      return "planes";
  }
  return "?";
}

template <typename T>
struct TwistorLine {
  int epsilon = -1;
  Eigen::Index n = 1;
  T c = T(-1);  // B^2 = c Id; sign(c) = epsilon
  Mat<T> I;
  Mat<T> B;

  Eigen::Index dim() const { return 4 * n; }
  Mat<T> K() const { return I * B; }
  LineType type() const {
    return epsilon == -1 ? LineType::sphere
                         : (epsilon == 1 ? LineType::hyperboloid
                                         : LineType::planes);
  }
};

template <typename T>
struct LinePoint {
  T x, y, z;
  Mat<T> matrix;  // x I + y B + z K, squares to -Id
};

template <typename T>
TwistorLine<T> line_from_rep(const AlgebraRep<T>& rep,
                             double tol = kDefaultTol) {
  if (!verify_rep<T>(rep, tol).ok())
    throw invalid_rep("line_from_rep: algebra relations fail");
  TwistorLine<T> line;
  line.epsilon = rep.epsilon;
  line.n = rep.n;
  line.c = T(rep.epsilon);
  line.I = rep.I;
  line.B = rep.B;
  return line;
}

template <typename T>
T quadric_value(const TwistorLine<T>& line, const T& x, const T& y,
                const T& z) {
  return x * x - line.c * (y * y + z * z);
}

template <typename T>
LinePoint<T> point(const TwistorLine<T>& line, const T& x, const T& y,
                   const T& z, double tol = kDefaultTol) {
  T q = quadric_value<T>(line, x, y, z);
  if (!scalar_traits<T>::is_zero(q - T(1), real_of<T>(1), tol))
    throw off_quadric("point: coordinates violate the line quadric");
  LinePoint<T> p{x, y, z, Mat<T>(x * line.I + y * line.B + z * line.K())};
  return p;
}

// Coordinates of lambda in span<I, B, K> when lambda lies on the line.
template <typename T>
std::optional<std::array<T, 3>> contains(const TwistorLine<T>& line,
                                         const Mat<T>& lambda,
                                         double tol = kDefaultTol) {
  if (!is_complex_structure<T>(lambda, tol))
    throw not_complex_structure("contains: lambda^2 != -Id");
  const Eigen::Index d = line.dim();
  Mat<T> sys(d * d, 3);
  sys.col(0) = vectorize<T>(line.I);
  sys.col(1) = vectorize<T>(line.B);
  sys.col(2) = vectorize<T>(Mat<T>(line.K()));
  auto sol = solve<T>(sys, vectorize<T>(lambda), tol);
  if (!sol) return std::nullopt;
  T x = (*sol)(0), y = (*sol)(1), z = (*sol)(2);
  if (!scalar_traits<T>::is_zero(quadric_value<T>(line, x, y, z) - T(1),
                                 real_of<T>(1), tol))
    return std::nullopt;
  return std::array<T, 3>{x, y, z};
}

// '+' or '-' per the sign of the I-coefficient; only the hyperboloid and the
// plane pair have two components.
template <typename T>
char component_of(const TwistorLine<T>& line, const LinePoint<T>& p) {
  if (line.epsilon == -1)
    throw connected_line("component_of: the sphere line is connected");
  bool positive;
  if constexpr (scalar_traits<T>::is_exact)
    positive = p.x.sign() > 0;
  else
    positive = p.x > 0;
  return positive ? '+' : '-';
}

// The unique line through two independent cospherical complex structures,
// assembled from the pair classification. The raw generator B_raw squares to
// c Id; when |c| is an exact rational square (or in the float domain) the
// generator is rescaled so that c becomes the sign of c.
template <typename T>
TwistorLine<T> line_through(const Mat<T>& lambda1, const Mat<T>& lambda2,
                            double tol = kDefaultTol) {
  auto pc = classify_pair<T>(lambda1, lambda2, tol);
  TwistorLine<T> line;
  line.epsilon = pc.epsilon;
  line.n = lambda1.rows() / 4;
  line.I = pc.I;
  line.B = pc.B_raw;
  line.c = pc.c;
  if (pc.epsilon != 0) {
    if constexpr (scalar_traits<T>::is_exact) {
      auto [ok, root] = abs(pc.c).exact_sqrt();
      if (ok) {
        line.B = Mat<T>(line.B / root);
        line.c = T(pc.epsilon);
      }
    } else {
      double root = std::sqrt(std::abs(pc.c));
      line.B = Mat<T>(line.B / root);
      line.c = T(pc.epsilon);
    }
  }
  return line;
}

template <typename T>
bool equal_lines(const TwistorLine<T>& s1, const TwistorLine<T>& s2,
                 double tol = kDefaultTol) {
  if (s1.epsilon != s2.epsilon || s1.dim() != s2.dim()) return false;
  const Eigen::Index d = s1.dim();
  Mat<T> a(d * d, 3), b(d * d, 3);
  a.col(0) = vectorize<T>(s1.I);
  a.col(1) = vectorize<T>(s1.B);
  a.col(2) = vectorize<T>(Mat<T>(s1.K()));
  b.col(0) = vectorize<T>(s2.I);
  b.col(1) = vectorize<T>(s2.B);
  b.col(2) = vectorize<T>(Mat<T>(s2.K()));
  return spans_equal<T>(a, b, tol);
}

// Deterministic rational sampling through the degree-2 parametrization
// x = s(1 + cq)/(1 - cq), y = 2su/(1 - cq), z = 2sv/(1 - cq), q = u^2 + v^2,
// which satisfies the quadric identically for every c. The parameters stay
// inside q < 1 so the hyperboloid samples keep to one sheet; s = -1 selects
// the other component.
template <typename T>
std::vector<LinePoint<T>> sample_points(const TwistorLine<T>& line, int count,
                                        char component = '+',
                                        double tol = kDefaultTol) {
  if (count < 1) throw error("sample_points: count must be >= 1");
  T s = component == '-' ? T(-1) : T(1);
  std::vector<LinePoint<T>> pts;
  pts.reserve(count);
  for (int m = 0; m < count; ++m) {
    T u, v;
    if constexpr (scalar_traits<T>::is_exact) {
      u = Rat(1, m + 2);
      v = Rat(1, m + 3);
    } else {
      u = 1.0 / (m + 2);
      v = 1.0 / (m + 3);
    }
    T q = u * u + v * v;
    T den = T(1) - line.c * q;
    T x = s * (T(1) + line.c * q) / den;
    T y = s * T(2) * u / den;
    T z = s * T(2) * v / den;
    pts.push_back(point<T>(line, x, y, z, tol));
  }
  return pts;
}

}  // namespace twistor

#endif  // TWISTOR_LINE_HPP
