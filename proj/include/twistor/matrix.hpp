// Eigen glue for the exact scalar types, plus the dense aliases used
// throughout. All matrices are dynamic-size and dense; problems are at most
// 16n^2 x 16n^2 for n <= 4.
#ifndef TWISTOR_MATRIX_HPP
#define TWISTOR_MATRIX_HPP

#include <Eigen/Dense>

#include "twistor/scalars.hpp"

namespace Eigen {

template <>
struct NumTraits<twistor::Rat> : GenericNumTraits<twistor::Rat> {
  using Real = twistor::Rat;
  using NonInteger = twistor::Rat;
  using Literal = twistor::Rat;
  using Nested = twistor::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static Real epsilon() { return twistor::Rat(0); }
  static Real dummy_precision() { return twistor::Rat(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<twistor::CRat> : GenericNumTraits<twistor::CRat> {
  using Real = twistor::Rat;
  using NonInteger = twistor::CRat;
  using Literal = twistor::CRat;
  using Nested = twistor::CRat;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 120,
    MulCost = 240,
  };
  static Real epsilon() { return twistor::Rat(0); }
  static Real dummy_precision() { return twistor::Rat(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace twistor {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using RatMat = Mat<Rat>;
using CRatMat = Mat<CRat>;
using RealMat = Mat<double>;
using CplxMat = Mat<std::complex<double>>;

// Real 4n x 4n matrix type per scalar domain, and its complexification.
template <typename T>
using RMat = Mat<T>;
template <typename T>
using CMat = Mat<complex_of<T>>;

template <typename T>
Mat<complex_of<T>> complexify(const Mat<T>& m) {
  if constexpr (scalar_traits<T>::is_exact) {
    Mat<CRat> out(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = CRat(m(i, j));
    return out;
  } else {
    return m.template cast<std::complex<double>>();
  }
}

template <typename C>
Mat<real_of<C>> real_part(const Mat<C>& m) {
  Mat<real_of<C>> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = real(m(i, j));
  return out;
}

template <typename C>
Mat<real_of<C>> imag_part(const Mat<C>& m) {
  Mat<real_of<C>> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = imag(m(i, j));
  return out;
}

inline RealMat to_double_matrix(const RatMat& m) {
  RealMat out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = m(i, j).to_double();
  return out;
}

inline CplxMat to_complex_matrix(const CRatMat& m) {
  CplxMat out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = m(i, j).to_complex_double();
  return out;
}

}  // namespace twistor

#endif  // TWISTOR_MATRIX_HPP
