// Scalar substrate: exact rationals (boost-backed) and floating point,
// plus the complex types and Eigen glue shared by all modules.
#ifndef TWISTOR_SCALARS_HPP
#define TWISTOR_SCALARS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace twistor {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct domain_mismatch : error {
  using error::error;
};
struct not_hermitian : error {
  using error::error;
};
struct not_complex_structure : error {
  using error::error;
};
struct not_cospherical : error {
  using error::error;
};
struct proportional_inputs : error {
  using error::error;
};
struct invalid_rep : error {
  using error::error;
};
struct bad_k : error {
  using error::error;
};
struct off_quadric : error {
  using error::error;
};
struct off_circle : error {
  using error::error;
};
struct connected_line : error {
  using error::error;
};
struct singular_matrix : error {
  using error::error;
};
struct degenerate_imaginary_part : error {
  using error::error;
};
struct zero_parameter : error {
  using error::error;
};
struct base_not_in_lr : error {
  using error::error;
};
struct wrong_epsilon : error {
  using error::error;
};
struct not_converged : error {
  explicit not_converged(const std::string& msg, double residual = 0.0)
      : error(msg), residual(residual) {}
  double residual;
};
struct step_too_large : error {
  using error::error;
};
struct parse_error : error {
  using error::error;
};

// Arbitrary-precision rational. Thin value wrapper over
// boost::multiprecision::cpp_rational; the wrapper exists to keep implicit
// conversions under control so Eigen expression templates resolve cleanly.
class Rat {
 public:
  using backend = boost::multiprecision::cpp_rational;

  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}  // NOLINT: implicit by design, mirrors int -> double
  Rat(long long n) : v_(n) {}
  Rat(int num, int den) : v_(backend(num) / backend(den)) {
    if (den == 0) throw error("Rat: zero denominator");
  }
  explicit Rat(backend v) : v_(std::move(v)) {}

  static Rat from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos)
        return Rat(backend(boost::multiprecision::cpp_int(s)));
      boost::multiprecision::cpp_int num(s.substr(0, slash));
      boost::multiprecision::cpp_int den(s.substr(slash + 1));
      if (den == 0) throw error("Rat: zero denominator");
      return Rat(backend(num) / backend(den));
    } catch (const std::exception&) {
      throw parse_error("bad rational literal: " + s);
    }
  }

  const backend& raw() const { return v_; }

  Rat operator-() const { return Rat(backend(-v_)); }
  Rat& operator+=(const Rat& o) {
    v_ += o.v_;
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    v_ -= o.v_;
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    v_ *= o.v_;
    return *this;
  }
  Rat& operator/=(const Rat& o) {
    if (o.v_ == 0) throw error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  int sign() const { return v_.sign(); }
  bool is_zero() const { return v_ == 0; }

  double to_double() const { return v_.template convert_to<double>(); }

  std::string str() const {
    std::ostringstream os;
    os << boost::multiprecision::numerator(v_);
    if (boost::multiprecision::denominator(v_) != 1)
      os << '/' << boost::multiprecision::denominator(v_);
    return os.str();
  }

  // Exact square root, if the value is a perfect square of a rational.
  // Returns (true, r) with r >= 0 and r*r == *this, else (false, 0).
  std::pair<bool, Rat> exact_sqrt() const {
    using boost::multiprecision::cpp_int;
    if (v_ < 0) return {false, Rat(0)};
    cpp_int num = numerator(v_), den = denominator(v_);
    cpp_int rn = boost::multiprecision::sqrt(num);
    cpp_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return {false, Rat(0)};
    return {true, Rat(backend(rn) / backend(rd))};
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  backend v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) {
  return os << r.str();
}

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline Rat conj(const Rat& r) { return r; }
inline Rat real(const Rat& r) { return r; }
inline Rat imag(const Rat&) { return Rat(0); }

// Complex number over Rat. Exact throughout; division is exact via the
// conjugate, |.|^2 stays rational.
class CRat {
 public:
  CRat() = default;
  CRat(Rat re) : re_(std::move(re)) {}  // NOLINT: implicit like complex<double>
  CRat(int re) : re_(re) {}             // NOLINT
  CRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rat& real() const { return re_; }
  const Rat& imag() const { return im_; }

  static CRat i() { return CRat(Rat(0), Rat(1)); }

  CRat operator-() const { return CRat(-re_, -im_); }
  CRat& operator+=(const CRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  CRat& operator*=(const CRat& o) {
    Rat r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  CRat& operator/=(const CRat& o) {
    Rat n = o.re_ * o.re_ + o.im_ * o.im_;
    if (n.is_zero()) throw error("CRat: division by zero");
    Rat r = (re_ * o.re_ + im_ * o.im_) / n;
    im_ = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    return *this;
  }

  friend CRat operator+(CRat a, const CRat& b) { return a += b; }
  friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
  friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
  friend CRat operator/(CRat a, const CRat& b) { return a /= b; }
  friend bool operator==(const CRat& a, const CRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  std::complex<double> to_complex_double() const {
    return {re_.to_double(), im_.to_double()};
  }

 private:
  Rat re_{0}, im_{0};
};

inline CRat conj(const CRat& z) { return CRat(z.real(), -z.imag()); }
inline Rat real(const CRat& z) { return z.real(); }
inline Rat imag(const CRat& z) { return z.imag(); }
inline Rat abs2(const CRat& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}
inline Rat abs2(const Rat& r) { return r * r; }
inline double abs2(double x) { return x * x; }
inline double abs2(const std::complex<double>& z) { return std::norm(z); }

inline std::ostream& operator<<(std::ostream& os, const CRat& z) {
  return os << '(' << z.real() << ',' << z.imag() << ')';
}

// Domain traits. Exact scalars use zero tolerance everywhere; float scalars
// compare through an explicit tolerance, relative to the given scale.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool is_exact = true;
  using real_type = Rat;
  using complex_type = CRat;
  static bool is_zero(const Rat& x, const Rat& /*scale*/, double /*tol*/) {
    return x.is_zero();
  }
};

template <>
struct scalar_traits<CRat> {
  static constexpr bool is_exact = true;
  using real_type = Rat;
  using complex_type = CRat;
  static bool is_zero(const CRat& x, const Rat& /*scale*/, double /*tol*/) {
    return x.is_zero();
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  using real_type = double;
  using complex_type = std::complex<double>;
  static bool is_zero(double x, double scale, double tol) {
    return std::abs(x) <= tol * std::max(1.0, scale);
  }
};

template <>
struct scalar_traits<std::complex<double>> {
  static constexpr bool is_exact = false;
  using real_type = double;
  using complex_type = std::complex<double>;
  static bool is_zero(const std::complex<double>& x, double scale, double tol) {
    return std::abs(x) <= tol * std::max(1.0, scale);
  }
};

template <typename T>
using real_of = typename scalar_traits<T>::real_type;
template <typename T>
using complex_of = typename scalar_traits<T>::complex_type;

// Default comparison tolerance for the float domain.
inline constexpr double kDefaultTol = 1e-9;

inline double to_double(const Rat& r) { return r.to_double(); }
inline double to_double(double x) { return x; }

template <typename T>
complex_of<T> imaginary_unit() {
  if constexpr (scalar_traits<T>::is_exact)
    return CRat::i();
  else
    return std::complex<double>(0.0, 1.0);
}

}  // namespace twistor

#endif  // TWISTOR_SCALARS_HPP
