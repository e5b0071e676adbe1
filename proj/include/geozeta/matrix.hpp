#pragma once

#include "geozeta/bigint.hpp"

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

namespace geozeta {

/// 2x2 matrix ((a, b), (c, d)).
template <class T>
struct Mat2 {
  T a{}, b{}, c{}, d{};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }

  /// Adjugate; equals the inverse when det = 1.
  Mat2 adjugate() const { return {d, -b, -c, a}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }

  friend Mat2 operator*(const T& k, const Mat2& x) { return {k * x.a, k * x.b, k * x.c, k * x.d}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

using IntMatrix = Mat2<BigInt>;
using RealMatrix = Mat2<double>;

inline RealMatrix to_real(const IntMatrix& m) {
  return {to_double(m.a), to_double(m.b), to_double(m.c), to_double(m.d)};
}

/// Element of SL(2,Z); compared as an element of PSL(2,Z).
class UnimodularMatrix {
 public:
  UnimodularMatrix() : m_(IntMatrix::identity()) {}

  UnimodularMatrix(BigInt a, BigInt b, BigInt c, BigInt d)
      : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    if (m_.det() != 1)
      throw std::invalid_argument("matrix is not unimodular: det = " + m_.det().str());
  }

  explicit UnimodularMatrix(const IntMatrix& m) : UnimodularMatrix(m.a, m.b, m.c, m.d) {}

  static UnimodularMatrix identity() { return {}; }
  static UnimodularMatrix translation(const BigInt& n) { return {1, n, 0, 1}; }
  static UnimodularMatrix inversion() { return {0, -1, 1, 0}; }
  /// The cycle step ((m, -1), (1, 0)).
  static UnimodularMatrix step(const BigInt& m) { return {m, -1, 1, 0}; }

  const BigInt& a() const { return m_.a; }
  const BigInt& b() const { return m_.b; }
  const BigInt& c() const { return m_.c; }
  const BigInt& d() const { return m_.d; }
  const IntMatrix& matrix() const { return m_; }

  UnimodularMatrix inverse() const { return UnimodularMatrix(Trusted{}, m_.adjugate()); }

  /// Representative with c > 0, or c = 0 and d > 0.
  UnimodularMatrix normalized() const {
    if (m_.c < 0 || (m_.c == 0 && m_.d < 0)) return UnimodularMatrix(Trusted{}, BigInt(-1) * m_);
    return *this;
  }

  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    return UnimodularMatrix(Trusted{}, x.m_ * y.m_);
  }

  /// Equality in PSL(2,Z).
  friend bool operator==(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    return x.normalized().m_ == y.normalized().m_;
  }

  bool equals_exactly(const UnimodularMatrix& other) const { return m_ == other.m_; }

  std::string str() const {
    return "((" + m_.a.str() + "," + m_.b.str() + "),(" + m_.c.str() + "," + m_.d.str() + "))";
  }
  friend std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& g) { return os << g.str(); }

 private:
  struct Trusted {};
  UnimodularMatrix(Trusted, IntMatrix m) : m_(std::move(m)) {}

  IntMatrix m_;
};

namespace detail {

inline std::complex<double> apply_mobius(const RealMatrix& g, std::complex<double> z) {
  const std::complex<double> den = g.c * z + g.d;
  if (den == 0.0) throw std::domain_error("mobius: pole at cz+d = 0");
  return (g.a * z + g.b) / den;
}

}  // namespace detail

/// Mobius action (az+b)/(cz+d) of a real matrix with positive determinant.
inline std::complex<double> mobius(const RealMatrix& g, std::complex<double> z) {
  if (!(g.det() > 0.0)) throw std::invalid_argument("mobius: determinant must be positive");
  return detail::apply_mobius(g, z);
}

/// The determinant is exactly 1 here; a floating-point recheck would cancel for large entries.
inline std::complex<double> mobius(const UnimodularMatrix& g, std::complex<double> z) {
  return detail::apply_mobius(to_real(g.matrix()), z);
}

}  // namespace geozeta
