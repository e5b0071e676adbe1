#pragma once

// Exact elements (p + q*sqrt(D))/r of a real quadratic field.

#include "geozeta/bigint.hpp"

#include <cmath>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace geozeta {

class QuadExact {
 public:
  /// Value (p + q*sqrt(radicand))/r. The radicand must be a positive nonsquare.
  QuadExact(BigInt p, BigInt q, BigInt r, BigInt radicand)
      : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(radicand)) {
    if (d_ <= 0 || is_square(d_))
      throw std::invalid_argument("QuadExact radicand must be a positive nonsquare, got " +
                                  d_.str());
    if (r_ == 0) throw std::domain_error("QuadExact with zero denominator");
    normalize();
  }

  /// The rational integer n inside Q(sqrt(radicand)).
  static QuadExact integer(const BigInt& n, const BigInt& radicand) {
    return QuadExact(n, 0, 1, radicand);
  }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& r() const { return r_; }
  const BigInt& radicand() const { return d_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  QuadExact conj() const { return unchecked(p_, -q_, r_, d_); }

  BigRational norm() const { return BigRational(p_ * p_ - q_ * q_ * d_, r_ * r_); }
  BigRational trace() const { return BigRational(2 * p_, r_); }

  QuadExact operator-() const { return unchecked(-p_, -q_, r_, d_); }

  friend QuadExact operator+(const QuadExact& a, const QuadExact& b) {
    a.require_same_field(b);
    return unchecked(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, a.r_ * b.r_, a.d_);
  }

  friend QuadExact operator-(const QuadExact& a, const QuadExact& b) { return a + (-b); }

  friend QuadExact operator*(const QuadExact& a, const QuadExact& b) {
    a.require_same_field(b);
    return unchecked(a.p_ * b.p_ + a.q_ * b.q_ * a.d_, a.p_ * b.q_ + a.q_ * b.p_, a.r_ * b.r_,
                     a.d_);
  }

  QuadExact inv() const {
    if (is_zero()) throw std::domain_error("QuadExact: inverse of zero");
    // 1/((p+q√D)/r) = r(p-q√D)/(p²-q²D); the denominator is nonzero since D is nonsquare.
    return unchecked(p_ * r_, -q_ * r_, p_ * p_ - q_ * q_ * d_, d_);
  }

  friend QuadExact operator/(const QuadExact& a, const QuadExact& b) {
    a.require_same_field(b);
    return a * b.inv();
  }

  /// Exact sign, decided by integer comparisons only.
  int sign() const {
    const int sp = p_.sign();
    const int sq = q_.sign();
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    return (p_ * p_ > q_ * q_ * d_) ? sp : sq;
  }

  friend bool operator==(const QuadExact& a, const QuadExact& b) {
    return a.d_ == b.d_ && a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_;
  }

  friend std::strong_ordering operator<=>(const QuadExact& a, const QuadExact& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Largest integer <= value.
  BigInt floor() const {
    if (q_ == 0) return floor_div(p_, r_);
    // q√D is irrational, so floor(p + q√D) = p + floor(q√D) and no multiple of r hits it.
    const BigInt s = isqrt(q_ * q_ * d_);
    const BigInt floor_num = q_ > 0 ? BigInt(p_ + s) : BigInt(p_ - s - 1);
    return floor_div(floor_num, r_);
  }

  /// Smallest integer >= value.
  BigInt ceil() const {
    if (q_ == 0) return ceil_div(p_, r_);
    return floor() + 1;
  }

  double to_double() const {
    const double sd = std::sqrt(geozeta::to_double(d_));
    if (p_.sign() * q_.sign() < 0) {
      // Cancellation: use (p² - q²D) / (r (p - q√D)).
      const double num = geozeta::to_double(BigInt(p_ * p_ - q_ * q_ * d_));
      const double den = geozeta::to_double(r_) *
                         (geozeta::to_double(p_) - geozeta::to_double(q_) * sd);
      return num / den;
    }
    return (geozeta::to_double(p_) + geozeta::to_double(q_) * sd) / geozeta::to_double(r_);
  }

  /// Rendered as "(p+q*sqrt(D))/r".
  std::string str() const { return render(p_, q_, r_, d_); }

  friend std::ostream& operator<<(std::ostream& os, const QuadExact& x) { return os << x.str(); }

  /// Same value with the square part of the radicand pulled out, e.g. sqrt(60) -> 2*sqrt(15).
  QuadExact with_squarefree_radicand() const {
    BigInt k = 1;
    BigInt core = d_;
    for (BigInt f = 2; f * f <= core; ++f) {
      while (core % (f * f) == 0) {
        core /= f * f;
        k *= f;
      }
    }
    return QuadExact(p_, q_ * k, r_, core);
  }

  /// Rendering with a prescribed denominator; returns nullopt-like empty string if r does not
  /// divide it.
  std::string str_over(const BigInt& denominator) const {
    if (denominator <= 0 || denominator % r_ != 0) return {};
    const BigInt k = denominator / r_;
    return render(p_ * k, q_ * k, denominator, d_);
  }

 private:
  struct NoCheck {};
  QuadExact(NoCheck, BigInt p, BigInt q, BigInt r, BigInt d)
      : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {
    normalize();
  }

  static QuadExact unchecked(BigInt p, BigInt q, BigInt r, BigInt d) {
    return QuadExact(NoCheck{}, std::move(p), std::move(q), std::move(r), std::move(d));
  }

  static std::string render(const BigInt& p, const BigInt& q, const BigInt& r, const BigInt& d) {
    std::string out = "(" + p.str();
    out += (q < 0 ? "-" : "+");
    out += abs(q).str() + "*sqrt(" + d.str() + "))/" + r.str();
    return out;
  }

  void require_same_field(const QuadExact& other) const {
    if (d_ != other.d_)
      throw std::invalid_argument("QuadExact: mixed radicands " + d_.str() + " and " +
                                  other.d_.str());
  }

  void normalize() {
    if (r_ < 0) {
      p_ = -p_;
      q_ = -q_;
      r_ = -r_;
    }
    const BigInt g = gcd(p_, q_, r_);
    if (g > 1) {
      p_ /= g;
      q_ /= g;
      r_ /= g;
    }
  }

  BigInt p_, q_, r_, d_;
};

}  // namespace geozeta
