#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgk/error.hpp"

namespace sgk {

using Rational = mpq_class;

/// Exact element of Q(i): re + im*i with canonical GMP rationals.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const Rational& re, const Rational& im = 0) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar imag_unit() { return Scalar(Rational(0), Rational(1)); }
  static Scalar ratio(long num, long den);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar inverse() const;
  Scalar pow(long e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  /// Total order (re first, then im); used only for canonical containers.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// Canonical text: "a/b", "c/d*i", "a/b+c/d*i" or "a/b-c/d*i".
  std::string to_string() const;
  /// Accepts the canonical forms plus "i", "-i", "a+i", "a-i" and surrounding spaces.
  static Scalar parse(std::string_view text);

 private:
  Rational re_ = 0;
  Rational im_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

enum class ArithOp { Add, Sub, Mul, Div };
Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op);

/// First-order jet value + deriv*eps with eps^2 = 0.
class Jet1 {
 public:
  Jet1() = default;
  explicit Jet1(const Scalar& value, const Scalar& deriv = Scalar()) : value_(value), deriv_(deriv) {}

  const Scalar& value() const { return value_; }
  const Scalar& deriv() const { return deriv_; }
  bool is_zero() const { return value_.is_zero() && deriv_.is_zero(); }

  Jet1 inverse() const;

  Jet1& operator+=(const Jet1& o);
  Jet1& operator-=(const Jet1& o);
  Jet1& operator*=(const Jet1& o);
  Jet1& operator/=(const Jet1& o) { return *this *= o.inverse(); }
  friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
  friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
  friend Jet1 operator*(Jet1 a, const Jet1& b) { return a *= b; }
  friend Jet1 operator/(Jet1 a, const Jet1& b) { return a /= b; }
  Jet1 operator-() const { return Jet1(-value_, -deriv_); }
  friend bool operator==(const Jet1& a, const Jet1& b) { return a.value_ == b.value_ && a.deriv_ == b.deriv_; }
  friend bool operator!=(const Jet1& a, const Jet1& b) { return !(a == b); }

 private:
  Scalar value_;
  Scalar deriv_;
};

/// Whether an element can be used as a pivot/divisor.
inline bool invertible(const Scalar& s) { return !s.is_zero(); }
inline bool invertible(const Jet1& j) { return !j.value().is_zero(); }

/// Sign of a permutation of {1..r} given in one-line notation.
int permutation_sign(std::span<const int> perm);
/// Sign of the shuffle sending (left..., right...) to (1..r). Both parts must be
/// increasing and partition {1..r}.
int shuffle_sign(std::span<const int> left, std::span<const int> right);
/// (-1)^(number of inversions) for an arbitrary sequence of distinct values.
int inversion_sign(std::span<const int> seq);

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace sgk
