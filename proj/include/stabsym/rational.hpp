#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace stabsym {

using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign on p). Throws ParseError on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form with q >= 1, e.g. "0/1", "-3/1", "1/2".
std::string format_rational(const Rational& q);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Exact complex number with rational real and imaginary parts.
class RationalComplex {
 public:
  RationalComplex() = default;
  RationalComplex(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  RationalComplex(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  RationalComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static RationalComplex i() { return {Rational(0), Rational(1)}; }
  static RationalComplex from_complex(std::complex<double> z);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  RationalComplex conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::complex<long double> to_complex_ld() const;

  RationalComplex& operator+=(const RationalComplex& o);
  RationalComplex& operator-=(const RationalComplex& o);
  RationalComplex& operator*=(const RationalComplex& o);
  /// Throws PreconditionError on division by zero.
  RationalComplex& operator/=(const RationalComplex& o);

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
  RationalComplex operator-() const { return {-re_, -im_}; }

  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

  /// "re + im i" with both parts in p/q form; for diagnostics.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

}  // namespace stabsym
