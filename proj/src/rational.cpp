#include "stabsym/rational.hpp"

#include <cctype>
#include <cmath>

#include "stabsym/error.hpp"

namespace stabsym {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);

  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("cannot convert non-finite double to a rational");
  Rational r(x);  // mpq_set_d is exact
  return r;
}

RationalComplex RationalComplex::from_complex(std::complex<double> z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

std::complex<long double> RationalComplex::to_complex_ld() const {
  // Two-step conversion keeps ~64 bits: the double part plus the residual.
  auto to_ld = [](const Rational& q) {
    const double hi = q.get_d();
    Rational rest = q - Rational(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
  };
  return {to_ld(re_), to_ld(im_)};
}

RationalComplex& RationalComplex::operator+=(const RationalComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

RationalComplex& RationalComplex::operator-=(const RationalComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

RationalComplex& RationalComplex::operator*=(const RationalComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

RationalComplex& RationalComplex::operator/=(const RationalComplex& o) {
  if (o.is_zero()) throw PreconditionError("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const Rational d = o.norm();
  Rational re = (re_ * o.re_ + im_ * o.im_) / d;
  Rational im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string RationalComplex::to_string() const {
  return format_rational(re_) + " + " + format_rational(im_) + "i";
}

}  // namespace stabsym
