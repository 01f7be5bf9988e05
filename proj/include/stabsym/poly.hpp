#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stabsym/group.hpp"
#include "stabsym/rational.hpp"

namespace stabsym {

/// Multiaffine polynomial with exact coefficients: sum over subsets S of
/// c_S * prod_{i in S} z_i. Zero coefficients are never stored.
///
/// A polynomial may carry a stability certificate: a short description of
/// why it is known to be nonvanishing on the open upper half-plane. Tags are
/// attached only where stability follows by construction (product_linear,
/// symmetrize under an orbit homogeneous group) and are carried through the
/// specialization maps that preserve stability.
class MultiAffine {
 public:
  using Terms = std::map<Subset, RationalComplex>;

  MultiAffine() = default;
  explicit MultiAffine(int nvars);

  static MultiAffine constant(int nvars, const RationalComplex& c);
  static MultiAffine monomial(int nvars, Subset s, const RationalComplex& c = RationalComplex(1));
  /// z_{index+1} (0-based index).
  static MultiAffine variable(int nvars, int index);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  RationalComplex coefficient(Subset s) const;
  bool is_zero() const { return terms_.empty(); }
  bool has_real_coefficients() const;
  /// Union of all monomial supports: the variables that actually occur.
  Subset support() const;

  void add_term(Subset s, const RationalComplex& c);

  MultiAffine& operator+=(const MultiAffine& o);
  MultiAffine& operator-=(const MultiAffine& o);
  MultiAffine& operator*=(const RationalComplex& c);
  friend MultiAffine operator+(MultiAffine a, const MultiAffine& b) { return a += b; }
  friend MultiAffine operator-(MultiAffine a, const MultiAffine& b) { return a -= b; }
  friend MultiAffine operator*(MultiAffine a, const RationalComplex& c) { return a *= c; }
  /// Product of polynomials; throws PreconditionError if a variable would
  /// occur squared.
  friend MultiAffine operator*(const MultiAffine& a, const MultiAffine& b);

  /// Coefficient maps and variable counts agree (certificates are ignored).
  friend bool operator==(const MultiAffine& a, const MultiAffine& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;
  std::complex<long double> evaluate_ld(std::span<const std::complex<double>> point) const;
  RationalComplex evaluate(std::span<const RationalComplex> point) const;

  const std::optional<std::string>& certificate() const { return certificate_; }
  bool certified_stable() const { return certificate_.has_value(); }
  MultiAffine& with_certificate(std::string why) {
    certificate_ = std::move(why);
    return *this;
  }
  void clear_certificate() { certificate_.reset(); }

  /// Human-readable form such as "1/2*z1*z2 + (0/1+1/1i)*z3".
  std::string to_string() const;

 private:
  int nvars_ = 0;
  Terms terms_;
  std::optional<std::string> certificate_;
};

/// Univariate polynomial, coefficient index = power, trailing zeros trimmed.
/// Exact coefficients are kept alongside whenever the polynomial came from
/// exact algebra.
class Univariate {
 public:
  Univariate() = default;
  static Univariate from_exact(std::vector<RationalComplex> coeffs);
  static Univariate from_complex(std::vector<std::complex<double>> coeffs);
  static Univariate from_real(const std::vector<double>& coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  const std::optional<std::vector<RationalComplex>>& exact() const { return exact_; }
  bool has_exact_real_coefficients() const;

  std::complex<double> evaluate(std::complex<double> t) const;
  std::complex<long double> evaluate_ld(std::complex<long double> t) const;

  const std::optional<std::string>& certificate() const { return certificate_; }
  Univariate& with_certificate(std::string why) {
    certificate_ = std::move(why);
    return *this;
  }

  friend bool operator==(const Univariate& a, const Univariate& b);

  std::string to_string() const;

 private:
  std::vector<std::complex<double>> coeffs_;
  std::optional<std::vector<RationalComplex>> exact_;
  std::optional<std::string> certificate_;
};

MultiAffine apply_perm(const Permutation& sigma, const MultiAffine& f);
/// T_G(f) = (1/|G|) sum_{sigma in G} sigma(f), computed orbit-wise.
MultiAffine symmetrize(const PermutationGroup& g, const MultiAffine& f);
bool is_invariant(const PermutationGroup& g, const MultiAffine& f);
/// Invariant under all of S_n: the coefficient of z^S depends only on |S|.
bool is_symmetric(const MultiAffine& f);

/// e_j of the variables in S.
MultiAffine elementary_symmetric(Subset s, int j, int nvars);

/// prod (z_v + c_v) over (0-based variable, constant) pairs.
MultiAffine product_linear(int nvars, const std::vector<std::pair<int, RationalComplex>>& factors);

/// Fix the given variables (0-based) to exact values. The result keeps the
/// same variable count; fixed variables simply no longer occur.
MultiAffine specialize(const MultiAffine& f, const std::map<int, RationalComplex>& assignment);

/// Substitute t for every variable in S. Variables outside S must already be
/// eliminated.
Univariate diagonal_univariate(const MultiAffine& f, Subset s);

/// t^d p(1/t).
Univariate reciprocal(const Univariate& p);
/// prod_{i in vars} z_i * f(1/z) restricted to vars: the coefficient of z^S
/// moves to z^{vars \ S}. f must only involve variables in vars.
MultiAffine reciprocal(const MultiAffine& f, Subset vars);

/// Substitute z_{vars[i]} = (z - c_i) / b_i for every i and return the
/// polynomial in z. Every b_i must be positive; f may only involve vars.
Univariate affine_substitute(const MultiAffine& f, const std::vector<int>& vars,
                             const std::vector<Rational>& b, const std::vector<Rational>& c);

Rational binomial(int n, int k);

}  // namespace stabsym
