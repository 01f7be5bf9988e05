#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabsym/group.hpp"
#include "stabsym/poly.hpp"

namespace stabsym {

/// A formal sum sum_sigma c_sigma sigma in the group ring of S_n, acting on
/// multiaffine polynomials by permuting variables.
///
/// `certificate` records, when known by construction, that the element is a
/// product of symmetrizers of orbit homogeneous groups (and hence that the
/// operator preserves stability). Parsed or hand-built elements carry none.
class GroupAlgebraElement {
 public:
  using Coeffs = std::map<Permutation, RationalComplex>;

  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(int degree) : degree_(degree) {}

  /// delta_sigma.
  static GroupAlgebraElement basis(const Permutation& sigma);

  int degree() const { return degree_; }
  const Coeffs& coeffs() const { return coeffs_; }
  RationalComplex coefficient(const Permutation& sigma) const;
  bool is_zero() const { return coeffs_.empty(); }
  std::vector<Permutation> support() const;

  void add(const Permutation& sigma, const RationalComplex& c);

  const std::optional<std::string>& certificate() const { return certificate_; }
  GroupAlgebraElement& with_certificate(std::string why) {
    certificate_ = std::move(why);
    return *this;
  }

  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int degree_ = 0;
  Coeffs coeffs_;
  std::optional<std::string> certificate_;
};

/// A two-block multiaffine polynomial: z_1..z_n are variables 0..n-1 and
/// w_1..w_n are variables n..2n-1.
struct OperatorSymbol {
  int n = 0;
  MultiAffine poly;
};

/// T_G = (1/|G|) sum_{sigma in G} sigma. Certified when G is orbit homogeneous.
GroupAlgebraElement symmetrizer_element(const PermutationGroup& g);

/// (u v)_tau = sum_{sigma rho = tau} u_sigma v_rho; composition of operators.
GroupAlgebraElement convolve(const GroupAlgebraElement& u, const GroupAlgebraElement& v);

/// sum_sigma u_sigma sigma(f).
MultiAffine apply_element(const GroupAlgebraElement& u, const MultiAffine& f);

/// Q(z, w) = sum_sigma c_sigma prod_j (z_sigma(j) + w_j).
OperatorSymbol operator_symbol(const GroupAlgebraElement& u);

/// P(z, w) = sum_sigma c_sigma prod_j (z_sigma(j) - w_j).
OperatorSymbol ruelle_form(const GroupAlgebraElement& u);

}  // namespace stabsym
