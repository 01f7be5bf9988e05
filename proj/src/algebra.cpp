#include "stabsym/algebra.hpp"

#include "stabsym/error.hpp"

namespace stabsym {

GroupAlgebraElement GroupAlgebraElement::basis(const Permutation& sigma) {
  GroupAlgebraElement e(sigma.degree());
  e.add(sigma, RationalComplex(1));
  return e;
}

RationalComplex GroupAlgebraElement::coefficient(const Permutation& sigma) const {
  auto it = coeffs_.find(sigma);
  return it == coeffs_.end() ? RationalComplex() : it->second;
}

std::vector<Permutation> GroupAlgebraElement::support() const {
  std::vector<Permutation> out;
  out.reserve(coeffs_.size());
  for (const auto& [s, c] : coeffs_) out.push_back(s);
  return out;
}

void GroupAlgebraElement::add(const Permutation& sigma, const RationalComplex& c) {
  if (sigma.degree() != degree_) throw PreconditionError("group algebra element: degree mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(sigma, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
  certificate_.reset();
}

GroupAlgebraElement symmetrizer_element(const PermutationGroup& g) {
  GroupAlgebraElement t(g.degree());
  const RationalComplex share(Rational(1, static_cast<unsigned long>(g.order())));
  for (const auto& s : g.elements()) t.add(s, share);
  if (is_orbit_homogeneous(g)) {
    t.with_certificate("symmetrizer of an orbit homogeneous group of order " + std::to_string(g.order()));
  }
  return t;
}

GroupAlgebraElement convolve(const GroupAlgebraElement& u, const GroupAlgebraElement& v) {
  if (u.degree() != v.degree()) throw PreconditionError("convolve: degree mismatch");
  GroupAlgebraElement out(u.degree());
  for (const auto& [s, a] : u.coeffs()) {
    for (const auto& [r, b] : v.coeffs()) out.add(compose(s, r), a * b);
  }
  // Stability preservers are closed under composition.
  if (u.certificate() && v.certificate()) {
    out.with_certificate("product of [" + *u.certificate() + "] and [" + *v.certificate() + "]");
  }
  return out;
}

MultiAffine apply_element(const GroupAlgebraElement& u, const MultiAffine& f) {
  if (u.degree() != f.nvars()) throw PreconditionError("apply_element: degree mismatch");
  MultiAffine out(f.nvars());
  for (const auto& [s, c] : u.coeffs()) {
    for (const auto& [mask, coeff] : f.terms()) out.add_term(s.apply(mask), c * coeff);
  }
  return out;
}

namespace {

OperatorSymbol two_block_form(const GroupAlgebraElement& u, long sign) {
  const int n = u.degree();
  if (2 * n > kMaxSubsetDegree) throw PreconditionError("operator symbol: degree too large");
  OperatorSymbol q;
  q.n = n;
  q.poly = MultiAffine(2 * n);
  for (const auto& [s, c] : u.coeffs()) {
    // prod_j (z_sigma(j) + sign * w_j): choose z or w from each factor.
    for (Subset pick = 0; pick < (Subset{1} << n); ++pick) {
      Subset mask = 0;
      int w_count = 0;
      for (int j = 0; j < n; ++j) {
        if (pick & bit(j)) {
          mask |= bit(s(j));
        } else {
          mask |= bit(n + j);
          ++w_count;
        }
      }
      RationalComplex coeff = c;
      if (sign < 0 && (w_count % 2 == 1)) coeff = -coeff;
      q.poly.add_term(mask, coeff);
    }
  }
  return q;
}

}  // namespace

OperatorSymbol operator_symbol(const GroupAlgebraElement& u) { return two_block_form(u, 1); }

OperatorSymbol ruelle_form(const GroupAlgebraElement& u) { return two_block_form(u, -1); }

}  // namespace stabsym
