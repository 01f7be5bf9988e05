#include "stabsym/poly.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "stabsym/error.hpp"

namespace stabsym {

namespace {

void check_nvars(int n) {
  if (n < 0 || n > kMaxSubsetDegree) {
    throw PreconditionError("multiaffine polynomials support 0.." + std::to_string(kMaxSubsetDegree) + " variables");
  }
}

Subset all_vars(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }

void check_subset(Subset s, int n, const char* where) {
  if ((s & ~all_vars(n)) != 0) throw PreconditionError(std::string(where) + ": variable index out of range");
}

std::vector<RationalComplex> trim(std::vector<RationalComplex> c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiAffine

MultiAffine::MultiAffine(int nvars) : nvars_(nvars) { check_nvars(nvars); }

MultiAffine MultiAffine::constant(int nvars, const RationalComplex& c) { return monomial(nvars, 0, c); }

MultiAffine MultiAffine::monomial(int nvars, Subset s, const RationalComplex& c) {
  MultiAffine f(nvars);
  check_subset(s, nvars, "monomial");
  f.add_term(s, c);
  return f;
}

MultiAffine MultiAffine::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw PreconditionError("variable index out of range");
  return monomial(nvars, bit(index));
}

RationalComplex MultiAffine::coefficient(Subset s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? RationalComplex() : it->second;
}

bool MultiAffine::has_real_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

Subset MultiAffine::support() const {
  Subset s = 0;
  for (const auto& [mask, c] : terms_) s |= mask;
  return s;
}

void MultiAffine::add_term(Subset s, const RationalComplex& c) {
  check_subset(s, nvars_, "add_term");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiAffine& MultiAffine::operator+=(const MultiAffine& o) {
  if (o.nvars_ != nvars_) throw PreconditionError("polynomial variable counts differ");
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  certificate_.reset();
  return *this;
}

MultiAffine& MultiAffine::operator-=(const MultiAffine& o) {
  if (o.nvars_ != nvars_) throw PreconditionError("polynomial variable counts differ");
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  certificate_.reset();
  return *this;
}

MultiAffine& MultiAffine::operator*=(const RationalComplex& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [s, v] : terms_) v *= c;
  }
  certificate_.reset();
  return *this;
}

MultiAffine operator*(const MultiAffine& a, const MultiAffine& b) {
  if (a.nvars_ != b.nvars_) throw PreconditionError("polynomial variable counts differ");
  MultiAffine out(a.nvars_);
  for (const auto& [s, x] : a.terms_) {
    for (const auto& [t, y] : b.terms_) {
      if ((s & t) != 0) throw PreconditionError("product is not multiaffine");
      out.add_term(s | t, x * y);
    }
  }
  return out;
}

std::complex<double> MultiAffine::evaluate(std::span<const std::complex<double>> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw PreconditionError("evaluate: point length mismatch");
  std::complex<double> sum = 0.0;
  for (const auto& [s, c] : terms_) {
    std::complex<double> term = c.to_complex();
    for (Subset m = s; m != 0; m &= m - 1) term *= point[static_cast<std::size_t>(std::countr_zero(m))];
    sum += term;
  }
  return sum;
}

std::complex<long double> MultiAffine::evaluate_ld(std::span<const std::complex<double>> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw PreconditionError("evaluate: point length mismatch");
  std::complex<long double> sum = 0.0L;
  for (const auto& [s, c] : terms_) {
    std::complex<long double> term = c.to_complex_ld();
    for (Subset m = s; m != 0; m &= m - 1) {
      const auto& z = point[static_cast<std::size_t>(std::countr_zero(m))];
      term *= std::complex<long double>(z.real(), z.imag());
    }
    sum += term;
  }
  return sum;
}

RationalComplex MultiAffine::evaluate(std::span<const RationalComplex> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw PreconditionError("evaluate: point length mismatch");
  RationalComplex sum;
  for (const auto& [s, c] : terms_) {
    RationalComplex term = c;
    for (Subset m = s; m != 0; m &= m - 1) term *= point[static_cast<std::size_t>(std::countr_zero(m))];
    sum += term;
  }
  return sum;
}

std::string MultiAffine::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (c.is_real()) {
      os << format_rational(c.re());
    } else {
      os << "(" << format_rational(c.re()) << (sgn(c.im()) < 0 ? "" : "+") << format_rational(c.im()) << "i)";
    }
    for (int p : points_of(s)) os << "*z" << (p + 1);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Univariate

Univariate Univariate::from_exact(std::vector<RationalComplex> coeffs) {
  Univariate u;
  u.exact_ = trim(std::move(coeffs));
  u.coeffs_.reserve(u.exact_->size());
  for (const auto& c : *u.exact_) u.coeffs_.push_back(c.to_complex());
  return u;
}

Univariate Univariate::from_complex(std::vector<std::complex<double>> coeffs) {
  while (!coeffs.empty() && coeffs.back() == std::complex<double>(0.0)) coeffs.pop_back();
  Univariate u;
  u.coeffs_ = std::move(coeffs);
  return u;
}

Univariate Univariate::from_real(const std::vector<double>& coeffs) {
  return from_complex(std::vector<std::complex<double>>(coeffs.begin(), coeffs.end()));
}

bool Univariate::has_exact_real_coefficients() const {
  return exact_ && std::all_of(exact_->begin(), exact_->end(), [](const auto& c) { return c.is_real(); });
}

std::complex<double> Univariate::evaluate(std::complex<double> t) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<long double> Univariate::evaluate_ld(std::complex<long double> t) const {
  std::complex<long double> acc = 0.0L;
  if (exact_) {
    for (auto it = exact_->rbegin(); it != exact_->rend(); ++it) acc = acc * t + it->to_complex_ld();
  } else {
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * t + std::complex<long double>(it->real(), it->imag());
    }
  }
  return acc;
}

bool operator==(const Univariate& a, const Univariate& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.coeffs_ == b.coeffs_;
}

std::string Univariate::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (int k = degree(); k >= 0; --k) {
    const auto idx = static_cast<std::size_t>(k);
    if (exact_) {
      const auto& c = (*exact_)[idx];
      if (c.is_zero()) continue;
      if (k != degree()) os << " + ";
      if (c.is_real()) {
        os << format_rational(c.re());
      } else {
        os << "(" << format_rational(c.re()) << (sgn(c.im()) < 0 ? "" : "+") << format_rational(c.im()) << "i)";
      }
    } else {
      if (coeffs_[idx] == std::complex<double>(0.0)) continue;
      if (k != degree()) os << " + ";
      os << "(" << coeffs_[idx].real() << (coeffs_[idx].imag() < 0 ? "" : "+") << coeffs_[idx].imag() << "i)";
    }
    if (k >= 1) os << "*t";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Group action and symmetrizers

MultiAffine apply_perm(const Permutation& sigma, const MultiAffine& f) {
  if (sigma.degree() != f.nvars()) throw PreconditionError("apply_perm: degree mismatch");
  MultiAffine out(f.nvars());
  for (const auto& [s, c] : f.terms()) out.add_term(sigma.apply(s), c);
  if (f.certificate()) out.with_certificate(*f.certificate());
  return out;
}

MultiAffine symmetrize(const PermutationGroup& g, const MultiAffine& f) {
  if (g.degree() != f.nvars()) throw PreconditionError("symmetrize: degree mismatch");
  // T_G(z^S) is the uniform average of z^B over the orbit of S, since every
  // orbit member is hit |Stab(S)| times.
  MultiAffine out(f.nvars());
  std::map<Subset, SubsetOrbit> cache;
  for (const auto& [s, c] : f.terms()) {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, subset_orbit(g, s)).first;
    const auto& orbit = it->second;
    const RationalComplex share = c / RationalComplex(Rational(static_cast<long>(orbit.size())));
    for (Subset m : orbit.members) out.add_term(m, share);
  }
  if (f.certificate() && is_orbit_homogeneous(g)) {
    out.with_certificate("orbit homogeneous symmetrizer of [" + *f.certificate() + "]");
  }
  return out;
}

bool is_invariant(const PermutationGroup& g, const MultiAffine& f) {
  if (g.degree() != f.nvars()) throw PreconditionError("is_invariant: degree mismatch");
  return std::all_of(g.generators().begin(), g.generators().end(),
                     [&](const Permutation& s) { return apply_perm(s, f) == f; });
}

bool is_symmetric(const MultiAffine& f) {
  const int n = f.nvars();
  std::vector<std::size_t> count(static_cast<std::size_t>(n + 1), 0);
  std::vector<const RationalComplex*> value(static_cast<std::size_t>(n + 1), nullptr);
  for (const auto& [s, c] : f.terms()) {
    const auto k = static_cast<std::size_t>(popcount(s));
    if (value[k] && *value[k] != c) return false;
    value[k] = &c;
    ++count[k];
  }
  for (int k = 0; k <= n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (count[ku] != 0 && Rational(static_cast<long>(count[ku])) != binomial(n, k)) return false;
  }
  return true;
}

MultiAffine elementary_symmetric(Subset s, int j, int nvars) {
  check_nvars(nvars);
  check_subset(s, nvars, "elementary_symmetric");
  if (j < 0 || j > popcount(s)) throw PreconditionError("elementary_symmetric: j out of range");
  MultiAffine out(nvars);
  // Enumerate subsets of s with exactly j points.
  for (Subset t = s;; t = (t - 1) & s) {
    if (popcount(t) == j) out.add_term(t, RationalComplex(1));
    if (t == 0) break;
  }
  return out;
}

MultiAffine product_linear(int nvars, const std::vector<std::pair<int, RationalComplex>>& factors) {
  MultiAffine out = MultiAffine::constant(nvars, RationalComplex(1));
  Subset used = 0;
  bool upper = true;
  for (const auto& [v, c] : factors) {
    if (v < 0 || v >= nvars) throw PreconditionError("product_linear: variable index out of range");
    if (used & bit(v)) throw PreconditionError("product_linear: repeated variable index");
    used |= bit(v);
    MultiAffine factor = MultiAffine::variable(nvars, v) + MultiAffine::constant(nvars, c);
    out = out * factor;
    if (sgn(c.im()) < 0) upper = false;
  }
  if (upper) out.with_certificate("product of linear factors z_v + c_v with Im c_v >= 0");
  return out;
}

MultiAffine specialize(const MultiAffine& f, const std::map<int, RationalComplex>& assignment) {
  Subset fixed = 0;
  bool closed_upper = true;
  for (const auto& [v, c] : assignment) {
    if (v < 0 || v >= f.nvars()) throw PreconditionError("specialize: variable index out of range");
    fixed |= bit(v);
    if (sgn(c.im()) < 0) closed_upper = false;
  }
  MultiAffine out(f.nvars());
  for (const auto& [s, c] : f.terms()) {
    RationalComplex coeff = c;
    for (Subset m = s & fixed; m != 0; m &= m - 1) {
      coeff *= assignment.at(std::countr_zero(m));
      if (coeff.is_zero()) break;
    }
    out.add_term(s & ~fixed, coeff);
  }
  if (f.certificate() && closed_upper) out.with_certificate(*f.certificate());
  return out;
}

Univariate diagonal_univariate(const MultiAffine& f, Subset s) {
  if (s == 0) throw PreconditionError("diagonal_univariate: empty variable set");
  check_subset(s, f.nvars(), "diagonal_univariate");
  if ((f.support() & ~s) != 0) {
    throw PreconditionError("diagonal_univariate: variables outside the set must be specialized first");
  }
  std::vector<RationalComplex> coeffs(static_cast<std::size_t>(popcount(s) + 1));
  for (const auto& [m, c] : f.terms()) coeffs[static_cast<std::size_t>(popcount(m))] += c;
  auto u = Univariate::from_exact(std::move(coeffs));
  if (f.certificate()) u.with_certificate(*f.certificate());
  return u;
}

Univariate reciprocal(const Univariate& p) {
  Univariate out;
  if (p.exact()) {
    std::vector<RationalComplex> c(p.exact()->rbegin(), p.exact()->rend());
    out = Univariate::from_exact(std::move(c));
  } else {
    std::vector<std::complex<double>> c(p.coeffs().rbegin(), p.coeffs().rend());
    out = Univariate::from_complex(std::move(c));
  }
  if (p.certificate() && p.has_exact_real_coefficients()) out.with_certificate(*p.certificate());
  return out;
}

MultiAffine reciprocal(const MultiAffine& f, Subset vars) {
  check_subset(vars, f.nvars(), "reciprocal");
  if ((f.support() & ~vars) != 0) throw PreconditionError("reciprocal: polynomial involves variables outside the set");
  MultiAffine out(f.nvars());
  for (const auto& [s, c] : f.terms()) out.add_term(vars & ~s, c);
  // z -> 1/z swaps the half-planes; real coefficients map the zero set to its conjugate.
  if (f.certificate() && f.has_real_coefficients()) out.with_certificate(*f.certificate());
  return out;
}

Univariate affine_substitute(const MultiAffine& f, const std::vector<int>& vars, const std::vector<Rational>& b,
                             const std::vector<Rational>& c) {
  if (vars.size() != b.size() || vars.size() != c.size()) {
    throw PreconditionError("affine_substitute: parameter lengths differ");
  }
  Subset var_set = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] < 0 || vars[i] >= f.nvars()) throw PreconditionError("affine_substitute: variable out of range");
    if (sgn(b[i]) <= 0) throw PreconditionError("affine_substitute: b_i must be positive");
    var_set |= bit(vars[i]);
  }
  if ((f.support() & ~var_set) != 0) {
    throw PreconditionError("affine_substitute: polynomial involves unsubstituted variables");
  }

  std::vector<RationalComplex> result(vars.size() + 1);
  for (const auto& [s, coeff] : f.terms()) {
    // Expand coeff * prod_{i in s} (z - c_i) / b_i.
    std::vector<RationalComplex> poly{coeff};
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!(s & bit(vars[i]))) continue;
      std::vector<RationalComplex> next(poly.size() + 1);
      const Rational inv_b = 1 / b[i];
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k] * RationalComplex(inv_b);
        next[k] -= poly[k] * RationalComplex(Rational(c[i] * inv_b));
      }
      poly = std::move(next);
    }
    for (std::size_t k = 0; k < poly.size(); ++k) result[k] += poly[k];
  }
  auto u = Univariate::from_exact(std::move(result));
  // Real c_i and positive b_i send z in H to every z_i in H.
  if (f.certificate()) u.with_certificate(*f.certificate());
  return u;
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

}  // namespace stabsym
