#include "stabsym/stability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "stabsym/error.hpp"

namespace stabsym {

using cd = std::complex<double>;
using cld = std::complex<long double>;

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedStable: return "CertifiedStable";
    case VerdictKind::NumericallyStable: return "NumericallyStable";
    case VerdictKind::Unstable: return "Unstable";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

/// mt19937_64 with explicit conversions so that streams are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr double kSampleReLo = -10.0;
constexpr double kSampleReHi = 10.0;
constexpr double kSampleImLo = 1e-3;
constexpr double kSampleImHi = 10.0;
constexpr double kMaxWitnessModulus = 1e6;
// A solved coordinate must clear the boundary by this multiple of its
// rounding bound; near high-order boundary zeros the bound dominates.
constexpr long double kMarginSafety = 1e3L;
constexpr std::uint64_t kChunk = 4096;
constexpr int kBatch = 32;
constexpr int kClimbSteps = 64;

cd sample_upper(Rng& rng) {
  return {rng.uniform(kSampleReLo, kSampleReHi), rng.log_uniform(kSampleImLo, kSampleImHi)};
}

/// Floating copy of a multiaffine polynomial, solved one variable at a time.
class Compiled {
 public:
  explicit Compiled(const MultiAffine& f) : n_(f.nvars()) {
    for (const auto& [s, c] : f.terms()) {
      terms_.emplace_back(s, c.to_complex());
      terms_ld_.emplace_back(s, c.to_complex_ld());
    }
  }

  /// f = A + B z_j with every other variable fixed at x.
  void linear(int j, const std::vector<cd>& x, cd& a, cd& b) const {
    a = b = 0.0;
    const Subset jb = bit(j);
    for (const auto& [s, c] : terms_) {
      cd t = c;
      for (Subset m = s & ~jb; m != 0; m &= m - 1) t *= x[static_cast<std::size_t>(std::countr_zero(m))];
      if (s & jb) {
        b += t;
      } else {
        a += t;
      }
    }
  }

  struct Solution {
    cld z;
    long double err;  // rounding bound on z
  };

  /// Extended-precision solve of the linear equation in z_j, with a forward
  /// error estimate from the magnitudes of the summed terms.
  std::optional<Solution> solve_ld(int j, const std::vector<cd>& x) const {
    cld a = 0.0L;
    cld b = 0.0L;
    long double mag_a = 0.0L;
    long double mag_b = 0.0L;
    const Subset jb = bit(j);
    for (const auto& [s, c] : terms_ld_) {
      cld t = c;
      for (Subset m = s & ~jb; m != 0; m &= m - 1) {
        const cd& v = x[static_cast<std::size_t>(std::countr_zero(m))];
        t *= cld(v.real(), v.imag());
      }
      if (s & jb) {
        b += t;
        mag_b += std::abs(t);
      } else {
        a += t;
        mag_a += std::abs(t);
      }
    }
    if (b == cld(0.0L)) return std::nullopt;
    const cld z = -a / b;
    const long double eps = std::numeric_limits<long double>::epsilon() * (2 * n_ + 4);
    return Solution{z, eps * (mag_a + std::abs(z) * mag_b) / std::abs(b)};
  }

  int nvars() const { return n_; }

 private:
  int n_;
  std::vector<std::pair<Subset, cd>> terms_;
  std::vector<std::pair<Subset, cld>> terms_ld_;
};

double score_of(cd z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return -1.0;
  return z.imag() / (1.0 + std::abs(z));
}

std::optional<Witness> try_accept(const MultiAffine& f, const Compiled& cf, std::vector<cd> x, int j, double tol) {
  const auto sol = cf.solve_ld(j, x);
  if (!sol) return std::nullopt;
  const cld z = sol->z;
  if (!(z.imag() > tol) || !(z.imag() > kMarginSafety * sol->err) || std::abs(z) > kMaxWitnessModulus) {
    return std::nullopt;
  }
  x[static_cast<std::size_t>(j)] = cd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  for (const auto& v : x) {
    if (!(v.imag() > tol)) return std::nullopt;
  }
  const double residual = static_cast<double>(std::abs(f.evaluate_ld(x)));
  if (!(residual < tol)) return std::nullopt;
  Witness w;
  w.point.coords = std::move(x);
  w.residual = residual;
  return w;
}

struct Candidate {
  std::vector<cd> x;
  int j = 0;
  double score = -2.0;
};

/// Perturb every free coordinate of x except j. Imaginary parts move
/// multiplicatively so they stay positive.
void perturb(Rng& rng, std::vector<cd>& x, const std::vector<int>& active, int j, double sigma) {
  for (int i : active) {
    if (i == j) continue;
    auto& v = x[static_cast<std::size_t>(i)];
    const double re = v.real() + sigma * rng.normal() * (1.0 + std::abs(v.real()));
    const double im = std::clamp(v.imag() * std::exp(sigma * rng.normal()), 1e-7, 1e4);
    v = cd(re, im);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Univariate

std::vector<cd> roots_univariate(const Univariate& p, int max_iterations) {
  if (p.degree() < 1) throw PreconditionError("roots_univariate: degree must be at least 1");
  std::vector<cd> a = p.coeffs();

  std::vector<cd> roots;
  // Exact zero roots are split off first.
  std::size_t shift = 0;
  while (shift < a.size() && a[shift] == cd(0.0)) ++shift;
  roots.assign(shift, cd(0.0));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(shift));
  const int d = static_cast<int>(a.size()) - 1;
  if (d == 0) return roots;

  const cd lead = a.back();
  for (auto& c : a) c /= lead;
  double radius = 0.0;
  for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(a[static_cast<std::size_t>(i)]));
  radius += 1.0;

  std::vector<cd> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / d + 0.4);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto horner = [&](cd t, cd& val, cd& der, double& scale) {
    val = a.back();
    der = 0.0;
    scale = std::abs(a.back());
    const double at = std::abs(t);
    for (int i = d - 1; i >= 0; --i) {
      der = der * t + val;
      val = val * t + a[static_cast<std::size_t>(i)];
      scale = scale * at + std::abs(a[static_cast<std::size_t>(i)]);
    }
  };

  std::vector<bool> done(static_cast<std::size_t>(d), false);
  bool converged = false;
  for (int it = 0; it < max_iterations && !converged; ++it) {
    converged = true;
    for (int k = 0; k < d; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      if (done[ku]) continue;
      cd val;
      cd der;
      double scale = 0.0;
      horner(z[ku], val, der, scale);
      if (std::abs(val) <= 8.0 * eps * scale) {
        done[ku] = true;
        continue;
      }
      converged = false;
      const cd ratio = der == cd(0.0) ? val : val / der;
      cd sum = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j != k) sum += 1.0 / (z[ku] - z[static_cast<std::size_t>(j)]);
      }
      const cd step = ratio / (1.0 - ratio * sum);
      z[ku] -= step;
      if (std::abs(step) <= 2.0 * eps * std::abs(z[ku])) done[ku] = true;
    }
  }
  if (!converged) {
    // One last sweep: accept if every root now meets the backward-error test.
    for (int k = 0; k < d; ++k) {
      cd val;
      cd der;
      double scale = 0.0;
      horner(z[static_cast<std::size_t>(k)], val, der, scale);
      if (std::abs(val) > 1e3 * eps * scale && !done[static_cast<std::size_t>(k)]) {
        throw ConvergenceError("roots_univariate: no convergence within " + std::to_string(max_iterations) +
                               " iterations");
      }
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  std::sort(roots.begin(), roots.end(), [](const cd& x, const cd& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

namespace {

using RPoly = std::vector<Rational>;

void trim(RPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

RPoly remainder(RPoly num, const RPoly& den) {
  while (num.size() >= den.size() && !num.empty()) {
    const Rational factor = num.back() / den.back();
    const std::size_t off = num.size() - den.size();
    for (std::size_t i = 0; i < den.size(); ++i) num[off + i] -= factor * den[i];
    num.pop_back();
    trim(num);
  }
  return num;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<RPoly> sturm_chain(RPoly p) {
  trim(p);
  std::vector<RPoly> chain{p};
  RPoly dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long>(i));
  trim(dp);
  if (dp.empty()) return chain;
  chain.push_back(dp);
  for (;;) {
    RPoly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

}  // namespace

int count_distinct_real_roots(const std::vector<Rational>& coeffs) {
  auto chain = sturm_chain(coeffs);
  if (chain.front().empty()) throw ZeroPolynomialError("Sturm sequence of the zero polynomial");
  std::vector<int> at_pos;
  std::vector<int> at_neg;
  for (const auto& q : chain) {
    const int lead = sgn(q.back());
    const int deg = static_cast<int>(q.size()) - 1;
    at_pos.push_back(lead);
    at_neg.push_back(deg % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

bool is_real_rooted(const std::vector<Rational>& coeffs) {
  auto chain = sturm_chain(coeffs);
  const int d = static_cast<int>(chain.front().size()) - 1;
  if (d < 1) throw PreconditionError("is_real_rooted: degree must be at least 1");
  // The last chain element is gcd(p, p') up to a constant.
  const int gcd_degree = chain.size() == 1 ? 0 : static_cast<int>(chain.back().size()) - 1;
  return count_distinct_real_roots(coeffs) == d - gcd_degree;
}

StabilityVerdict check_univariate(const Univariate& p, double tol) {
  if (p.is_zero()) throw ZeroPolynomialError("check_univariate: polynomial is identically zero");
  StabilityVerdict v;
  v.tol = tol;
  if (p.degree() == 0) {
    v.kind = VerdictKind::CertifiedStable;
    v.certificate = "nonzero constant";
    return v;
  }
  try {
    v.roots = roots_univariate(p);
  } catch (const ConvergenceError&) {
    v.kind = VerdictKind::Unknown;
    return v;
  }
  const auto top = std::max_element(v.roots.begin(), v.roots.end(),
                                    [](const cd& x, const cd& y) { return x.imag() < y.imag(); });
  if (top->imag() > tol) {
    v.kind = VerdictKind::Unstable;
    Witness w;
    w.point.coords = {*top};
    w.residual = static_cast<double>(std::abs(p.evaluate_ld(cld(top->real(), top->imag()))));
    v.witness = std::move(w);
    return v;
  }
  v.boundary = std::any_of(v.roots.begin(), v.roots.end(), [&](const cd& r) { return std::abs(r.imag()) <= tol; });
  if (p.has_exact_real_coefficients()) {
    std::vector<Rational> re;
    for (const auto& c : *p.exact()) re.push_back(c.re());
    if (is_real_rooted(re)) {
      v.kind = VerdictKind::CertifiedStable;
      v.certificate = "real-rooted (Sturm sequence)";
      return v;
    }
  }
  if (p.certificate()) {
    v.kind = VerdictKind::CertifiedStable;
    v.certificate = *p.certificate();
    return v;
  }
  v.kind = VerdictKind::NumericallyStable;
  return v;
}

NewtonResult newton_check(const Univariate& p) {
  const int d = p.degree();
  NewtonResult result;
  if (p.exact() ? !p.has_exact_real_coefficients()
                : std::any_of(p.coeffs().begin(), p.coeffs().end(), [](cd c) { return c.imag() != 0.0; })) {
    throw PreconditionError("newton_check: coefficients must be real");
  }
  if (d < 2) return result;
  if (p.exact()) {
    std::vector<Rational> b;
    for (int j = 0; j <= d; ++j) b.push_back((*p.exact())[static_cast<std::size_t>(j)].re() / binomial(d, j));
    for (int j = 1; j < d; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      if (b[ju] * b[ju] < b[ju - 1] * b[ju + 1]) return {false, j};
    }
    return result;
  }
  std::vector<double> b;
  for (int j = 0; j <= d; ++j) {
    b.push_back(p.coeffs()[static_cast<std::size_t>(j)].real() / binomial(d, j).get_d());
  }
  for (int j = 1; j < d; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double lhs = b[ju] * b[ju];
    const double rhs = b[ju - 1] * b[ju + 1];
    if (lhs < rhs - 1e-12 * (std::abs(lhs) + std::abs(rhs))) return {false, j};
  }
  return result;
}

// ---------------------------------------------------------------------------
// Multivariate refutation

RefuteOutcome refute_search(const MultiAffine& f, const SearchOptions& options) {
  if (f.is_zero()) throw ZeroPolynomialError("refute: polynomial is identically zero");
  RefuteOutcome out;
  const std::vector<int> active = points_of(f.support());
  if (active.empty()) return out;  // nonzero constant

  const Compiled cf(f);
  const auto n = static_cast<std::size_t>(f.nvars());

  for (std::uint64_t chunk = 0; out.used < options.budget; ++chunk) {
    Rng rng(derive_seed(options.seed, chunk));
    const std::uint64_t chunk_end = std::min(options.budget, out.used + kChunk);
    Candidate best;
    int in_batch = 0;

    while (out.used < chunk_end) {
      std::vector<cd> x(n);
      for (auto& v : x) v = sample_upper(rng);
      const int j = active[rng.index(active.size())];
      cd a;
      cd b;
      cf.linear(j, x, a, b);
      ++out.used;
      if (b != cd(0.0)) {
        const cd z = -a / b;
        if (z.imag() > options.tol) {
          if (auto w = try_accept(f, cf, x, j, options.tol)) {
            out.witness = std::move(w);
            return out;
          }
        }
        const double s = score_of(z);
        if (s > best.score) best = {x, j, s};
      }
      if (++in_batch < kBatch || best.score < -1.0) continue;

      // Hill-climb from the best near-miss of the batch.
      double sigma = 0.3;
      for (int step = 0; step < kClimbSteps && out.used < chunk_end; ++step) {
        std::vector<cd> y = best.x;
        perturb(rng, y, active, best.j, sigma);
        cf.linear(best.j, y, a, b);
        ++out.used;
        if (b == cd(0.0)) continue;
        const cd z = -a / b;
        const double s = score_of(z);
        if (s > best.score) {
          best.x = std::move(y);
          best.score = s;
          sigma = std::min(sigma * 1.5, 2.0);
          if (z.imag() > options.tol) {
            if (auto w = try_accept(f, cf, best.x, best.j, options.tol)) {
              out.witness = std::move(w);
              return out;
            }
          }
        } else {
          sigma = std::max(sigma * 0.7, 1e-6);
        }
      }
      best = Candidate{};
      in_batch = 0;
    }
  }
  return out;
}

std::optional<Witness> refute(const MultiAffine& f, const SearchOptions& options) {
  return refute_search(f, options).witness;
}

std::optional<Witness> lift_to_open(const MultiAffine& f, const std::vector<cd>& start, const SearchOptions& options,
                                    double epsilon) {
  if (f.is_zero()) throw ZeroPolynomialError("lift_to_open: polynomial is identically zero");
  if (static_cast<int>(start.size()) != f.nvars()) throw PreconditionError("lift_to_open: point length mismatch");
  const std::vector<int> active = points_of(f.support());
  if (active.empty()) return std::nullopt;
  const Compiled cf(f);

  std::vector<cd> x = start;
  for (auto& v : x) {
    if (v.imag() < epsilon) v = cd(v.real(), epsilon);
  }

  Rng rng(derive_seed(options.seed, 0x6c696674ULL));
  std::uint64_t used = 0;
  for (int j : active) {
    if (auto w = try_accept(f, cf, x, j, options.tol)) return w;
    ++used;
  }
  // Climb on the variable whose solution sits highest.
  Candidate best;
  for (int j : active) {
    cd a;
    cd b;
    cf.linear(j, x, a, b);
    if (b == cd(0.0)) continue;
    const double s = score_of(-a / b);
    if (s > best.score) best = {x, j, s};
  }
  if (best.score < -1.0) return std::nullopt;
  double sigma = epsilon;
  while (used < options.budget) {
    std::vector<cd> y = best.x;
    perturb(rng, y, active, best.j, sigma);
    cd a;
    cd b;
    cf.linear(best.j, y, a, b);
    ++used;
    if (b == cd(0.0)) continue;
    const cd z = -a / b;
    const double s = score_of(z);
    if (s > best.score) {
      best.x = std::move(y);
      best.score = s;
      sigma = std::min(sigma * 1.5, 1.0);
      if (z.imag() > options.tol) {
        if (auto w = try_accept(f, cf, best.x, best.j, options.tol)) return w;
      }
    } else {
      sigma = std::max(sigma * 0.7, 1e-9);
    }
  }
  return std::nullopt;
}

bool witness_valid(const MultiAffine& f, const Witness& w, double tol) {
  if (static_cast<int>(w.point.coords.size()) != f.nvars()) return false;
  const double residual = static_cast<double>(std::abs(f.evaluate_ld(w.point.coords)));
  if (!(residual < tol)) return false;
  if (w.boundary) return true;
  return std::all_of(w.point.coords.begin(), w.point.coords.end(), [&](const cd& v) { return v.imag() > tol; });
}

// ---------------------------------------------------------------------------
// Coincidence (diagonal) witness

GwsResult gws_witness(const MultiAffine& f, std::span<const cd> zeta, double tol) {
  const int n = f.nvars();
  if (static_cast<int>(zeta.size()) != n) throw PreconditionError("gws_witness: point length mismatch");
  if (!is_symmetric(f)) throw PreconditionError("gws_witness: polynomial is not symmetric");
  for (const auto& z : zeta) {
    if (!(z.imag() > 0.0)) throw PreconditionError("gws_witness: point must lie in the open upper half-plane");
  }

  std::vector<RationalComplex> diag(static_cast<std::size_t>(n + 1));
  for (const auto& [s, c] : f.terms()) diag[static_cast<std::size_t>(popcount(s))] += c;
  std::vector<cd> g;
  for (const auto& c : diag) g.push_back(c.to_complex());
  const cld value = f.evaluate_ld(std::vector<cd>(zeta.begin(), zeta.end()));
  g[0] -= cd(static_cast<double>(value.real()), static_cast<double>(value.imag()));

  GwsResult result;
  result.diagonal = Univariate::from_complex(g);
  if (result.diagonal.is_zero()) {
    result.found = true;
    result.root = cd(0.0, 1.0);
    return result;
  }
  if (result.diagonal.degree() == 0) return result;
  auto roots = roots_univariate(result.diagonal);
  const auto top = std::max_element(roots.begin(), roots.end(),
                                    [](const cd& x, const cd& y) { return x.imag() < y.imag(); });
  result.root = *top;
  result.found = top->imag() >= -tol;
  return result;
}

// ---------------------------------------------------------------------------
// Circle-separated search

namespace {

CircularRegion random_region(Rng& rng) {
  switch (rng.index(3)) {
    case 0:
      return CircularRegion::disk({rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.log_uniform(0.1, 10.0), true);
    case 1:
      return CircularRegion::disk({rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.log_uniform(0.1, 10.0), false);
    default: {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      return CircularRegion::half_plane(std::polar(1.0, angle), rng.uniform(-5, 5));
    }
  }
}

/// Margin of x on its required side: z-block points must map into H, w-block
/// points into the lower half-plane.
double side_margin(const MobiusMap& phi, cd x, bool z_block) {
  const cd den = phi.c * x + phi.d;
  if (den == cd(0.0)) return -1.0;
  const cd u = (phi.a * x + phi.b) / den;
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) return -1.0;
  const double m = z_block ? u.imag() : -u.imag();
  return m;
}

}  // namespace

bool grace_witness_valid(const MultiAffine& p, const GraceWitness& w, double tol) {
  if (static_cast<int>(w.z.size() + w.w.size()) != p.nvars()) return false;
  const CircularRegion outside = w.region.complement();
  for (const auto& z : w.z) {
    if (!w.region.contains(z)) return false;
  }
  for (const auto& v : w.w) {
    if (!outside.contains(v)) return false;
  }
  std::vector<cd> x(w.z);
  x.insert(x.end(), w.w.begin(), w.w.end());
  return static_cast<double>(std::abs(p.evaluate_ld(x))) < tol;
}

std::optional<GraceWitness> grace_refute_separated(const MultiAffine& p, int block_size, const SearchOptions& options) {
  if (p.is_zero()) throw ZeroPolynomialError("grace_refute_separated: polynomial is identically zero");
  if (block_size < 1 || 2 * block_size != p.nvars()) {
    throw PreconditionError("grace_refute_separated: expected two blocks of equal size");
  }
  const std::vector<int> active = points_of(p.support());
  if (active.empty()) return std::nullopt;
  const Compiled cp(p);
  const auto n = static_cast<std::size_t>(p.nvars());
  std::uint64_t used = 0;

  auto accept = [&](const CircularRegion& region, const MobiusMap& phi, std::vector<cd> x,
                    int j) -> std::optional<GraceWitness> {
    const auto sol = cp.solve_ld(j, x);
    if (!sol || std::abs(sol->z) > kMaxWitnessModulus) return std::nullopt;
    const cd xj(static_cast<double>(sol->z.real()), static_cast<double>(sol->z.imag()));
    x[static_cast<std::size_t>(j)] = xj;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(side_margin(phi, x[i], static_cast<int>(i) < block_size) > options.tol)) return std::nullopt;
    }
    // Error of the solved coordinate carried through phi: |phi'(x)| = |det| / |c x + d|^2.
    const double slope = std::abs(phi.determinant()) / std::norm(phi.c * xj + phi.d);
    if (!(side_margin(phi, xj, j < block_size) > static_cast<double>(kMarginSafety * sol->err) * slope)) {
      return std::nullopt;
    }
    GraceWitness w;
    w.region = region;
    w.z.assign(x.begin(), x.begin() + block_size);
    w.w.assign(x.begin() + block_size, x.end());
    w.value = static_cast<double>(std::abs(p.evaluate_ld(x)));
    if (!grace_witness_valid(p, w, options.tol)) return std::nullopt;
    return w;
  };

  for (std::uint64_t chunk = 0; used < options.budget; ++chunk) {
    Rng rng(derive_seed(options.seed, chunk));
    const CircularRegion region = chunk == 0 ? CircularRegion::upper_half_plane() : random_region(rng);
    const MobiusMap phi = region_to_halfplane(region);
    const MobiusMap inv = phi.inverse();
    const std::uint64_t chunk_end = std::min(options.budget, used + kChunk);

    // Coordinates live in the half-plane picture: u in H for z, conj in -H for w.
    auto to_plane = [&](const std::vector<cd>& u) {
      std::vector<cd> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        const cd den = inv.c * u[i] + inv.d;
        x[i] = den == cd(0.0) ? cd(1e300, 0.0) : (inv.a * u[i] + inv.b) / den;
      }
      return x;
    };
    auto evaluate = [&](const std::vector<cd>& u, int j, double& score) {
      const auto x = to_plane(u);
      cd a;
      cd b;
      cp.linear(j, x, a, b);
      if (b == cd(0.0)) {
        score = -2.0;
        return x;
      }
      const cd sol = -a / b;
      const double m = side_margin(phi, sol, j < block_size);
      score = std::isfinite(m) ? m / (1.0 + std::abs(sol)) : -2.0;
      return x;
    };

    Candidate best;
    int in_batch = 0;
    while (used < chunk_end) {
      std::vector<cd> u(n);
      for (std::size_t i = 0; i < n; ++i) {
        const cd s = sample_upper(rng);
        u[i] = static_cast<int>(i) < block_size ? s : std::conj(s);
      }
      const int j = active[rng.index(active.size())];
      double score = 0.0;
      auto x = evaluate(u, j, score);
      ++used;
      if (score > 0.0) {
        if (auto w = accept(region, phi, x, j)) return w;
      }
      if (score > best.score) best = {u, j, score};
      if (++in_batch < kBatch || best.score < -1.0) continue;

      double sigma = 0.3;
      for (int step = 0; step < kClimbSteps && used < chunk_end; ++step) {
        std::vector<cd> v = best.x;
        for (int i : active) {
          if (i == best.j) continue;
          auto& c = v[static_cast<std::size_t>(i)];
          const bool z_block = i < block_size;
          const double im_abs = std::clamp(std::abs(c.imag()) * std::exp(sigma * rng.normal()), 1e-7, 1e4);
          const double re = c.real() + sigma * rng.normal() * (1.0 + std::abs(c.real()));
          c = cd(re, z_block ? im_abs : -im_abs);
        }
        double s = 0.0;
        auto y = evaluate(v, best.j, s);
        ++used;
        if (s > best.score) {
          best.x = std::move(v);
          best.score = s;
          sigma = std::min(sigma * 1.5, 2.0);
          if (s > 0.0) {
            if (auto w = accept(region, phi, y, best.j)) return w;
          }
        } else {
          sigma = std::max(sigma * 0.7, 1e-6);
        }
      }
      best = Candidate{};
      in_batch = 0;
    }
  }
  return std::nullopt;
}

StabilityVerdict check_stability(const MultiAffine& f, const SearchOptions& options) {
  if (f.is_zero()) throw ZeroPolynomialError("polynomial is identically zero");
  const Subset vars = f.support();
  if (popcount(vars) == 1) {
    auto v = check_univariate(diagonal_univariate(f, vars), options.tol);
    if (v.witness) {
      // Report the root as a point of C^n.
      std::vector<cd> x(static_cast<std::size_t>(f.nvars()), {0.0, 1.0});
      x[static_cast<std::size_t>(points_of(vars).front())] = v.witness->point.coords.front();
      v.witness->point.coords = x;
    }
    v.seed = options.seed;
    return v;
  }
  StabilityVerdict v;
  v.budget = options.budget;
  v.seed = options.seed;
  v.tol = options.tol;
  if (vars == 0) {
    v.kind = VerdictKind::CertifiedStable;
    v.certificate = "nonzero constant";
    return v;
  }
  const auto outcome = refute_search(f, options);
  v.budget_used = outcome.used;
  v.kind = outcome.witness ? VerdictKind::Unstable : VerdictKind::Unknown;
  v.witness = outcome.witness;
  return v;
}

}  // namespace stabsym
