#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabsym/mobius.hpp"
#include "stabsym/poly.hpp"

namespace stabsym {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::uint64_t kDefaultBudget = 10000;
inline constexpr int kRootIterationCap = 200;

/// A point of C^n. For open half-plane witnesses every imaginary part is
/// positive; `boundary` marks points with a coordinate on the real axis.
struct PointH {
  std::vector<std::complex<double>> coords;
  bool boundary = false;
};

struct Witness {
  PointH point;
  double residual = 0.0;
  bool boundary = false;
};

enum class VerdictKind { CertifiedStable, NumericallyStable, Unstable, Unknown };

const char* to_string(VerdictKind k);

/// A separated configuration on which a two-block polynomial vanishes.
struct GraceWitness {
  CircularRegion region;  // contains every z; its complement contains every w
  std::vector<std::complex<double>> z;
  std::vector<std::complex<double>> w;
  double value = 0.0;  // |P(z, w)|
};

struct StabilityVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::string certificate;  // CertifiedStable only
  std::optional<Witness> witness;
  std::optional<GraceWitness> grace_witness;
  std::vector<std::complex<double>> roots;  // univariate checks only
  bool boundary = false;                    // some root within tol of the real axis
  std::uint64_t budget = 0;
  std::uint64_t budget_used = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

/// splitmix64 step; derives the k-th sub-seed of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

// ---------------------------------------------------------------------------
// Univariate

/// All roots with multiplicity by Aberth iteration from points on a circle of
/// radius 1 + max |a_i / a_d|. Throws ConvergenceError after the iteration
/// cap and PreconditionError for constant input.
std::vector<std::complex<double>> roots_univariate(const Univariate& p, int max_iterations = kRootIterationCap);

/// Number of distinct real roots by Sturm sequence (exact).
int count_distinct_real_roots(const std::vector<Rational>& coeffs);
/// Exact real-rootedness of a real polynomial of degree >= 1.
bool is_real_rooted(const std::vector<Rational>& coeffs);

StabilityVerdict check_univariate(const Univariate& p, double tol = kDefaultTol);

struct NewtonResult {
  bool pass = true;
  int violated_index = -1;  // smallest j with b_j^2 < b_{j-1} b_{j+1}
};

/// Newton inequalities for p = sum binom(d,j) b_j t^j. Exact when the
/// polynomial carries exact coefficients. Throws PreconditionError for
/// nonreal coefficients.
NewtonResult newton_check(const Univariate& p);

// ---------------------------------------------------------------------------
// Multivariate search

/// Randomized search for a zero of f in the open upper half-plane. Never
/// claims stability. Deterministic given options.seed.
struct RefuteOutcome {
  std::optional<Witness> witness;
  std::uint64_t used = 0;
};
RefuteOutcome refute_search(const MultiAffine& f, const SearchOptions& options);
std::optional<Witness> refute(const MultiAffine& f, const SearchOptions& options);

/// Univariate input (one occurring variable) is decided by its roots; any
/// other input goes to refute_search and is Unstable or Unknown. Throws
/// ZeroPolynomialError for f == 0.
StabilityVerdict check_stability(const MultiAffine& f, const SearchOptions& options = {});

/// Local search from a (possibly boundary) zero: lift boundary coordinates to
/// Im = epsilon, then re-solve and hill-climb towards an open zero.
std::optional<Witness> lift_to_open(const MultiAffine& f, const std::vector<std::complex<double>>& start,
                                    const SearchOptions& options, double epsilon = 1e-4);

/// Check the witness invariants against f: residual below tol and either every
/// imaginary part above tol or the boundary flag set.
bool witness_valid(const MultiAffine& f, const Witness& w, double tol);

struct GwsResult {
  bool found = false;
  std::complex<double> root{0.0, 1.0};
  Univariate diagonal;  // g(t) = f(t,...,t) - f(zeta)
};

/// A diagonal point with the same value as f at zeta: the root of
/// f(t,...,t) - f(zeta) with the largest imaginary part. found is false when
/// no root has Im >= -tol.
GwsResult gws_witness(const MultiAffine& f, std::span<const std::complex<double>> zeta, double tol = kDefaultTol);

/// Search for circle-separated zeros of P(z_1..z_n, w_1..w_n): every z in an
/// open circular region, every w in the interior of its complement.
std::optional<GraceWitness> grace_refute_separated(const MultiAffine& p, int block_size, const SearchOptions& options);

bool grace_witness_valid(const MultiAffine& p, const GraceWitness& w, double tol);

}  // namespace stabsym
