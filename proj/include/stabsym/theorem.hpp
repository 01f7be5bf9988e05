#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stabsym/algebra.hpp"
#include "stabsym/group.hpp"
#include "stabsym/poly.hpp"
#include "stabsym/stability.hpp"

namespace stabsym {

// ---------------------------------------------------------------------------
// Deciders

/// Whether T_G maps stable multiaffine polynomials to stable ones. Decided
/// exactly: this holds iff G is orbit homogeneous.
bool preserves_stability(const PermutationGroup& g);

/// T_G == T_{S(S_1)} ∘ ... ∘ T_{S(S_r)} on every monomial, computed by
/// summing over group elements (independent of subset-orbit enumeration).
bool factorization_check(const PermutationGroup& g);

/// Whether every G-invariant multiaffine f has the diagonal coincidence
/// property on the upper half-plane. Holds iff G is homogeneous.
bool has_coincidence_property(const PermutationGroup& g);

// ---------------------------------------------------------------------------
// Counterexample chains

struct SpecializeStep {
  std::map<int, RationalComplex> assignment;  // 0-based variable -> value
};
struct DiagonalStep {
  Subset vars = 0;
};
struct ReciprocalStep {
  Subset vars = 0;
};
struct AffineSubstituteStep {
  std::vector<int> vars;  // z_{vars[i]} = (z - c_i) / b_i
  std::vector<Rational> b;
  std::vector<Rational> c;
};

using StepParams = std::variant<SpecializeStep, DiagonalStep, ReciprocalStep, AffineSubstituteStep>;
using StepResult = std::variant<MultiAffine, Univariate>;

struct ChainStep {
  StepParams params;
  StepResult result;

  /// "specialize", "diagonal", "reciprocal" or "affine_substitute".
  std::string name() const;
};

/// Apply one chain step to the previous polynomial.
StepResult apply_step(const StepParams& params, const StepResult& input);

enum class CounterexampleKind { CaseI, CaseII };
const char* to_string(CounterexampleKind k);

/// A certificate that T_G fails to preserve stability: a certified-stable
/// input, its symmetrization F, and a chain of stability-preserving
/// specializations ending in a univariate polynomial with a root in H.
struct CounterexampleReport {
  PermutationGroup group;
  CounterexampleKind kind = CounterexampleKind::CaseI;

  Profile profile;               // minimal profile with >= 2 orbits
  Subset representative = 0;     // A
  std::vector<Subset> orbit;     // the orbit of A on subsets with this profile
  std::vector<int> block_sizes;  // s_1..s_r
  Rational binomial_product;     // prod over active blocks of binom(s_i, a_i)

  int m = 0;  // case (i): size of the supporting block
  int k = 0;  // case (i): |A|

  MultiAffine input_poly;   // prod_{v in A} (z_v + 1)
  MultiAffine symmetrized;  // F = T_G(input_poly)
  std::vector<ChainStep> chain;
  Univariate terminal;
  std::complex<double> terminal_root;

  std::optional<NewtonResult> newton;  // case (i)

  std::vector<int> kept_vars;  // case (ii): one variable per active block
  std::vector<Rational> b;     // case (ii)
  std::vector<Rational> c;     // case (ii)
  Rational C{0};               // case (ii): scale of the top monomial
  Rational D{0};               // case (ii): terminal constant

  bool closed_form_ok = false;
  std::vector<std::string> checks;  // description of each self-check that ran

  std::vector<std::complex<double>> boundary_point;  // zero of F in the closed half-plane
  std::optional<Witness> open_witness;                // zero of F in the open half-plane
};

/// Build the certificate chain for a group that is not orbit
/// homogeneous. Throws PreconditionError when G is orbit homogeneous.
/// `options` bounds the open-witness lifting search.
CounterexampleReport counterexample(const PermutationGroup& g, const SearchOptions& options = {});

struct ReplayResult {
  bool ok = true;
  std::string message;
};

/// Recompute F and every chain step from the stored input and compare
/// exactly; check the stored terminal root.
ReplayResult replay(const CounterexampleReport& report, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Coincidence counterexamples

struct DiagonalGrid {
  double re_min = -5.0;
  double re_max = 5.0;
  double im_min = 0.1;
  double im_max = 5.0;
  int steps = 100;
};

/// min over the grid of |f(zeta, ..., zeta)|.
double diagonal_gap(const MultiAffine& f, const DiagonalGrid& grid = {});

struct CoincidenceReport {
  enum class Kind { Nontransitive, SymbolWitness, ChainCertificateOnly };

  Kind kind = Kind::Nontransitive;
  MultiAffine f;                             // G-invariant polynomial violating coincidence
  std::vector<std::complex<double>> point;   // point of H^n with f(point) = 0
  double residual = 0.0;                     // |f(point)|
  double gap = 0.0;                          // diagonal_gap(f)
  Subset block_a = 0;                        // nontransitive split
  Subset block_b = 0;
  std::optional<CounterexampleReport> delegated;
  std::optional<Witness> symbol_witness;     // zero (z0, w0) of the operator symbol
};

const char* to_string(CoincidenceReport::Kind k);

/// Throws PreconditionError when G is homogeneous.
CoincidenceReport coincidence_counterexample(const PermutationGroup& g, const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Grace-likeness and surveys

/// CertifiedStable for products of orbit homogeneous symmetrizers; otherwise
/// searches the operator symbol and the circle-separated Ruelle form.
StabilityVerdict is_grace_like(const GroupAlgebraElement& u, const SearchOptions& options = {});

struct SurveyOptions {
  std::uint64_t symbol_budget = 100000;
  std::uint64_t product_budget = 10000;
  int product_count = 200;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  int max_degree = 5;
};

struct SubgroupRow {
  std::size_t index = 0;
  std::size_t order = 0;
  std::vector<std::string> generators;
  std::vector<int> orbit_sizes;
  bool transitive = false;
  bool homogeneous = false;
  bool orbit_homogeneous = false;
  bool factorization = false;

  bool symbol_witness_found = false;
  std::uint64_t symbol_budget_used = 0;
  int products_checked = 0;
  int product_witnesses = 0;

  std::optional<CounterexampleKind> counterexample_kind;
  bool counterexample_replayed = false;
  double terminal_root_im = 0.0;

  bool consistent = false;
  std::string note;
};

struct EquivalenceReport {
  int n = 0;
  SurveyOptions options;
  std::vector<SubgroupRow> rows;
  int oracle_disagreements = 0;
  int inconsistencies = 0;
};

/// Random product of linear factors z_v + c_v with Im c_v >= 0 (certified stable).
MultiAffine random_stable_product(int n, std::uint64_t seed);

EquivalenceReport verify_equivalence(int n, const SurveyOptions& options = {});

struct SemigroupEntry {
  std::size_t left = 0;
  std::size_t right = 0;
  VerdictKind verdict = VerdictKind::Unknown;
  bool symbol_witness = false;
  bool separated_witness = false;
};

struct SemigroupReport {
  std::vector<SemigroupEntry> entries;
  int unstable = 0;
  int falsifications = 0;  // any search witness on a certified product
};

/// For every ordered pair of (orbit homogeneous) groups: convolve their
/// symmetrizers, classify with is_grace_like and additionally run both
/// refutation searches at the given budget.
SemigroupReport semigroup_check(const std::vector<PermutationGroup>& groups, const SearchOptions& options = {});

}  // namespace stabsym
