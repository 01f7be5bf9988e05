#include "stabsym/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "stabsym/error.hpp"

namespace stabsym {

using cd = std::complex<double>;

namespace {

Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::complex<double> top_root(const std::vector<cd>& roots) {
  return *std::max_element(roots.begin(), roots.end(), [](const cd& a, const cd& b) { return a.imag() < b.imag(); });
}

/// Sum over all B with the same profile as S of z^B, divided by the number of such B.
void add_profile_average(MultiAffine& out, Subset s, const RationalComplex& c, const OrbitPartition& orbits) {
  const int n = out.nvars();
  const Profile target = profile_of(s, orbits);
  std::vector<Subset> hits;
  for (Subset b = 0; b < (Subset{1} << n); ++b) {
    if (popcount(b) == popcount(s) && profile_of(b, orbits) == target) hits.push_back(b);
  }
  const RationalComplex share = c / RationalComplex(rat(static_cast<long>(hits.size())));
  for (Subset b : hits) out.add_term(b, share);
}

MultiAffine restrict_to_first(const MultiAffine& f, int n) {
  MultiAffine out(n);
  const Subset keep = (Subset{1} << n) - 1;
  for (const auto& [s, c] : f.terms()) {
    if (s & ~keep) throw PreconditionError("restrict_to_first: polynomial involves dropped variables");
    out.add_term(s, c);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Deciders

bool preserves_stability(const PermutationGroup& g) { return is_orbit_homogeneous(g); }

bool factorization_check(const PermutationGroup& g) {
  const int n = g.degree();
  if (n > kMaxSubsetDegree) throw PreconditionError("factorization_check: degree too large");
  // T_G by direct summation over group elements; the orbit-symmetrizer
  // product averages z^S over every subset with the same profile.
  GroupAlgebraElement t(n);
  const RationalComplex share(rat(1, static_cast<long>(g.order())));
  for (const auto& s : g.elements()) t.add(s, share);
  const OrbitPartition& orbits = g.orbits();
  for (Subset s = 0; s < (Subset{1} << n); ++s) {
    const MultiAffine mono = MultiAffine::monomial(n, s);
    MultiAffine composed(n);
    add_profile_average(composed, s, RationalComplex(1), orbits);
    if (!(apply_element(t, mono) == composed)) return false;
  }
  return true;
}

bool has_coincidence_property(const PermutationGroup& g) { return is_homogeneous(g); }

// ---------------------------------------------------------------------------
// Chains

std::string ChainStep::name() const {
  struct Visitor {
    std::string operator()(const SpecializeStep&) const { return "specialize"; }
    std::string operator()(const DiagonalStep&) const { return "diagonal"; }
    std::string operator()(const ReciprocalStep&) const { return "reciprocal"; }
    std::string operator()(const AffineSubstituteStep&) const { return "affine_substitute"; }
  };
  return std::visit(Visitor{}, params);
}

StepResult apply_step(const StepParams& params, const StepResult& input) {
  const auto* multi = std::get_if<MultiAffine>(&input);
  if (const auto* p = std::get_if<SpecializeStep>(&params)) {
    if (!multi) throw PreconditionError("specialize: expected a multiaffine polynomial");
    return specialize(*multi, p->assignment);
  }
  if (const auto* p = std::get_if<DiagonalStep>(&params)) {
    if (!multi) throw PreconditionError("diagonal: expected a multiaffine polynomial");
    return diagonal_univariate(*multi, p->vars);
  }
  if (const auto* p = std::get_if<ReciprocalStep>(&params)) {
    if (multi) return reciprocal(*multi, p->vars);
    return reciprocal(std::get<Univariate>(input));
  }
  const auto& p = std::get<AffineSubstituteStep>(params);
  if (!multi) throw PreconditionError("affine_substitute: expected a multiaffine polynomial");
  return affine_substitute(*multi, p.vars, p.b, p.c);
}

const char* to_string(CounterexampleKind k) { return k == CounterexampleKind::CaseI ? "case-i" : "case-ii"; }

namespace {

void push_step(CounterexampleReport& r, StepParams params) {
  const StepResult& prev = r.chain.empty() ? StepResult(r.symmetrized) : r.chain.back().result;
  StepResult next = apply_step(params, prev);
  r.chain.push_back({std::move(params), std::move(next)});
}

void finish_terminal(CounterexampleReport& r) {
  r.terminal = std::get<Univariate>(r.chain.back().result);
  r.terminal_root = top_root(roots_univariate(r.terminal));
}

void build_case_i(CounterexampleReport& r, int block) {
  const int n = r.group.degree();
  const Subset a = r.representative;
  const Subset s1 = r.group.orbits().block_mask(block);
  r.m = r.block_sizes[static_cast<std::size_t>(block)];
  r.k = popcount(a);
  const Rational orbit_size = rat(static_cast<long>(r.orbit.size()));

  std::map<int, RationalComplex> zeros;
  for (int v = 0; v < n; ++v) {
    if (!(a & bit(v))) zeros.emplace(v, RationalComplex(0));
  }
  push_step(r, SpecializeStep{zeros});
  push_step(r, DiagonalStep{a});
  finish_terminal(r);
  r.newton = newton_check(r.terminal);

  // F = (1/|K|) sum_{S in K} z^S + sum_{j<k} binom(k,j)/binom(m,j) e_j(S_1)
  MultiAffine expected_f(n);
  for (Subset s : r.orbit) expected_f.add_term(s, RationalComplex(1 / orbit_size));
  for (int j = 0; j < r.k; ++j) {
    expected_f += elementary_symmetric(s1, j, n) * RationalComplex(binomial(r.k, j) / binomial(r.m, j));
  }
  const bool f_ok = expected_f == r.symmetrized;
  r.checks.push_back(std::string("F matches the induction-hypothesis form: ") + (f_ok ? "yes" : "no"));

  std::vector<RationalComplex> p(static_cast<std::size_t>(r.k + 1));
  for (int j = 0; j < r.k; ++j) {
    const Rational bk = binomial(r.k, j);
    p[static_cast<std::size_t>(j)] = RationalComplex(bk * bk / binomial(r.m, j));
  }
  p[static_cast<std::size_t>(r.k)] = RationalComplex(1 / orbit_size);
  const bool p_ok = Univariate::from_exact(p) == r.terminal;
  r.checks.push_back(std::string("p(t) matches the closed form: ") + (p_ok ? "yes" : "no"));
  r.checks.push_back(std::string("Newton inequalities: ") +
                     (r.newton->pass ? "pass" : "fail at j=" + std::to_string(r.newton->violated_index)));
  r.closed_form_ok = f_ok && p_ok && !r.newton->pass;

  r.boundary_point.assign(static_cast<std::size_t>(n), cd(0.0, 0.0));
  for (int v : points_of(a)) r.boundary_point[static_cast<std::size_t>(v)] = r.terminal_root;
}

void build_case_ii(CounterexampleReport& r, const std::vector<int>& active) {
  const int n = r.group.degree();
  const Subset a = r.representative;
  const OrbitPartition& orbits = r.group.orbits();
  const Rational orbit_size = rat(static_cast<long>(r.orbit.size()));

  std::map<int, RationalComplex> zeros;
  for (int v = 0; v < n; ++v) {
    if (!(a & bit(v))) zeros.emplace(v, RationalComplex(0));
  }
  push_step(r, SpecializeStep{zeros});

  std::map<int, RationalComplex> ones;
  Subset kept = 0;
  for (int i : active) {
    const auto pts = points_of(a & orbits.block_mask(i));
    r.kept_vars.push_back(pts.front());
    kept |= bit(pts.front());
    for (std::size_t q = 1; q < pts.size(); ++q) ones.emplace(pts[q], RationalComplex(1));
  }
  push_step(r, SpecializeStep{ones});
  const MultiAffine h = std::get<MultiAffine>(r.chain.back().result);

  for (int i : active) {
    const int ai = r.profile.counts[static_cast<std::size_t>(i)];
    const int si = r.block_sizes[static_cast<std::size_t>(i)];
    Rational b(0);
    Rational c(0);
    for (int j = 0; j <= ai; ++j) {
      const Rational w = binomial(ai, j) / binomial(si, j);
      b += w * binomial(ai - 1, j);
      c += w * binomial(ai - 1, j - 1);
    }
    r.b.push_back(b);
    r.c.push_back(c);
  }
  r.D = 1 / orbit_size - 1 / r.binomial_product;

  // H = prod (b_i + c_i z_i) + C (1/|K| - 1/prod binom) z_1...z_p; C is read
  // off as the top coefficient after removing the product part.
  MultiAffine prod = MultiAffine::constant(n, RationalComplex(1));
  for (std::size_t q = 0; q < r.kept_vars.size(); ++q) {
    prod = prod * (MultiAffine::constant(n, RationalComplex(r.b[q])) +
                   MultiAffine::monomial(n, bit(r.kept_vars[q]), RationalComplex(r.c[q])));
  }
  const MultiAffine rest = h - prod;
  const Rational scale = 1 / orbit_size - 1 / r.binomial_product;
  r.C = rest.coefficient(kept).re() / scale;
  const bool h_ok = rest == MultiAffine::monomial(n, kept, RationalComplex(Rational(r.C * scale)));
  r.checks.push_back(std::string("H has the product-plus-top-term shape: ") + (h_ok ? "yes" : "no"));

  // F = prod F_i(S_i) + (1/|K|) sum_{B in K} z^B - prod e_{a_i}(S_i)/binom(s_i,a_i)
  MultiAffine f_prod = MultiAffine::constant(n, RationalComplex(1));
  MultiAffine e_prod = MultiAffine::constant(n, RationalComplex(1));
  for (int i : active) {
    const int ai = r.profile.counts[static_cast<std::size_t>(i)];
    const int si = r.block_sizes[static_cast<std::size_t>(i)];
    const Subset si_mask = orbits.block_mask(i);
    MultiAffine fi(n);
    for (int j = 0; j <= ai; ++j) {
      fi += elementary_symmetric(si_mask, j, n) * RationalComplex(binomial(ai, j) / binomial(si, j));
    }
    f_prod = f_prod * fi;
    e_prod = e_prod * (elementary_symmetric(si_mask, ai, n) * RationalComplex(1 / binomial(si, ai)));
  }
  MultiAffine expected_f = f_prod - e_prod;
  for (Subset s : r.orbit) expected_f.add_term(s, RationalComplex(1 / orbit_size));
  const bool f_ok = expected_f == r.symmetrized;
  r.checks.push_back(std::string("F matches the induction-hypothesis form: ") + (f_ok ? "yes" : "no"));

  push_step(r, ReciprocalStep{kept});
  push_step(r, AffineSubstituteStep{r.kept_vars, r.b, r.c});
  finish_terminal(r);

  const int p = static_cast<int>(active.size());
  std::vector<RationalComplex> expected_t(static_cast<std::size_t>(p + 1));
  expected_t[0] = RationalComplex(Rational(r.C * scale));
  expected_t[static_cast<std::size_t>(p)] = RationalComplex(1);
  const bool t_ok = Univariate::from_exact(expected_t) == r.terminal;
  r.checks.push_back(std::string("terminal is z^p + C(1/|K| - 1/prod binom): ") + (t_ok ? "yes" : "no"));

  const bool positive = sgn(r.C) > 0 && std::all_of(r.b.begin(), r.b.end(), [](const Rational& x) { return sgn(x) > 0; }) &&
                        std::all_of(r.c.begin(), r.c.end(), [](const Rational& x) { return sgn(x) > 0; });
  r.checks.push_back(std::string("b_i, c_i, C strictly positive: ") + (positive ? "yes" : "no"));
  r.closed_form_ok = h_ok && f_ok && t_ok && positive && r.D == Rational(r.C * scale);

  // Undo the chain: z_i = (r - c_i)/b_i solves the reciprocal form, so the
  // original variable is 1/z_i. Conjugate when that lands below the axis.
  r.boundary_point.assign(static_cast<std::size_t>(n), cd(0.0, 0.0));
  for (const auto& [v, one] : ones) r.boundary_point[static_cast<std::size_t>(v)] = cd(1.0, 0.0);
  bool below = false;
  for (std::size_t q = 0; q < r.kept_vars.size(); ++q) {
    const cd y = (r.terminal_root - r.c[q].get_d()) / r.b[q].get_d();
    const cd x = 1.0 / y;
    if (x.imag() < 0.0) below = true;
    r.boundary_point[static_cast<std::size_t>(r.kept_vars[q])] = x;
  }
  if (below) {
    for (auto& x : r.boundary_point) x = std::conj(x);
  }
}

}  // namespace

CounterexampleReport counterexample(const PermutationGroup& g, const SearchOptions& options) {
  if (is_orbit_homogeneous(g)) throw PreconditionError("orbit homogeneous: symmetrizer preserves stability");
  const auto by_profile = subset_orbits_by_profile(g);

  // Minimal total first; the map iterates profiles lexicographically.
  const std::pair<const Profile, std::vector<SubsetOrbit>>* bad = nullptr;
  for (const auto& entry : by_profile) {
    if (entry.second.size() < 2) continue;
    if (!bad || entry.first.total() < bad->first.total()) bad = &entry;
  }

  CounterexampleReport r;
  r.group = g;
  r.profile = bad->first;
  r.block_sizes = g.orbits().block_sizes();

  const SubsetOrbit* chosen = nullptr;
  for (const auto& o : bad->second) {
    if (!chosen || o.size() < chosen->size() || (o.size() == chosen->size() && lex_less(o.lex_min(), chosen->lex_min()))) {
      chosen = &o;
    }
  }
  r.representative = chosen->lex_min();
  r.orbit = chosen->members;

  std::vector<int> active;
  r.binomial_product = Rational(1);
  for (int i = 0; i < static_cast<int>(r.profile.counts.size()); ++i) {
    const int ai = r.profile.counts[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    active.push_back(i);
    r.binomial_product *= binomial(r.block_sizes[static_cast<std::size_t>(i)], ai);
  }

  const int n = g.degree();
  std::vector<std::pair<int, RationalComplex>> factors;
  for (int v : points_of(r.representative)) factors.emplace_back(v, RationalComplex(1));
  r.input_poly = product_linear(n, factors);
  r.symmetrized = symmetrize(g, r.input_poly);

  if (active.size() == 1) {
    r.kind = CounterexampleKind::CaseI;
    build_case_i(r, active.front());
  } else {
    r.kind = CounterexampleKind::CaseII;
    build_case_ii(r, active);
  }

  r.open_witness = lift_to_open(r.symmetrized, r.boundary_point, options);
  return r;
}

ReplayResult replay(const CounterexampleReport& report, double tol) {
  auto fail = [](std::string why) { return ReplayResult{false, std::move(why)}; };
  const int n = report.group.degree();

  std::vector<std::pair<int, RationalComplex>> factors;
  for (int v : points_of(report.representative)) factors.emplace_back(v, RationalComplex(1));
  if (!(product_linear(n, factors) == report.input_poly)) return fail("input polynomial differs");
  if (!report.input_poly.certified_stable()) return fail("input polynomial carries no stability certificate");
  if (!(symmetrize(report.group, report.input_poly) == report.symmetrized)) return fail("symmetrized polynomial differs");
  if (report.chain.empty()) return fail("empty chain");

  StepResult current = report.symmetrized;
  for (std::size_t i = 0; i < report.chain.size(); ++i) {
    StepResult next = apply_step(report.chain[i].params, current);
    if (next.index() != report.chain[i].result.index()) return fail("step " + std::to_string(i) + " changes kind");
    const bool same = std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          return x == std::get<T>(report.chain[i].result);
        },
        next);
    if (!same) return fail("step " + std::to_string(i) + " (" + report.chain[i].name() + ") differs");
    current = std::move(next);
  }
  const auto* terminal = std::get_if<Univariate>(&current);
  if (!terminal || !(*terminal == report.terminal)) return fail("terminal polynomial differs");
  const double value = static_cast<double>(std::abs(
      report.terminal.evaluate_ld({report.terminal_root.real(), report.terminal_root.imag()})));
  if (!(value < tol)) return fail("terminal root residual too large");
  if (!(report.terminal_root.imag() > tol)) return fail("terminal root is not in the open upper half-plane");
  return {};
}

// ---------------------------------------------------------------------------
// Coincidence

double diagonal_gap(const MultiAffine& f, const DiagonalGrid& grid) {
  std::vector<cd> diag(static_cast<std::size_t>(f.nvars() + 1));
  for (const auto& [s, c] : f.terms()) diag[static_cast<std::size_t>(popcount(s))] += c.to_complex();
  const int steps = std::max(grid.steps, 2);
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < steps; ++a) {
    const double re = grid.re_min + (grid.re_max - grid.re_min) * a / (steps - 1);
    for (int b = 0; b < steps; ++b) {
      const double im = grid.im_min + (grid.im_max - grid.im_min) * b / (steps - 1);
      const cd z(re, im);
      cd v = 0.0;
      for (auto it = diag.rbegin(); it != diag.rend(); ++it) v = v * z + *it;
      best = std::min(best, std::abs(v));
    }
  }
  return best;
}

const char* to_string(CoincidenceReport::Kind k) {
  switch (k) {
    case CoincidenceReport::Kind::Nontransitive: return "nontransitive";
    case CoincidenceReport::Kind::SymbolWitness: return "symbol-witness";
    case CoincidenceReport::Kind::ChainCertificateOnly: return "chain certificate only";
  }
  return "nontransitive";
}

CoincidenceReport coincidence_counterexample(const PermutationGroup& g, const SearchOptions& options) {
  if (is_homogeneous(g)) throw PreconditionError("homogeneous group: coincidence property holds");
  const int n = g.degree();
  const OrbitPartition& orbits = g.orbits();
  CoincidenceReport r;

  if (orbits.r() > 1) {
    r.kind = CoincidenceReport::Kind::Nontransitive;
    r.block_a = orbits.block_mask(0);
    r.block_b = ((Subset{1} << n) - 1) & ~r.block_a;
    const Rational ka = rat(popcount(r.block_a));
    const Rational kb = rat(popcount(r.block_b));
    r.f = MultiAffine(n);
    r.point.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      if (r.block_a & bit(v)) {
        r.f.add_term(bit(v), RationalComplex(1 / ka));
        r.point[static_cast<std::size_t>(v)] = cd(-1.0, 1.0);
      } else {
        r.f.add_term(bit(v), RationalComplex(Rational(0), Rational(-1 / kb)));
        r.point[static_cast<std::size_t>(v)] = cd(1.0, 1.0);
      }
    }
    r.residual = static_cast<double>(std::abs(r.f.evaluate_ld(r.point)));
    r.gap = diagonal_gap(r.f);
    return r;
  }

  // Transitive: G is not orbit homogeneous, so the symbol F(z, w) has a zero
  // (z0, w0) in H^2n and F(., w0) is a G-invariant counterexample.
  r.delegated = counterexample(g, options);
  const MultiAffine symbol = operator_symbol(symmetrizer_element(g)).poly;
  r.symbol_witness = refute(symbol, options);
  if (!r.symbol_witness) {
    r.kind = CoincidenceReport::Kind::ChainCertificateOnly;
    return r;
  }
  r.kind = CoincidenceReport::Kind::SymbolWitness;
  const auto& coords = r.symbol_witness->point.coords;
  std::map<int, RationalComplex> w0;
  for (int j = 0; j < n; ++j) w0.emplace(n + j, RationalComplex::from_complex(coords[static_cast<std::size_t>(n + j)]));
  r.f = restrict_to_first(specialize(symbol, w0), n);
  r.point.assign(coords.begin(), coords.begin() + n);
  r.residual = static_cast<double>(std::abs(r.f.evaluate_ld(r.point)));
  r.gap = diagonal_gap(r.f);
  return r;
}

// ---------------------------------------------------------------------------
// Grace-likeness

StabilityVerdict is_grace_like(const GroupAlgebraElement& u, const SearchOptions& options) {
  StabilityVerdict v;
  v.budget = options.budget;
  v.seed = options.seed;
  v.tol = options.tol;
  if (u.is_zero()) {
    v.kind = VerdictKind::CertifiedStable;
    v.certificate = "zero operator";
    return v;
  }
  if (u.certificate()) {
    v.kind = VerdictKind::CertifiedStable;
    v.certificate = *u.certificate();
    return v;
  }
  const int n = u.degree();
  if (n <= kMaxGroupDegree) {
    const auto h = PermutationGroup::generate(u.support(), n);
    if (h.order() == u.coeffs().size()) {
      const GroupAlgebraElement t = symmetrizer_element(h);
      if (t == u && t.certificate()) {
        v.kind = VerdictKind::CertifiedStable;
        v.certificate = *t.certificate();
        return v;
      }
    }
  }

  const SearchOptions symbol_opts{options.budget, derive_seed(options.seed, 0), options.tol};
  const auto outcome = refute_search(operator_symbol(u).poly, symbol_opts);
  v.budget_used = outcome.used;
  if (outcome.witness) {
    v.kind = VerdictKind::Unstable;
    v.witness = outcome.witness;
    return v;
  }
  const SearchOptions grace_opts{options.budget, derive_seed(options.seed, 1), options.tol};
  if (auto gw = grace_refute_separated(ruelle_form(u).poly, n, grace_opts)) {
    v.kind = VerdictKind::Unstable;
    v.grace_witness = std::move(gw);
    v.budget_used += options.budget;
    return v;
  }
  v.budget_used += options.budget;
  v.kind = VerdictKind::Unknown;
  return v;
}

// ---------------------------------------------------------------------------
// Survey

MultiAffine random_stable_product(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Subset vars = 0;
  while (vars == 0) {
    for (int v = 0; v < n; ++v) {
      if (rng() & 1U) vars |= bit(v);
    }
  }
  std::vector<std::pair<int, RationalComplex>> factors;
  for (int v : points_of(vars)) {
    const long re = static_cast<long>(rng() % 25) - 12;  // [-3, 3] in steps of 1/4
    const long im = static_cast<long>(rng() % 13);       // [0, 3]
    factors.emplace_back(v, RationalComplex(rat(re, 4), rat(im, 4)));
  }
  return product_linear(n, factors);
}

EquivalenceReport verify_equivalence(int n, const SurveyOptions& options) {
  if (n < 1 || n > options.max_degree || n > kMaxSubgroupEnumerationDegree) {
    throw PreconditionError("verify_equivalence: degree " + std::to_string(n) + " exceeds the guard");
  }
  EquivalenceReport report;
  report.n = n;
  report.options = options;

  const auto groups = enumerate_subgroups(n);
  for (std::size_t idx = 0; idx < groups.size(); ++idx) {
    const auto& g = groups[idx];
    const std::uint64_t seed = derive_seed(options.seed, idx);
    SubgroupRow row;
    row.index = idx;
    row.order = g.order();
    for (const auto& s : g.generators()) row.generators.push_back(s.to_cycles());
    row.orbit_sizes = g.orbits().block_sizes();
    row.transitive = g.orbits().r() == 1;
    row.homogeneous = is_homogeneous(g);
    row.orbit_homogeneous = is_orbit_homogeneous(g);
    row.factorization = factorization_check(g);
    if (row.orbit_homogeneous != row.factorization) ++report.oracle_disagreements;

    bool ok = row.orbit_homogeneous == row.factorization &&
              row.homogeneous == (row.transitive && row.orbit_homogeneous);

    const MultiAffine symbol = operator_symbol(symmetrizer_element(g)).poly;
    const auto outcome = refute_search(symbol, {options.symbol_budget, derive_seed(seed, 0), options.tol});
    row.symbol_witness_found = outcome.witness.has_value();
    row.symbol_budget_used = outcome.used;
    if (outcome.witness && !witness_valid(symbol, *outcome.witness, options.tol)) ok = false;

    if (row.orbit_homogeneous) {
      if (row.symbol_witness_found) {
        ok = false;
        row.note = "witness on the symbol of an orbit homogeneous group";
      }
      for (int k = 0; k < options.product_count; ++k) {
        const std::uint64_t pseed = derive_seed(seed, 1000 + static_cast<std::uint64_t>(k));
        const MultiAffine image = symmetrize(g, random_stable_product(n, pseed));
        ++row.products_checked;
        if (refute(image, {options.product_budget, pseed, options.tol})) ++row.product_witnesses;
      }
      if (row.product_witnesses > 0) {
        ok = false;
        row.note = "witness on a symmetrized certified product";
      }
    } else {
      const auto cex = counterexample(g, {options.product_budget, derive_seed(seed, 1), options.tol});
      row.counterexample_kind = cex.kind;
      row.counterexample_replayed = replay(cex, options.tol).ok && cex.closed_form_ok;
      row.terminal_root_im = cex.terminal_root.imag();
      if (!row.counterexample_replayed || !row.symbol_witness_found) {
        ok = false;
        row.note = row.symbol_witness_found ? "counterexample failed to replay" : "no witness on the symbol within budget";
      }
    }
    row.consistent = ok;
    if (!ok) ++report.inconsistencies;
    report.rows.push_back(std::move(row));
  }
  return report;
}

SemigroupReport semigroup_check(const std::vector<PermutationGroup>& groups, const SearchOptions& options) {
  for (const auto& g : groups) {
    if (!is_orbit_homogeneous(g)) throw PreconditionError("semigroup_check: every group must be orbit homogeneous");
  }
  SemigroupReport report;
  std::vector<GroupAlgebraElement> sym;
  sym.reserve(groups.size());
  for (const auto& g : groups) sym.push_back(symmetrizer_element(g));

  std::uint64_t pair = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < groups.size(); ++j, ++pair) {
      if (groups[i].degree() != groups[j].degree()) throw PreconditionError("semigroup_check: degree mismatch");
      const GroupAlgebraElement u = convolve(sym[i], sym[j]);
      const std::uint64_t seed = derive_seed(options.seed, pair);
      SemigroupEntry e;
      e.left = i;
      e.right = j;
      e.verdict = is_grace_like(u, {options.budget, seed, options.tol}).kind;
      // The certificate short-circuits is_grace_like, so search explicitly too.
      e.symbol_witness = refute(operator_symbol(u).poly, {options.budget, derive_seed(seed, 0), options.tol}).has_value();
      e.separated_witness = grace_refute_separated(ruelle_form(u).poly, u.degree(),
                                                   {options.budget, derive_seed(seed, 1), options.tol})
                                .has_value();
      if (e.verdict == VerdictKind::Unstable) ++report.unstable;
      if (e.symbol_witness || e.separated_witness) ++report.falsifications;
      report.entries.push_back(e);
    }
  }
  return report;
}

}  // namespace stabsym
