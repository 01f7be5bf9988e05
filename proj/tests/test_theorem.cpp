#include <doctest.h>

#include <random>

#include "stabsym/error.hpp"
#include "stabsym/theorem.hpp"

using namespace stabsym;
using cd = std::complex<double>;

namespace {

Permutation cyc(const char* text, int n) { return Permutation::from_cycles(text, n); }
PermutationGroup gen(std::initializer_list<const char*> gens, int n) {
  std::vector<Permutation> ps;
  for (const char* g : gens) ps.push_back(cyc(g, n));
  return PermutationGroup::generate(ps, n);
}
RationalComplex q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return RationalComplex(r);
}
MultiAffine z(int n, int one_based) { return MultiAffine::variable(n, one_based - 1); }

MultiAffine random_poly(std::mt19937_64& rng, int n) {
  MultiAffine f(n);
  for (Subset s = 0; s < (Subset{1} << n); ++s) {
    if (rng() % 2) continue;
    f.add_term(s, RationalComplex(Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4)),
                                  Rational(static_cast<long>(rng() % 7) - 3)));
  }
  return f;
}

GroupAlgebraElement random_element(std::mt19937_64& rng, const PermutationGroup& s) {
  GroupAlgebraElement u(s.degree());
  for (const auto& p : s.elements()) {
    if (rng() % 3) continue;
    u.add(p, q(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)));
  }
  return u;
}

}  // namespace

TEST_CASE("symmetrizer elements") {
  const auto t2 = symmetrizer_element(PermutationGroup::symmetric(2));
  CHECK(t2.coefficient(Permutation::identity(2)) == q(1, 2));
  CHECK(t2.coefficient(cyc("(1 2)", 2)) == q(1, 2));
  CHECK(symmetrizer_element(PermutationGroup::trivial(3)) == GroupAlgebraElement::basis(Permutation::identity(3)));
  for (const auto& g : enumerate_subgroups(4)) {
    const auto t = symmetrizer_element(g);
    RationalComplex sum;
    for (const auto& [p, c] : t.coeffs()) sum += c;
    CHECK(sum == q(1));
  }
}

TEST_CASE("convolution") {
  const auto a = cyc("(1 2 3)", 4);
  const auto b = cyc("(3 4)", 4);
  CHECK(convolve(GroupAlgebraElement::basis(a), GroupAlgebraElement::basis(b)) ==
        GroupAlgebraElement::basis(compose(a, b)));
  for (const auto& g : enumerate_subgroups(4)) {
    const auto t = symmetrizer_element(g);
    CHECK(convolve(t, t) == t);
  }
  const auto s1 = symmetrizer_element(PermutationGroup::symmetric_on(0b0011, 4));
  const auto s2 = symmetrizer_element(PermutationGroup::symmetric_on(0b1100, 4));
  CHECK(convolve(s1, s2) == convolve(s2, s1));
  CHECK(convolve(s1, s2) == symmetrizer_element(gen({"(1 2)", "(3 4)"}, 4)));
}

TEST_CASE("convolution is operator composition") {
  std::mt19937_64 rng(31);
  const auto s4 = PermutationGroup::symmetric(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_element(rng, s4);
    const auto v = random_element(rng, s4);
    const auto f = random_poly(rng, 4);
    CHECK(apply_element(convolve(u, v), f) == apply_element(u, apply_element(v, f)));
  }
}

TEST_CASE("apply_element") {
  std::mt19937_64 rng(32);
  const auto f = random_poly(rng, 4);
  for (const auto& g : enumerate_subgroups(4)) CHECK(apply_element(symmetrizer_element(g), f) == symmetrize(g, f));
  CHECK(apply_element(GroupAlgebraElement::basis(Permutation::identity(4)), f) == f);
  GroupAlgebraElement zero_sum(3);
  zero_sum.add(Permutation::identity(3), q(1));
  zero_sum.add(cyc("(1 2 3)", 3), q(-1));
  CHECK(apply_element(zero_sum, MultiAffine::constant(3, q(1))).is_zero());
}

TEST_CASE("operator symbols") {
  // Variables: z1 z2 w1 w2.
  const auto id = operator_symbol(GroupAlgebraElement::basis(Permutation::identity(2)));
  CHECK(id.poly == (z(4, 1) + z(4, 3)) * (z(4, 2) + z(4, 4)));
  const auto t2 = operator_symbol(symmetrizer_element(PermutationGroup::symmetric(2)));
  const auto expected = z(4, 1) * z(4, 2) + z(4, 3) * z(4, 4) + (z(4, 1) + z(4, 2)) * (z(4, 3) + z(4, 4)) * q(1, 2);
  CHECK(t2.poly == expected);
  std::mt19937_64 rng(33);
  const auto s3 = PermutationGroup::symmetric(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_element(rng, s3);
    RationalComplex sum;
    for (const auto& [p, c] : u.coeffs()) sum += c;
    CHECK(operator_symbol(u).poly.coefficient(0b000111) == sum);
  }
}

TEST_CASE("deciders") {
  CHECK(preserves_stability(PermutationGroup::symmetric(4)));
  CHECK_FALSE(preserves_stability(gen({"(1 2 3 4)"}, 4)));
  CHECK(preserves_stability(gen({"(1 2)"}, 3)));
  CHECK(factorization_check(gen({"(1 2)(4 5)", "(1 2 3)"}, 5)));
  CHECK_FALSE(factorization_check(gen({"(1 2)(3 4)"}, 4)));
  CHECK(factorization_check(PermutationGroup::trivial(1)));
  CHECK(has_coincidence_property(PermutationGroup::symmetric(4)));
  CHECK_FALSE(has_coincidence_property(gen({"(1 2)"}, 3)));
  CHECK(has_coincidence_property(PermutationGroup::alternating(4)));
}

TEST_CASE("double oracle on small subgroups") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& g : enumerate_subgroups(n)) {
      CHECK(is_orbit_homogeneous(g) == factorization_check(g));
      CHECK(has_coincidence_property(g) == (g.orbits().r() == 1 && is_orbit_homogeneous(g)));
    }
  }
}

TEST_CASE("case (i) report for C_4") {
  const auto r = counterexample(gen({"(1 2 3 4)"}, 4));
  CHECK(r.kind == CounterexampleKind::CaseI);
  CHECK(r.profile.counts == std::vector<int>{2});
  CHECK(r.representative == 0b0101);
  CHECK(r.orbit.size() == 2);
  CHECK(r.m == 4);
  CHECK(r.k == 2);
  CHECK(r.terminal == Univariate::from_exact({q(1), q(1), q(1, 2)}));
  CHECK(std::abs(r.terminal_root - cd(-1, 1)) < 1e-9);
  REQUIRE(r.newton);
  CHECK_FALSE(r.newton->pass);
  CHECK(r.closed_form_ok);
  CHECK(replay(r).ok);
  REQUIRE(r.open_witness);
  CHECK(witness_valid(r.symmetrized, *r.open_witness, kDefaultTol));
}

TEST_CASE("case (ii) report for the double transposition") {
  const auto r = counterexample(gen({"(1 2)(3 4)"}, 4));
  CHECK(r.kind == CounterexampleKind::CaseII);
  CHECK(r.profile.counts == std::vector<int>{1, 1});
  CHECK(r.kept_vars.size() == 2);
  CHECK(r.terminal == Univariate::from_exact({q(1, 4), q(0), q(1)}));
  CHECK(r.C == 1);
  CHECK(r.D == Rational(1, 4));
  CHECK(r.b == std::vector<Rational>{Rational(1), Rational(1)});
  CHECK(r.c == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(std::abs(r.terminal_root - cd(0, 0.5)) < 1e-9);
  CHECK(r.closed_form_ok);
  CHECK(replay(r).ok);
}

TEST_CASE("every failing subgroup of S_4 has a replayable certificate") {
  for (const auto& g : enumerate_subgroups(4)) {
    if (is_orbit_homogeneous(g)) {
      CHECK_THROWS_AS(counterexample(g), PreconditionError);
      continue;
    }
    const auto r = counterexample(g);
    CHECK(replay(r).ok);
    CHECK(r.closed_form_ok);
    CHECK(r.terminal_root.imag() > kDefaultTol);
    CHECK(std::abs(r.terminal.evaluate(r.terminal_root)) < 1e-9);
    if (r.kind == CounterexampleKind::CaseII) {
      CHECK(sgn(r.C) > 0);
      for (const auto& b : r.b) CHECK(sgn(b) > 0);
      for (const auto& c : r.c) CHECK(sgn(c) > 0);
      const Rational expected = r.C * (Rational(1, static_cast<long>(r.orbit.size())) - 1 / r.binomial_product);
      CHECK(r.terminal.exact()->front().re() == expected);
    }
  }
}

TEST_CASE("tampered chains fail replay") {
  auto r = counterexample(gen({"(1 2 3 4)"}, 4));
  r.symmetrized.add_term(0, q(1));
  CHECK_FALSE(replay(r).ok);
}

TEST_CASE("coincidence counterexamples") {
  const auto r = coincidence_counterexample(gen({"(1 2)"}, 3));
  CHECK(r.kind == CoincidenceReport::Kind::Nontransitive);
  CHECK(r.f == (z(3, 1) + z(3, 2)) * q(1, 2) - z(3, 3) * RationalComplex::i());
  CHECK(r.residual < 1e-12);
  CHECK(r.gap > 0.1);
  CHECK(std::abs(r.f.evaluate(std::vector<cd>{{0, 1}, {0, 1}, {0, 1}}) - cd(1, 1)) < 1e-12);

  const auto c = coincidence_counterexample(gen({"(1 2 3 4)"}, 4));
  REQUIRE(c.delegated);
  CHECK(c.delegated->kind == CounterexampleKind::CaseI);
  if (c.kind == CoincidenceReport::Kind::SymbolWitness) {
    CHECK(is_invariant(gen({"(1 2 3 4)"}, 4), c.f));
    for (const auto& x : c.point) CHECK(x.imag() > 0);
  }
  CHECK_THROWS_AS(coincidence_counterexample(PermutationGroup::symmetric(3)), PreconditionError);
}

TEST_CASE("Grace-likeness") {
  CHECK(is_grace_like(symmetrizer_element(PermutationGroup::symmetric(3))).kind == VerdictKind::CertifiedStable);
  CHECK(is_grace_like(GroupAlgebraElement::basis(Permutation::identity(3))).kind == VerdictKind::CertifiedStable);
  const auto c4 = is_grace_like(symmetrizer_element(gen({"(1 2 3 4)"}, 4)), {100000, 0, kDefaultTol});
  CHECK(c4.kind == VerdictKind::Unstable);
}

TEST_CASE("survey of S_3") {
  const auto report = verify_equivalence(3, {20000, 2000, 20, 0, kDefaultTol, 5});
  CHECK(report.rows.size() == 6);
  CHECK(report.oracle_disagreements == 0);
  CHECK(report.inconsistencies == 0);
  for (const auto& row : report.rows) CHECK(row.orbit_homogeneous);
}

TEST_CASE("semigroup products") {
  const auto left = PermutationGroup::symmetric_on(0b0011, 4);
  const auto right = PermutationGroup::symmetric_on(0b1100, 4);
  const auto prod = convolve(symmetrizer_element(left), symmetrizer_element(right));
  CHECK(prod == symmetrizer_element(gen({"(1 2)", "(3 4)"}, 4)));
  CHECK(is_grace_like(prod).kind == VerdictKind::CertifiedStable);

  const auto s4 = PermutationGroup::symmetric(4);
  const auto r = semigroup_check({s4, PermutationGroup::alternating(4), PermutationGroup::symmetric_on(0b0111, 4)},
                                 {10000, 0, kDefaultTol});
  CHECK(r.entries.size() == 9);
  CHECK(r.unstable == 0);
  CHECK(r.falsifications == 0);
  CHECK_THROWS_AS(semigroup_check({gen({"(1 2 3 4)"}, 4)}), PreconditionError);
}
