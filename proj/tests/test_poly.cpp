#include <doctest.h>

#include <random>

#include "stabsym/error.hpp"
#include "stabsym/group.hpp"
#include "stabsym/poly.hpp"

using namespace stabsym;
using cd = std::complex<double>;

namespace {

Permutation cyc(const char* text, int n) { return Permutation::from_cycles(text, n); }
Subset pts(std::initializer_list<int> one_based, int n) { return subset_from_points(one_based, n); }
RationalComplex q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return RationalComplex(r);
}
MultiAffine z(int n, int one_based) { return MultiAffine::variable(n, one_based - 1); }
MultiAffine one(int n) { return MultiAffine::constant(n, RationalComplex(1)); }

MultiAffine random_poly(std::mt19937_64& rng, int n) {
  MultiAffine f(n);
  for (Subset s = 0; s < (Subset{1} << n); ++s) {
    if (rng() % 2) continue;
    f.add_term(s, RationalComplex(Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 6)),
                                  Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3))));
  }
  return f;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(format_rational(Rational(0)) == "0/1");
  CHECK(format_rational(parse_rational("4")) == "4/1");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK(rational_from_double(0.375) == Rational(3, 8));
  CHECK(RationalComplex::i() * RationalComplex::i() == RationalComplex(-1));
  CHECK_THROWS_AS(RationalComplex(1) / RationalComplex(0), PreconditionError);
}

TEST_CASE("evaluation") {
  const auto f = z(2, 1) * z(2, 2) + one(2);
  const std::vector<cd> ii{{0, 1}, {0, 1}};
  CHECK(std::abs(f.evaluate(ii)) == 0.0);
  const std::vector<cd> p{{0, 1}, {0, 2}};
  CHECK(std::abs((z(2, 1) + z(2, 2)).evaluate(p) - cd(0, 3)) < 1e-15);
  CHECK(MultiAffine(2).evaluate(p) == cd(0, 0));
  const std::vector<RationalComplex> exact{RationalComplex::i(), RationalComplex::i()};
  CHECK(f.evaluate(exact).is_zero());
}

TEST_CASE("no zero coefficients and no squares") {
  auto f = z(2, 1) - z(2, 1);
  CHECK(f.is_zero());
  CHECK(f.term_count() == 0);
  CHECK_THROWS_AS(z(2, 1) * z(2, 1), PreconditionError);
}

TEST_CASE("permutation action") {
  CHECK(apply_perm(cyc("(1 2)", 2), z(2, 1)) == z(2, 2));
  const auto f = z(3, 1) * z(3, 2) + z(3, 3) * q(1, 2);
  CHECK(apply_perm(Permutation::identity(3), f) == f);
  CHECK(apply_perm(cyc("(1 2 3)", 3), z(3, 1) * z(3, 2)) == z(3, 2) * z(3, 3));
}

TEST_CASE("symmetrize examples") {
  const auto s2 = PermutationGroup::symmetric(2);
  CHECK(symmetrize(s2, z(2, 1)) == (z(2, 1) + z(2, 2)) * q(1, 2));
  const auto c4 = PermutationGroup::generate({cyc("(1 2 3 4)", 4)}, 4);
  CHECK(symmetrize(c4, z(4, 1) * z(4, 3)) == (z(4, 1) * z(4, 3) + z(4, 2) * z(4, 4)) * q(1, 2));
  const auto input = (z(4, 1) + one(4)) * (z(4, 3) + one(4));
  const auto expected = (z(4, 1) * z(4, 3) + z(4, 2) * z(4, 4)) * q(1, 2) +
                        (z(4, 1) + z(4, 2) + z(4, 3) + z(4, 4)) * q(1, 2) + one(4);
  CHECK(symmetrize(c4, input) == expected);
}

TEST_CASE("invariance") {
  const auto s2 = PermutationGroup::symmetric(2);
  CHECK(is_invariant(s2, z(2, 1) + z(2, 2)));
  CHECK_FALSE(is_invariant(s2, z(2, 1)));
  CHECK(is_symmetric(elementary_symmetric(pts({1, 2, 3}, 3), 2, 3)));
}

TEST_CASE("elementary symmetric") {
  CHECK(elementary_symmetric(pts({1, 2}, 3), 0, 3) == one(3));
  CHECK(elementary_symmetric(pts({1, 2, 3}, 3), 2, 3) == z(3, 1) * z(3, 2) + z(3, 1) * z(3, 3) + z(3, 2) * z(3, 3));
  CHECK(elementary_symmetric(pts({1, 2, 3, 4}, 4), 2, 4).term_count() == 6);
}

TEST_CASE("product_linear") {
  const auto f = product_linear(4, {{0, RationalComplex(1)}, {2, RationalComplex(1)}});
  CHECK(f == z(4, 1) * z(4, 3) + z(4, 1) + z(4, 3) + one(4));
  CHECK(f.certified_stable());
  CHECK(product_linear(3, {}) == one(3));
}

TEST_CASE("specialize") {
  const auto f = z(2, 1) * z(2, 2) + z(2, 1) + z(2, 2) + one(2);
  CHECK(specialize(f, {{1, RationalComplex(0)}}) == z(2, 1) + one(2));
  CHECK(specialize(z(2, 1) + z(2, 2), {{1, RationalComplex::i()}}) ==
        z(2, 1) + MultiAffine::constant(2, RationalComplex::i()));
  CHECK(specialize(z(2, 1) * z(2, 2) + one(2), {{0, RationalComplex::i()}, {1, RationalComplex::i()}}).is_zero());
}

TEST_CASE("diagonal") {
  const auto f = z(2, 1) * z(2, 2) + z(2, 1) + z(2, 2);
  CHECK(diagonal_univariate(f, pts({1, 2}, 2)) == Univariate::from_exact({q(0), q(2), q(1)}));

  const auto c4 = PermutationGroup::generate({cyc("(1 2 3 4)", 4)}, 4);
  const auto big_f = symmetrize(c4, (z(4, 1) + one(4)) * (z(4, 3) + one(4)));
  const auto restricted = specialize(big_f, {{1, RationalComplex(0)}, {3, RationalComplex(0)}});
  CHECK(diagonal_univariate(restricted, pts({1, 3}, 4)) == Univariate::from_exact({q(1), q(1), q(1, 2)}));
  CHECK(diagonal_univariate(MultiAffine::constant(2, q(3)), pts({1, 2}, 2)).degree() == 0);
}

TEST_CASE("reciprocal") {
  CHECK(reciprocal(Univariate::from_exact({q(3), q(2), q(1)})) == Univariate::from_exact({q(1), q(2), q(3)}));
  const auto f = (one(2) + z(2, 1)) * (one(2) + z(2, 2)) + z(2, 1) * z(2, 2);
  const auto g = (z(2, 1) + one(2)) * (z(2, 2) + one(2)) + one(2);
  CHECK(reciprocal(f, pts({1, 2}, 2)) == g);
}

TEST_CASE("affine substitution") {
  const auto f = MultiAffine::constant(1, q(2)) + z(1, 1) * q(3);
  const auto p = affine_substitute(f, {0}, {Rational(2)}, {Rational(3)});
  CHECK(p == Univariate::from_exact({q(-5, 2), q(3, 2)}));
  const auto g = z(2, 1) * z(2, 2) + one(2);
  CHECK(affine_substitute(g, {0, 1}, {Rational(1), Rational(1)}, {Rational(0), Rational(0)}) ==
        Univariate::from_exact({q(1), q(0), q(1)}));
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("symmetrizer properties on random input") {
  std::mt19937_64 rng(11);
  const std::vector<PermutationGroup> groups = {
      PermutationGroup::symmetric(4),
      PermutationGroup::generate({cyc("(1 2 3 4)", 4)}, 4),
      PermutationGroup::generate({cyc("(1 2)(3 4)", 4)}, 4),
      PermutationGroup::alternating(4),
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_poly(rng, 4);
    for (const auto& g : groups) {
      const auto tf = symmetrize(g, f);
      CHECK(symmetrize(g, tf) == tf);
      CHECK(is_invariant(g, tf));
      CHECK(is_invariant(g, f) == (symmetrize(g, f) == f));
    }
  }
  for (Subset s = 0; s < 16; ++s) {
    const auto expected = elementary_symmetric(0xF, popcount(s), 4) * RationalComplex(Rational(1 / binomial(4, popcount(s))));
    CHECK(symmetrize(PermutationGroup::symmetric(4), MultiAffine::monomial(4, s)) == expected);
  }
}

TEST_CASE("action compatibility and conjugation") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto s4 = PermutationGroup::symmetric(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_poly(rng, 4);
    std::vector<cd> p(4);
    for (auto& x : p) x = cd(u(rng), u(rng));
    const auto& sigma = s4.elements()[rng() % s4.order()];
    std::vector<cd> moved(4);
    for (int i = 0; i < 4; ++i) moved[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(sigma(i))];
    CHECK(std::abs(apply_perm(sigma, f).evaluate(p) - f.evaluate(moved)) < 1e-9);

    MultiAffine real(4);
    for (const auto& [s, c] : f.terms()) real.add_term(s, RationalComplex(c.re()));
    std::vector<cd> conj(4);
    for (int i = 0; i < 4; ++i) conj[static_cast<std::size_t>(i)] = std::conj(p[static_cast<std::size_t>(i)]);
    CHECK(std::abs(real.evaluate(conj) - std::conj(real.evaluate(p))) < 1e-9);
  }
}

TEST_CASE("diagonal commutes with specialization") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_poly(rng, 4);
    const std::map<int, RationalComplex> fix{{3, q(2, 3)}};
    const auto a = diagonal_univariate(specialize(f, fix), pts({1, 2, 3}, 4));
    // Specializing the diagonal variable set afterwards: t = 1/2.
    const auto b = specialize(specialize(f, fix), {{0, q(1, 2)}, {1, q(1, 2)}, {2, q(1, 2)}});
    const RationalComplex at_half = b.coefficient(0);
    RationalComplex direct;
    RationalComplex power(1);
    for (const auto& c : *a.exact()) {
      direct += c * power;
      power *= q(1, 2);
    }
    CHECK(direct == at_half);
  }
}
