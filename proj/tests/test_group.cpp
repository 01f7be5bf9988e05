#include <doctest.h>

#include <algorithm>
#include <set>

#include "stabsym/error.hpp"
#include "stabsym/group.hpp"
#include "stabsym/poly.hpp"

using namespace stabsym;

namespace {

Permutation cyc(const char* text, int n) { return Permutation::from_cycles(text, n); }
PermutationGroup gen(std::initializer_list<const char*> gens, int n) {
  std::vector<Permutation> ps;
  for (const char* g : gens) ps.push_back(cyc(g, n));
  return PermutationGroup::generate(ps, n);
}
Subset pts(std::initializer_list<int> one_based, int n) { return subset_from_points(one_based, n); }

}  // namespace

TEST_CASE("cycle notation") {
  CHECK(cyc("(1 2 3 4)", 4).images() == std::vector<int>{2, 3, 4, 1});
  CHECK(cyc("", 3).images() == std::vector<int>{1, 2, 3});
  CHECK(cyc("()", 3).is_identity());
  CHECK(cyc("(1 2)(4 5)", 5).images() == std::vector<int>{2, 1, 3, 5, 4});
  CHECK(cyc("(1 3)(2 4)", 4).to_cycles() == "(1 3)(2 4)");
  CHECK_THROWS_AS(cyc("(1 5)", 4), PreconditionError);
  CHECK_THROWS_AS(cyc("(1 2 1)", 4), std::exception);
  CHECK_THROWS_AS(Permutation::from_images({1, 1, 2}), PreconditionError);
}

TEST_CASE("composition laws") {
  const auto p = cyc("(1 2)", 3);
  const auto q = cyc("(2 3)", 3);
  CHECK(compose(p, q).images() == std::vector<int>{2, 3, 1});
  const auto r = cyc("(1 4 2)(3 5)", 5);
  CHECK(compose(r, Permutation::identity(5)) == r);
  CHECK(compose(r, r.inverse()).is_identity());
}

TEST_CASE("generation") {
  CHECK(gen({"(1 2 3 4)"}, 4).order() == 4);
  CHECK(PermutationGroup::trivial(3).order() == 1);
  CHECK(gen({"(1 2)", "(1 2 3)"}, 3).order() == 6);
  CHECK(PermutationGroup::symmetric(5).order() == 120);
  CHECK(PermutationGroup::alternating(4).order() == 12);
  CHECK(PermutationGroup::symmetric_on(pts({2, 4}, 4), 4).order() == 2);

  const auto g = gen({"(1 2)(4 5)", "(1 2 3)"}, 5);
  CHECK(g.elements().front().is_identity());
  CHECK(std::is_sorted(g.elements().begin(), g.elements().end()));
  for (const auto& a : g.elements()) {
    CHECK(g.contains(a.inverse()));
    for (const auto& b : g.elements()) CHECK(g.contains(compose(a, b)));
  }
  CHECK(120 % g.order() == 0);
}

TEST_CASE("point orbits") {
  const auto a = gen({"(1 2)"}, 3).orbits();
  REQUIRE(a.r() == 2);
  CHECK(a.blocks[0] == std::vector<int>{0, 1});
  CHECK(a.blocks[1] == std::vector<int>{2});
  CHECK(gen({"(1 2 3 4)"}, 4).orbits().r() == 1);
  const auto e = gen({"(1 2)(4 5)", "(1 2 3)"}, 5).orbits();
  REQUIRE(e.r() == 2);
  CHECK(e.block_sizes() == std::vector<int>{3, 2});
  CHECK(e.block_mask(1) == pts({4, 5}, 5));
}

TEST_CASE("subset orbits") {
  const auto c4 = gen({"(1 2 3 4)"}, 4);
  const auto o12 = subset_orbit(c4, pts({1, 2}, 4));
  CHECK(o12.size() == 4);
  const auto o13 = subset_orbit(c4, pts({1, 3}, 4));
  CHECK(o13.members == std::vector<Subset>{pts({1, 3}, 4), pts({2, 4}, 4)});
  CHECK(o13.lex_min() == pts({1, 3}, 4));
  CHECK(subset_orbit(PermutationGroup::symmetric(3), pts({1}, 3)).size() == 3);
}

TEST_CASE("profiles") {
  const auto part = gen({"(1 2)"}, 3).orbits();
  CHECK(profile_of(pts({1, 3}, 3), part).counts == std::vector<int>{1, 1});
  CHECK(profile_of(0, part).counts == std::vector<int>{0, 0});
  CHECK(profile_of(pts({1, 2, 3}, 4), gen({"(1 2 3 4)"}, 4).orbits()).counts == std::vector<int>{3});
}

TEST_CASE("lexicographic subset order") {
  const int n = 3;
  CHECK(lex_less(pts({1, 2, 3}, n), pts({1, 3}, n)));
  CHECK(lex_less(pts({1, 3}, n), pts({2, 3}, n)));
  CHECK_FALSE(lex_less(pts({2, 3}, n), pts({2, 3}, n)));
  CHECK(format_subset(pts({1, 3}, n)) == "{1,3}");
}

TEST_CASE("homogeneity deciders") {
  const auto c4 = gen({"(1 2 3 4)"}, 4);
  const auto a4 = PermutationGroup::alternating(4);
  const auto klein = gen({"(1 2)(3 4)", "(1 3)(2 4)"}, 4);
  CHECK(is_k_homogeneous(c4, 0));
  CHECK_FALSE(is_k_homogeneous(c4, 2));
  CHECK(is_k_homogeneous(a4, 2));
  for (int n = 1; n <= 5; ++n) CHECK(is_homogeneous(PermutationGroup::symmetric(n)));
  CHECK(is_homogeneous(a4));
  CHECK_FALSE(is_homogeneous(klein));
  CHECK(is_orbit_homogeneous(gen({"(1 2)(4 5)", "(1 2 3)"}, 5)));
  CHECK_FALSE(is_orbit_homogeneous(c4));
  CHECK_FALSE(is_orbit_homogeneous(gen({"(1 2)(3 4)"}, 4)));
  CHECK(is_orbit_homogeneous(gen({"(1 2)"}, 3)));
}

TEST_CASE("subgroup counts") {
  CHECK(enumerate_subgroups(1).size() == 1);
  CHECK(enumerate_subgroups(2).size() == 2);
  CHECK(enumerate_subgroups(3).size() == 6);
  CHECK(enumerate_subgroups(4).size() == 30);
  int bad = 0;
  for (const auto& g : enumerate_subgroups(3)) bad += is_orbit_homogeneous(g) ? 0 : 1;
  CHECK(bad == 0);
}

TEST_CASE("orbit invariants on every subgroup of S_4") {
  for (const auto& g : enumerate_subgroups(4)) {
    const int n = g.degree();
    for (Subset a = 0; a < (Subset{1} << n); ++a) {
      const auto orbit = subset_orbit(g, a);
      const auto p = profile_of(a, g.orbits());
      for (Subset m : orbit.members) CHECK(profile_of(m, g.orbits()) == p);
      CHECK(orbit.size() * setwise_stabilizer(g, a).size() == g.order());
    }
    CHECK(is_homogeneous(g) == (g.orbits().r() == 1 && is_orbit_homogeneous(g)));

    const auto sizes = g.orbits().block_sizes();
    for (const auto& [profile, orbits] : subset_orbits_by_profile(g)) {
      std::size_t total = 0;
      for (const auto& o : orbits) total += o.size();
      Rational expected(1);
      for (std::size_t i = 0; i < sizes.size(); ++i) expected *= binomial(sizes[i], profile.counts[i]);
      CHECK(Rational(static_cast<long>(total)) == expected);
    }
  }
}

TEST_CASE("subgroup list is closed under conjugation") {
  const auto subgroups = enumerate_subgroups(4);
  std::set<std::vector<Permutation>> keys;
  for (const auto& g : subgroups) keys.insert(g.elements());
  CHECK(keys.size() == subgroups.size());
  const auto s4 = PermutationGroup::symmetric(4);
  for (const auto& g : subgroups) {
    for (const auto& t : s4.elements()) {
      std::vector<Permutation> conj;
      for (const auto& e : g.elements()) conj.push_back(compose(compose(t, e), t.inverse()));
      std::sort(conj.begin(), conj.end());
      CHECK(keys.count(conj) == 1);
    }
  }
}
