#include <doctest.h>

#include "json.hpp"
#include <random>

#include "stabsym/error.hpp"
#include "stabsym/io.hpp"

using namespace stabsym;
using json = nlohmann::json;

TEST_CASE("group files") {
  const auto g = parse_group("# embedding\ndegree 5\n(1 2)(4 5)  # swap\n(1 2 3)\n");
  CHECK(g.degree() == 5);
  CHECK(g.order() == 6);
  CHECK(parse_group(format_group(g)) == g);
  CHECK(parse_group("degree 3\n").order() == 1);
  CHECK_THROWS_AS(parse_group("(1 2)\n"), ParseError);
  CHECK_THROWS_AS(parse_group("degree 3\n(1 4)\n"), ParseError);
  CHECK_THROWS_AS(parse_group("degree x\n"), ParseError);
}

TEST_CASE("polynomial files") {
  const auto f = parse_poly(R"({"nvars": 2, "terms": [{"vars": [1, 2], "re": "1/2", "im": "0/1"}]})");
  CHECK(f == MultiAffine::monomial(2, 0b11, RationalComplex(Rational(1, 2))));
  CHECK(parse_poly(R"({"nvars": 3, "terms": []})").is_zero());
  CHECK_THROWS_AS(parse_poly(R"({"nvars": 2, "terms": [{"vars": [3], "re": "1", "im": "0"}]})"), ParseError);
  CHECK_THROWS_AS(parse_poly(R"({"nvars": 2, "terms": [{"vars": [1, 1], "re": "1", "im": "0"}]})"), ParseError);
  CHECK_THROWS_AS(parse_poly(R"({"nvars": 2, "terms": [{"vars": [1], "re": "1/0", "im": "0"}]})"), ParseError);
  CHECK_THROWS_AS(parse_poly("{"), ParseError);
}

TEST_CASE("polynomial round trip") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    MultiAffine f(6);
    for (int t = 0; t < 10; ++t) {
      f.add_term(static_cast<Subset>(rng() % 64),
                 RationalComplex(Rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9)),
                                 Rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9))));
    }
    CHECK(parse_poly(format_poly(f)) == f);
  }
}

TEST_CASE("element files") {
  const auto u = parse_element("degree 4\n() 1/4 0\n(1 2 3 4) 1/4 0/1\n(1 3)(2 4) 1/4 0\n(1 4 3 2) 1/4 0\n");
  CHECK(u == symmetrizer_element(PermutationGroup::generate({Permutation::from_cycles("(1 2 3 4)", 4)}, 4)));
  CHECK(parse_element(format_element(u)) == u);
  CHECK_THROWS_AS(parse_element("degree 2\n(1 2) x 0\n"), ParseError);
}

TEST_CASE("points and doubles") {
  const auto p = parse_point("0:1,-1.5:2e-3");
  REQUIRE(p.size() == 2);
  CHECK(p[1] == std::complex<double>(-1.5, 2e-3));
  CHECK_THROWS_AS(parse_point("1,2"), ParseError);
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("analysis documents") {
  const auto a = analyze_group(PermutationGroup::generate({Permutation::from_cycles("(1 2 3 4)", 4)}, 4));
  const auto doc = json::parse(to_json(a));
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["orbit-homogeneous"] == false);
  CHECK(doc["preserves-stability"] == false);
  CHECK(doc["order"] == 4);

  const auto t = analyze_group(PermutationGroup::trivial(1));
  CHECK(t.orbit_homogeneous);
  CHECK(t.homogeneous);
  CHECK(t.preserves_stability);
  CHECK(t.coincidence_property);
  CHECK(t.factorization);
}

TEST_CASE("report documents are deterministic") {
  const auto g = PermutationGroup::generate({Permutation::from_cycles("(1 2)(3 4)", 4)}, 4);
  const auto a = to_json(counterexample(g));
  const auto b = to_json(counterexample(g));
  CHECK(a == b);
  const auto doc = json::parse(a);
  CHECK(doc["kind"] == "case-ii");
  CHECK(doc["chain"].size() >= 3);
  CHECK(json_to_text(a).find("kind: case-ii") != std::string::npos);
}
