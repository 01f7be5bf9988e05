#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stabsym/algebra.hpp"
#include "stabsym/group.hpp"
#include "stabsym/poly.hpp"
#include "stabsym/stability.hpp"
#include "stabsym/theorem.hpp"

namespace stabsym {

inline constexpr int kSchemaVersion = 1;

/// "%.12g".
std::string format_double(double x);

// Group files: "degree n", then one generator per line in cycle notation.
// '#' starts a comment.
PermutationGroup parse_group(std::string_view text);
/// Canonical form: the degree line followed by every element in
/// lexicographic image order.
std::string format_group(const PermutationGroup& g);

// Polynomial files: {"nvars": n, "terms": [{"vars": [...], "re": "p/q", "im": "p/q"}]}
MultiAffine parse_poly(std::string_view text);
std::string format_poly(const MultiAffine& f);

// Element files: "degree n", then "<cycles> <re> <im>" per line.
GroupAlgebraElement parse_element(std::string_view text);
std::string format_element(const GroupAlgebraElement& u);

/// "re:im,re:im,..." with decimal parts.
std::vector<std::complex<double>> parse_point(std::string_view text);

struct GroupAnalysis {
  int degree = 0;
  std::size_t order = 0;
  std::vector<std::vector<int>> orbits;  // 1-based
  struct ProfileRow {
    std::string profile;
    std::size_t subsets = 0;
    std::vector<std::size_t> orbit_sizes;
  };
  std::vector<ProfileRow> profiles;
  std::vector<bool> k_homogeneous;  // k = 0..n
  bool transitive = false;
  bool homogeneous = false;
  bool orbit_homogeneous = false;
  bool preserves_stability = false;
  bool coincidence_property = false;
  bool factorization = false;
};

GroupAnalysis analyze_group(const PermutationGroup& g);

// JSON documents with sorted keys; `indent` < 0 gives a single line.
std::string to_json(const GroupAnalysis& a, int indent = 2);
std::string to_json(const StabilityVerdict& v, int indent = 2);
std::string to_json(const CounterexampleReport& r, int indent = 2);
std::string to_json(const CoincidenceReport& r, int indent = 2);
std::string to_json(const EquivalenceReport& r, int indent = 2);
std::string to_json(const SemigroupReport& r, int indent = 2);
std::string to_json(const GwsResult& r, int indent = 2);

/// Flatten a JSON document into "path: value" lines.
std::string json_to_text(std::string_view json);

}  // namespace stabsym
