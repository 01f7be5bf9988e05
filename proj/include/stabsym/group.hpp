#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stabsym {

/// A set of points of {0..n-1} stored as a bitmask (bit i = point i+1).
using Subset = std::uint32_t;

inline constexpr int kMaxSubsetDegree = 24;
inline constexpr int kMaxGroupDegree = 12;
inline constexpr int kMaxSubgroupEnumerationDegree = 6;

inline Subset bit(int point) { return Subset{1} << point; }
int popcount(Subset s);
/// Points of s in increasing order (0-based).
std::vector<int> points_of(Subset s);
/// Build a subset from 1-based points; throws PreconditionError when out of range.
Subset subset_from_points(const std::vector<int>& one_based, int n);
/// Lexicographic order of sorted point lists: {1,2,3} < {1,3} < {2,3}.
bool lex_less(Subset a, Subset b);
/// "{1,3}" with 1-based points.
std::string format_subset(Subset s);

/// A bijection of {1..n}. Stored 0-based; ordered lexicographically by images.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n);
  /// 1-based image list; throws PreconditionError unless a bijection.
  static Permutation from_images(const std::vector<int>& one_based);
  /// Cycle notation such as "(1 2 3)(4 5)"; "" and "()" denote the identity.
  static Permutation from_cycles(std::string_view text, int n);

  int degree() const { return static_cast<int>(map_.size()); }
  /// Image of a 0-based point.
  int operator()(int point) const { return map_[static_cast<std::size_t>(point)]; }
  std::vector<int> images() const;  // 1-based
  Permutation inverse() const;
  bool is_identity() const;
  Subset apply(Subset s) const;
  std::string to_cycles() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::uint8_t> map) : map_(std::move(map)) {}
  std::vector<std::uint8_t> map_;
};

/// p∘q, i.e. i ↦ p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

struct OrbitPartition {
  std::vector<std::vector<int>> blocks;  // 0-based points, ordered by least point
  std::vector<int> block_of;             // point -> block index

  int r() const { return static_cast<int>(blocks.size()); }
  std::vector<int> block_sizes() const;
  Subset block_mask(int i) const;
};

struct Profile {
  std::vector<int> counts;

  int total() const;
  /// Number of blocks with a nonzero count.
  int support_size() const;
  std::string to_string() const;

  friend auto operator<=>(const Profile&, const Profile&) = default;
  friend bool operator==(const Profile&, const Profile&) = default;
};

struct SubsetOrbit {
  Subset representative = 0;
  std::vector<Subset> members;  // ascending bitmask order

  std::size_t size() const { return members.size(); }
  /// Lexicographically least member (see lex_less).
  Subset lex_min() const;
};

/// A permutation group stored as its explicit, closed element set.
class PermutationGroup {
 public:
  PermutationGroup() = default;
  static PermutationGroup generate(const std::vector<Permutation>& generators, int n);
  static PermutationGroup trivial(int n) { return generate({}, n); }
  static PermutationGroup symmetric(int n);
  /// Full symmetric group on the given points, fixing the rest.
  static PermutationGroup symmetric_on(Subset points, int n);
  static PermutationGroup alternating(int n);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  /// Sorted lexicographically by images; identity first.
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const OrbitPartition& orbits() const { return orbits_; }
  bool contains(const Permutation& p) const;

  friend bool operator==(const PermutationGroup& a, const PermutationGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  PermutationGroup(int n, std::vector<Permutation> gens, std::vector<Permutation> elements);

  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  OrbitPartition orbits_;
};

OrbitPartition point_orbits(const PermutationGroup& g);
SubsetOrbit subset_orbit(const PermutationGroup& g, Subset a);
Profile profile_of(Subset a, const OrbitPartition& partition);
/// Elements fixing A setwise.
std::vector<Permutation> setwise_stabilizer(const PermutationGroup& g, Subset a);

bool is_k_homogeneous(const PermutationGroup& g, int k);
bool is_homogeneous(const PermutationGroup& g);
bool is_orbit_homogeneous(const PermutationGroup& g);

/// All orbits of G on subsets of {1..n}, grouped by profile. Orbit lists are
/// ordered by their least bitmask.
std::map<Profile, std::vector<SubsetOrbit>> subset_orbits_by_profile(const PermutationGroup& g);

/// Every subgroup of S_n (n <= 6), sorted by order and then by element list.
std::vector<PermutationGroup> enumerate_subgroups(int n);

}  // namespace stabsym
