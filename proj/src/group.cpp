#include "stabsym/group.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "stabsym/error.hpp"

namespace stabsym {

int popcount(Subset s) { return std::popcount(s); }

std::vector<int> points_of(Subset s) {
  std::vector<int> out;
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

Subset subset_from_points(const std::vector<int>& one_based, int n) {
  Subset s = 0;
  for (int p : one_based) {
    if (p < 1 || p > n) {
      throw PreconditionError("point " + std::to_string(p) + " out of range 1.." + std::to_string(n));
    }
    s |= bit(p - 1);
  }
  return s;
}

bool lex_less(Subset a, Subset b) {
  while (a != 0 && b != 0) {
    const int x = std::countr_zero(a);
    const int y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  // A proper prefix sorts first.
  return a == 0 && b != 0;
}

std::string format_subset(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int p : points_of(s)) {
    if (!first) out += ",";
    out += std::to_string(p + 1);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::identity(int n) {
  if (n < 0 || n > 255) throw PreconditionError("degree out of range");
  std::vector<std::uint8_t> map(static_cast<std::size_t>(n));
  std::iota(map.begin(), map.end(), std::uint8_t{0});
  return Permutation(std::move(map));
}

Permutation Permutation::from_images(const std::vector<int>& one_based) {
  const int n = static_cast<int>(one_based.size());
  if (n > 255) throw PreconditionError("degree out of range");
  std::vector<std::uint8_t> map(one_based.size());
  std::vector<bool> seen(one_based.size(), false);
  for (std::size_t i = 0; i < one_based.size(); ++i) {
    const int img = one_based[i];
    if (img < 1 || img > n || seen[static_cast<std::size_t>(img - 1)]) {
      throw PreconditionError("image list is not a bijection on 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(img - 1)] = true;
    map[i] = static_cast<std::uint8_t>(img - 1);
  }
  return Permutation(std::move(map));
}

Permutation Permutation::from_cycles(std::string_view text, int n) {
  Permutation result = identity(n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };

  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      while (pos < text.size() &&
             (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) {
        ++pos;
      }
      if (pos >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw ParseError("unexpected character in cycle notation: " + std::string(text));
      }
      int value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value > 100000) throw PreconditionError("point out of range in " + std::string(text));
        ++pos;
      }
      if (value < 1 || value > n) {
        throw PreconditionError("point " + std::to_string(value) + " out of range 1.." + std::to_string(n));
      }
      if (used[static_cast<std::size_t>(value - 1)]) {
        throw PreconditionError("point " + std::to_string(value) + " repeated in " + std::string(text));
      }
      used[static_cast<std::size_t>(value - 1)] = true;
      cycle.push_back(value - 1);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      result.map_[static_cast<std::size_t>(cycle[i])] =
          static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
    }
    skip_space();
  }
  return result;
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = map_[i] + 1;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != i) return false;
  }
  return true;
}

Subset Permutation::apply(Subset s) const {
  Subset out = 0;
  while (s != 0) {
    out |= bit(map_[static_cast<std::size_t>(std::countr_zero(s))]);
    s &= s - 1;
  }
  return out;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t start = 0; start < map_.size(); ++start) {
    if (seen[start] || map_[start] == start) continue;
    out += "(";
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += " ";
      out += std::to_string(x + 1);
      first = false;
      x = map_[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw PreconditionError("compose: degree mismatch");
  std::vector<int> images(static_cast<std::size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) images[static_cast<std::size_t>(i)] = p(q(i)) + 1;
  return Permutation::from_images(images);
}

// ---------------------------------------------------------------------------
// Orbit data

std::vector<int> OrbitPartition::block_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(blocks.size());
  for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.size()));
  return sizes;
}

Subset OrbitPartition::block_mask(int i) const {
  Subset s = 0;
  for (int p : blocks[static_cast<std::size_t>(i)]) s |= bit(p);
  return s;
}

int Profile::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

int Profile::support_size() const {
  return static_cast<int>(std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }));
}

std::string Profile::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(counts[i]);
  }
  return out + ")";
}

Subset SubsetOrbit::lex_min() const {
  return *std::min_element(members.begin(), members.end(), lex_less);
}

// ---------------------------------------------------------------------------
// PermutationGroup

namespace {

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (int i = 0; i < p.degree(); ++i) {
      h ^= static_cast<std::size_t>(p(i));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

OrbitPartition compute_orbits(int n, const std::vector<Permutation>& gens) {
  OrbitPartition part;
  part.block_of.assign(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (part.block_of[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = part.r();
    std::vector<int> block{start};
    part.block_of[static_cast<std::size_t>(start)] = id;
    for (std::size_t k = 0; k < block.size(); ++k) {
      for (const auto& g : gens) {
        const int y = g(block[k]);
        if (part.block_of[static_cast<std::size_t>(y)] < 0) {
          part.block_of[static_cast<std::size_t>(y)] = id;
          block.push_back(y);
        }
      }
    }
    std::sort(block.begin(), block.end());
    part.blocks.push_back(std::move(block));
  }
  return part;
}

}  // namespace

PermutationGroup::PermutationGroup(int n, std::vector<Permutation> gens, std::vector<Permutation> elements)
    : degree_(n), generators_(std::move(gens)), elements_(std::move(elements)) {
  orbits_ = compute_orbits(n, generators_);
}

PermutationGroup PermutationGroup::generate(const std::vector<Permutation>& generators, int n) {
  if (n < 1 || n > kMaxGroupDegree) {
    throw PreconditionError("group degree must be in 1.." + std::to_string(kMaxGroupDegree));
  }
  for (const auto& g : generators) {
    if (g.degree() != n) throw PreconditionError("generator degree mismatch");
  }
  std::vector<Permutation> gens;
  for (const auto& g : generators) {
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }

  std::vector<Permutation> elements{Permutation::identity(n)};
  std::unordered_set<Permutation, PermHash> seen(elements.begin(), elements.end());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& g : gens) {
      Permutation y = compose(g, elements[k]);
      if (seen.insert(y).second) elements.push_back(std::move(y));
    }
  }
  std::sort(elements.begin(), elements.end());
  return PermutationGroup(n, std::move(gens), std::move(elements));
}

PermutationGroup PermutationGroup::symmetric(int n) {
  return symmetric_on(n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1, n);
}

PermutationGroup PermutationGroup::symmetric_on(Subset points, int n) {
  const auto pts = points_of(points);
  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] >= n) throw PreconditionError("symmetric_on: point out of range");
    // Adjacent transpositions generate the full symmetric group on pts.
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    std::swap(img[static_cast<std::size_t>(pts[i - 1])], img[static_cast<std::size_t>(pts[i])]);
    gens.push_back(Permutation::from_images(img));
  }
  return generate(gens, n);
}

PermutationGroup PermutationGroup::alternating(int n) {
  std::vector<Permutation> gens;
  for (int k = 3; k <= n; ++k) {
    gens.push_back(Permutation::from_cycles("(1 2 " + std::to_string(k) + ")", n));
  }
  return generate(gens, n);
}

bool PermutationGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

OrbitPartition point_orbits(const PermutationGroup& g) { return g.orbits(); }

SubsetOrbit subset_orbit(const PermutationGroup& g, Subset a) {
  if (g.degree() < 32 && (a >> g.degree()) != 0) throw PreconditionError("subset_orbit: subset out of range");
  SubsetOrbit orbit;
  orbit.representative = a;
  orbit.members.reserve(g.order());
  for (const auto& s : g.elements()) orbit.members.push_back(s.apply(a));
  std::sort(orbit.members.begin(), orbit.members.end());
  orbit.members.erase(std::unique(orbit.members.begin(), orbit.members.end()), orbit.members.end());
  return orbit;
}

Profile profile_of(Subset a, const OrbitPartition& partition) {
  Profile p;
  p.counts.assign(partition.blocks.size(), 0);
  for (int x : points_of(a)) {
    if (x >= static_cast<int>(partition.block_of.size())) throw PreconditionError("profile_of: point out of range");
    ++p.counts[static_cast<std::size_t>(partition.block_of[static_cast<std::size_t>(x)])];
  }
  return p;
}

std::vector<Permutation> setwise_stabilizer(const PermutationGroup& g, Subset a) {
  std::vector<Permutation> out;
  for (const auto& s : g.elements()) {
    if (s.apply(a) == a) out.push_back(s);
  }
  return out;
}

namespace {

void check_subset_degree(const PermutationGroup& g) {
  if (g.degree() > kMaxSubsetDegree) throw PreconditionError("subset enumeration limited to degree 24");
}

}  // namespace

std::map<Profile, std::vector<SubsetOrbit>> subset_orbits_by_profile(const PermutationGroup& g) {
  check_subset_degree(g);
  const std::size_t count = std::size_t{1} << g.degree();
  std::vector<bool> visited(count, false);
  std::map<Profile, std::vector<SubsetOrbit>> out;
  for (std::size_t s = 0; s < count; ++s) {
    if (visited[s]) continue;
    SubsetOrbit orbit = subset_orbit(g, static_cast<Subset>(s));
    for (Subset m : orbit.members) visited[m] = true;
    out[profile_of(static_cast<Subset>(s), g.orbits())].push_back(std::move(orbit));
  }
  return out;
}

bool is_k_homogeneous(const PermutationGroup& g, int k) {
  const int n = g.degree();
  if (k < 0 || k > n) throw PreconditionError("is_k_homogeneous: k out of range");
  check_subset_degree(g);
  // Single orbit iff the orbit of {1..k} already has binom(n, k) members.
  const Subset first = k == 0 ? 0 : (Subset{1} << k) - 1;
  std::size_t binom = 1;
  for (int i = 0; i < k; ++i) binom = binom * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
  return subset_orbit(g, first).size() == binom;
}

bool is_homogeneous(const PermutationGroup& g) {
  for (int k = 0; k <= g.degree(); ++k) {
    if (!is_k_homogeneous(g, k)) return false;
  }
  return true;
}

bool is_orbit_homogeneous(const PermutationGroup& g) {
  for (const auto& [profile, orbits] : subset_orbits_by_profile(g)) {
    if (orbits.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup enumeration

namespace {

/// S_n with elements indexed in lexicographic order and a multiplication table.
class SymmetricTable {
 public:
  explicit SymmetricTable(int n) : n_(n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    do {
      perms_.push_back(Permutation::from_images(img));
    } while (std::next_permutation(img.begin(), img.end()));
    const std::size_t N = perms_.size();
    table_.resize(N * N);
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b) {
        table_[a * N + b] = static_cast<std::uint16_t>(index_of(compose(perms_[a], perms_[b])));
      }
    }
  }

  std::size_t size() const { return perms_.size(); }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return table_[a * perms_.size() + b]; }
  const Permutation& perm(std::size_t i) const { return perms_[i]; }

  std::size_t index_of(const Permutation& p) const {
    return static_cast<std::size_t>(std::lower_bound(perms_.begin(), perms_.end(), p) - perms_.begin());
  }

 private:
  int n_;
  std::vector<Permutation> perms_;
  std::vector<std::uint16_t> table_;
};

struct IndexedSubgroup {
  std::vector<std::uint64_t> key;  // membership bitset over S_n indices
  std::vector<std::uint16_t> gens;
  std::size_t order = 0;
};

bool has(const std::vector<std::uint64_t>& key, std::uint16_t x) { return (key[x >> 6] >> (x & 63)) & 1U; }

IndexedSubgroup close(const SymmetricTable& sn, std::vector<std::uint16_t> gens) {
  IndexedSubgroup h;
  h.key.assign((sn.size() + 63) / 64, 0);
  std::vector<std::uint16_t> elems{0};  // index 0 is the identity (lexicographically least)
  h.key[0] |= 1;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (auto g : gens) {
      const std::uint16_t y = sn.mul(g, elems[k]);
      if (!has(h.key, y)) {
        h.key[y >> 6] |= std::uint64_t{1} << (y & 63);
        elems.push_back(y);
      }
    }
  }
  h.order = elems.size();
  h.gens = std::move(gens);
  return h;
}

}  // namespace

std::vector<PermutationGroup> enumerate_subgroups(int n) {
  if (n < 1 || n > kMaxSubgroupEnumerationDegree) {
    throw PreconditionError("enumerate_subgroups: degree must be in 1.." +
                            std::to_string(kMaxSubgroupEnumerationDegree));
  }
  const SymmetricTable sn(n);

  // One generator per cyclic subgroup: every subgroup is a join of cyclic ones.
  std::vector<std::uint16_t> cyclic_gens;
  std::set<std::vector<std::uint64_t>> cyclic_keys;
  for (std::size_t g = 1; g < sn.size(); ++g) {
    auto c = close(sn, {static_cast<std::uint16_t>(g)});
    if (cyclic_keys.insert(c.key).second) cyclic_gens.push_back(static_cast<std::uint16_t>(g));
  }

  std::vector<IndexedSubgroup> found{close(sn, {})};
  std::set<std::vector<std::uint64_t>> keys{found.front().key};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (auto g : cyclic_gens) {
      if (has(found[i].key, g)) continue;
      auto gens = found[i].gens;
      gens.push_back(g);
      auto h = close(sn, std::move(gens));
      if (keys.insert(h.key).second) found.push_back(std::move(h));
    }
  }

  std::sort(found.begin(), found.end(), [](const IndexedSubgroup& a, const IndexedSubgroup& b) {
    if (a.order != b.order) return a.order < b.order;
    // Larger bitset word value means earlier indices present; compare element lists.
    for (std::size_t w = 0; w < a.key.size(); ++w) {
      if (a.key[w] != b.key[w]) {
        const std::uint64_t diff = a.key[w] ^ b.key[w];
        const auto lowest = diff & (~diff + 1);
        return (a.key[w] & lowest) != 0;
      }
    }
    return false;
  });

  std::vector<PermutationGroup> out;
  out.reserve(found.size());
  for (const auto& h : found) {
    std::vector<Permutation> gens;
    for (auto g : h.gens) gens.push_back(sn.perm(g));
    out.push_back(PermutationGroup::generate(gens, n));
  }
  return out;
}

}  // namespace stabsym
