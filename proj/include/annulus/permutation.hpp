#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "annulus/errors.hpp"
#include "annulus/ground_set.hpp"
#include "annulus/set_partition.hpp"

namespace annulus {

using Cycle = std::vector<Label>;

/// A bijection of a finite ground set onto itself.
///
/// Internally the map is kept in one-line form over ground positions:
/// index_image(i) is the position of the image of ground()[i].
class Permutation {
 public:
  /// images[i] is the image of the i-th ground label.
  Permutation(GroundSet ground, std::span<const Label> images) : ground_(std::move(ground)) {
    if (images.size() != ground_.size()) throw DomainError("image list length does not match the ground set");
    map_.resize(images.size());
    std::vector<char> hit(images.size(), 0);
    for (std::size_t i = 0; i < images.size(); ++i) {
      auto j = ground_.find(images[i]);
      if (!j) throw DomainError("image " + std::to_string(images[i]) + " is not in the ground set");
      if (hit[*j]) throw DomainError("image " + std::to_string(images[i]) + " is hit twice");
      hit[*j] = 1;
      map_[i] = static_cast<int>(*j);
    }
  }

  static Permutation identity(GroundSet ground) {
    std::vector<int> m(ground.size());
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(ground), std::move(m), Trusted{});
  }
  static Permutation identity(std::size_t n) { return identity(GroundSet::range(n)); }

  /// Builds from explicit cycles; labels not mentioned are fixed. Cycles must be disjoint.
  static Permutation from_cycles(GroundSet ground, const std::vector<Cycle>& cycles) {
    std::vector<int> m(ground.size());
    std::iota(m.begin(), m.end(), 0);
    std::vector<char> used(ground.size(), 0);
    for (const auto& c : cycles) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        const std::size_t i = ground.index_of(c[k]);
        if (used[i]) throw DomainError("label " + std::to_string(c[k]) + " appears twice in the cycles");
        used[i] = 1;
        m[i] = static_cast<int>(ground.index_of(c[(k + 1) % c.size()]));
      }
    }
    return Permutation(std::move(ground), std::move(m), Trusted{});
  }

  /// Builds from position form (map[i] = position of the image of ground[i]).
  static Permutation from_positions(GroundSet ground, std::vector<int> map) {
    if (map.size() != ground.size()) throw DomainError("position map length does not match the ground set");
    std::vector<char> hit(map.size(), 0);
    for (int j : map) {
      if (j < 0 || static_cast<std::size_t>(j) >= map.size() || hit[j]) throw DomainError("position map is not a bijection");
      hit[j] = 1;
    }
    return Permutation(std::move(ground), std::move(map), Trusted{});
  }

  const GroundSet& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return map_.size(); }
  std::span<const int> positions() const noexcept { return map_; }
  int index_image(std::size_t i) const noexcept { return map_[i]; }

  Label operator()(Label x) const { return ground_[map_[ground_.index_of(x)]]; }

  std::vector<Label> images() const {
    std::vector<Label> out(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) out[i] = ground_[map_[i]];
    return out;
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] != static_cast<int>(i)) return false;
    return true;
  }

  /// Canonical cycles: each starts at its minimum, sorted by minima.
  std::vector<Cycle> cycles(bool include_fixed_points = false) const {
    std::vector<Cycle> out;
    std::vector<char> seen(map_.size(), 0);
    for (std::size_t s = 0; s < map_.size(); ++s) {
      if (seen[s]) continue;
      Cycle c;
      for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(map_[i])) {
        seen[i] = 1;
        c.push_back(ground_[i]);
      }
      if (c.size() > 1 || include_fixed_points) out.push_back(std::move(c));
    }
    return out;
  }

  bool operator==(const Permutation& other) const = default;
  auto operator<=>(const Permutation& other) const {
    if (auto c = ground_ <=> other.ground_; c != 0) return c;
    return map_ <=> other.map_;
  }

 private:
  struct Trusted {};
  Permutation(GroundSet ground, std::vector<int> map, Trusted) : ground_(std::move(ground)), map_(std::move(map)) {}

  GroundSet ground_;
  std::vector<int> map_;
};

namespace detail {

inline void require_same_ground(const Permutation& a, const Permutation& b) {
  if (a.ground() != b.ground()) throw DomainError("permutations act on different ground sets");
}

inline std::size_t count_cycles(std::span<const int> map, std::vector<char>& seen) {
  seen.assign(map.size(), 0);
  std::size_t count = 0;
  for (std::size_t s = 0; s < map.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(map[i])) seen[i] = 1;
  }
  return count;
}

// Union-find over ground positions.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --components_;
  }
  std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

}  // namespace detail

/// a * b: the map x -> a(b(x)); the right factor acts first.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  detail::require_same_ground(a, b);
  std::vector<int> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.index_image(static_cast<std::size_t>(b.index_image(i)));
  return Permutation::from_positions(a.ground(), std::move(m));
}

inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

inline Permutation inverse(const Permutation& p) {
  std::vector<int> m(p.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[static_cast<std::size_t>(p.index_image(i))] = static_cast<int>(i);
  return Permutation::from_positions(p.ground(), std::move(m));
}

/// The transposition (i, j) on the given ground set.
inline Permutation transposition(const GroundSet& ground, Label i, Label j) {
  if (i == j) throw DomainError("a transposition needs two distinct labels");
  return Permutation::from_cycles(ground, {{i, j}});
}

/// The forward cycle of a ground set, running through its labels in increasing order.
inline Permutation forward_cycle(const GroundSet& ground) {
  std::vector<int> m(ground.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<int>((i + 1) % m.size());
  return Permutation::from_positions(ground, std::move(m));
}

/// Number of orbits, #(p).
inline std::size_t orbit_count(const Permutation& p) {
  std::vector<char> seen;
  return detail::count_cycles(p.positions(), seen);
}

inline SetPartition orbit_partition(const Permutation& p) {
  std::vector<Block> blocks;
  for (auto& c : p.cycles(true)) blocks.push_back(std::move(c));
  return SetPartition(p.ground(), std::move(blocks));
}

/// Orbit id per ground position, numbered by order of first appearance.
inline std::vector<int> orbit_ids(const Permutation& p) {
  std::vector<int> id(p.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (id[s] >= 0) continue;
    for (std::size_t i = s; id[i] < 0; i = static_cast<std::size_t>(p.index_image(i))) id[i] = next;
    ++next;
  }
  return id;
}

/// The permutation induced on a non-empty subset B by first return:
/// b maps to the first of p(b), p^2(b), ... that lies in B.
inline Permutation induce(const Permutation& p, const GroundSet& subset) {
  if (!subset.is_subset_of(p.ground())) throw DomainError("induce: subset is not contained in the ground set");
  const auto& g = p.ground();
  std::vector<char> in(g.size(), 0);
  for (Label b : subset) in[g.index_of(b)] = 1;
  std::vector<Label> images(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    std::size_t i = static_cast<std::size_t>(p.index_image(g.index_of(subset[k])));
    while (!in[i]) i = static_cast<std::size_t>(p.index_image(i));
    images[k] = g[i];
  }
  return Permutation(subset, images);
}

inline Permutation induce(const Permutation& p, std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end());
  return induce(p, GroundSet(std::move(labels)));
}

/// Distance in the Cayley graph generated by all transpositions: n - #(a^{-1} b).
inline std::size_t cayley_distance(const Permutation& a, const Permutation& b) {
  detail::require_same_ground(a, b);
  // #(a^{-1} b) computed without materializing the product
  std::vector<int> inv(a.size());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[static_cast<std::size_t>(a.index_image(i))] = static_cast<int>(i);
  std::vector<int> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = inv[static_cast<std::size_t>(b.index_image(i))];
  std::vector<char> seen;
  return a.size() - detail::count_cycles(m, seen);
}

/// #(a v b): orbits of the group generated by a and b, as connected
/// components of the union of both orbit structures.
inline std::size_t joint_orbit_count(const Permutation& a, const Permutation& b) {
  detail::require_same_ground(a, b);
  detail::DisjointSets ds(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ds.unite(i, static_cast<std::size_t>(a.index_image(i)));
    ds.unite(i, static_cast<std::size_t>(b.index_image(i)));
  }
  return ds.components();
}

/// Joint-orbit representative per ground position (smallest position in the component).
inline std::vector<std::size_t> joint_orbit_ids(const Permutation& a, const Permutation& b) {
  detail::require_same_ground(a, b);
  detail::DisjointSets ds(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ds.unite(i, static_cast<std::size_t>(a.index_image(i)));
    ds.unite(i, static_cast<std::size_t>(b.index_image(i)));
  }
  std::vector<std::size_t> id(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) id[i] = ds.find(i);
  return id;
}

/// Conjugate r p r^{-1}.
inline Permutation conjugate(const Permutation& p, const Permutation& r) { return compose(compose(r, p), inverse(r)); }

/// Visits every permutation of the ground set in lexicographic order of position maps.
/// The visitor may return false to stop early.
template <typename Visitor>
void for_each_permutation(const GroundSet& ground, Visitor&& visit) {
  std::vector<int> m(ground.size());
  std::iota(m.begin(), m.end(), 0);
  do {
    auto p = Permutation::from_positions(ground, m);
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const Permutation&>, bool>) {
      if (!visit(p)) return;
    } else {
      visit(p);
    }
  } while (std::next_permutation(m.begin(), m.end()));
}

template <typename Visitor>
void for_each_permutation(std::size_t n, Visitor&& visit) {
  for_each_permutation(GroundSet::range(n), std::forward<Visitor>(visit));
}

/// Visits the (n-1)!! fixed-point-free involutions of the ground set, pairing
/// the smallest unmatched element with each later unmatched one in turn.
/// Visits nothing when the size is odd.
template <typename Visitor>
void for_each_pair_permutation(const GroundSet& ground, Visitor&& visit) {
  const std::size_t n = ground.size();
  if (n % 2) return;
  std::vector<int> m(n, -1);
  auto rec = [&](auto&& self) -> void {
    std::size_t i = 0;
    while (i < n && m[i] >= 0) ++i;
    if (i == n) {
      visit(Permutation::from_positions(ground, m));
      return;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m[j] >= 0) continue;
      m[i] = static_cast<int>(j);
      m[j] = static_cast<int>(i);
      self(self);
      m[i] = m[j] = -1;
    }
  };
  rec(rec);
}

// ---------------------------------------------------------------------------
// Cycle notation: cycles := cycle* ; cycle := '(' int (',' int)* ')', whitespace ignored.

inline Permutation parse_cycles(std::string_view text, const GroundSet& ground) {
  std::vector<Cycle> cycles;
  std::vector<char> used(ground.size(), 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_label = [&]() -> Label {
    skip_ws();
    const std::size_t start = i;
    long long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1'000'000'000) throw ParseError("label too large", start);
      ++i;
    }
    if (i == start) throw ParseError("expected a positive integer", start);
    const Label x = static_cast<Label>(v);
    auto idx = ground.find(x);
    if (!idx) throw ParseError("unknown label " + std::to_string(x), start);
    if (used[*idx]) throw ParseError("duplicated label " + std::to_string(x), start);
    used[*idx] = 1;
    return x;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    Cycle c{read_label()};
    skip_ws();
    while (i < text.size() && text[i] == ',') {
      ++i;
      c.push_back(read_label());
      skip_ws();
    }
    if (i >= text.size() || text[i] != ')') throw ParseError("expected ')' or ','", i);
    ++i;
    cycles.push_back(std::move(c));
    skip_ws();
  }
  return Permutation::from_cycles(ground, cycles);
}

inline Permutation parse_cycles(std::string_view text, std::size_t n) { return parse_cycles(text, GroundSet::range(n)); }

/// Canonical cycle notation with fixed points omitted; the identity prints as "".
inline std::string format_cycles(const Permutation& p, bool include_fixed_points = false) {
  std::string s;
  for (const auto& c : p.cycles(include_fixed_points)) {
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(c[k]);
    }
    s += ')';
  }
  return s;
}

}  // namespace annulus
