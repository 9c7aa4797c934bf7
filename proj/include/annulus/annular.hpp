#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "annulus/cyclic_order.hpp"
#include "annulus/disc.hpp"
#include "annulus/errors.hpp"
#include "annulus/numbers.hpp"
#include "annulus/permutation.hpp"
#include "annulus/set_partition.hpp"

namespace annulus {

/// Circle sizes (p_1, ..., p_l). Circle k carries the consecutive labels
/// after those of circles 1..k-1.
class AnnulusShape {
 public:
  explicit AnnulusShape(std::vector<std::size_t> circle_sizes) : sizes_(std::move(circle_sizes)) {
    if (sizes_.empty()) throw DomainError("a shape needs at least one circle");
    for (auto s : sizes_) {
      if (s == 0) throw DomainError("circle sizes must be positive");
      starts_.push_back(total_);
      total_ += s;
    }
    for (std::size_t k = 0; k < sizes_.size(); ++k) circle_of_.insert(circle_of_.end(), sizes_[k], k);
  }

  static AnnulusShape two(std::size_t p, std::size_t q) { return AnnulusShape({p, q}); }

  const std::vector<std::size_t>& circle_sizes() const noexcept { return sizes_; }
  std::size_t circles() const noexcept { return sizes_.size(); }
  std::size_t total() const noexcept { return total_; }
  GroundSet ground() const { return GroundSet::range(total_); }

  /// Circle index of a ground position (label - 1).
  std::size_t circle_of(std::size_t index) const { return circle_of_.at(index); }
  /// Ground position of the first label of circle k.
  std::size_t circle_start(std::size_t k) const { return starts_.at(k); }

  bool is_two_circle() const noexcept { return sizes_.size() == 2; }
  std::size_t p() const { return two_circle().first; }
  std::size_t q() const { return two_circle().second; }

  bool operator==(const AnnulusShape& other) const noexcept { return sizes_ == other.sizes_; }

 private:
  std::pair<std::size_t, std::size_t> two_circle() const {
    if (!is_two_circle()) throw DomainError("operation requires a two-circle shape (p,q)");
    return {sizes_[0], sizes_[1]};
  }

  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> starts_;
  std::vector<std::size_t> circle_of_;
  std::size_t total_ = 0;
};

/// Parses "p,q" or "p1,...,pl".
inline AnnulusShape parse_shape(std::string_view text) {
  std::vector<std::size_t> sizes;
  std::size_t i = 0;
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    std::size_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::size_t>(text[i] - '0');
      if (v > 1'000'000) throw ParseError("circle size too large", start);
      ++i;
    }
    if (i == start) throw ParseError("expected a circle size", start);
    if (v == 0) throw ParseError("circle sizes must be positive", start);
    sizes.push_back(v);
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError("expected ','", i);
    ++i;
  }
  return AnnulusShape(std::move(sizes));
}

inline std::string format_shape(const AnnulusShape& shape) {
  std::string s;
  for (std::size_t k = 0; k < shape.circles(); ++k) {
    if (k) s += ',';
    s += std::to_string(shape.circle_sizes()[k]);
  }
  return s;
}

struct Gammas {
  std::vector<Permutation> circles;  // forward cycle of each circle
  Permutation gamma;                 // their product
};

inline Gammas gammas(const AnnulusShape& shape) {
  const auto g = shape.ground();
  std::vector<Permutation> circles;
  std::vector<Cycle> all;
  for (std::size_t k = 0; k < shape.circles(); ++k) {
    Cycle c;
    for (std::size_t i = 0; i < shape.circle_sizes()[k]; ++i)
      c.push_back(static_cast<Label>(shape.circle_start(k) + i + 1));
    circles.push_back(Permutation::from_cycles(g, {c}));
    all.push_back(std::move(c));
  }
  return {std::move(circles), Permutation::from_cycles(g, all)};
}

inline Permutation gamma_of(const AnnulusShape& shape) { return gammas(shape).gamma; }

namespace detail {

inline void require_on_shape(const Permutation& tau, const AnnulusShape& shape) {
  if (!tau.ground().is_standard() || tau.size() != shape.total())
    throw DomainError("permutation must act on [" + std::to_string(shape.total()) + "] for shape " +
                      format_shape(shape));
}

}  // namespace detail

/// Fixes x and y and runs the remaining labels in one cycle: the external
/// circle from gamma_ext(x) on, then the internal circle from gamma_int(y) on.
/// The arguments may be given in either order.
inline Permutation lambda(const AnnulusShape& shape, Label x, Label y) {
  const auto p = static_cast<Label>(shape.p());
  const auto q = static_cast<Label>(shape.q());
  if (x > y) std::swap(x, y);
  if (x < 1 || x > p || y <= p || y > p + q)
    throw DomainError("lambda needs one label on each circle, got " + std::to_string(x) + "," + std::to_string(y));
  Cycle c;
  for (Label k = 1; k < p; ++k) c.push_back((x - 1 + k) % p + 1);
  for (Label k = 1; k < q; ++k) c.push_back(p + (y - p - 1 + k) % q + 1);
  const auto g = shape.ground();
  if (c.empty()) return Permutation::identity(g);
  return Permutation::from_cycles(g, {c});
}

// ---------------------------------------------------------------------------
// Standardness and crossing patterns

enum class WitnessKind { ANS1, ANS2, AC1, AC2, AC3, DNS, DC };

inline const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::ANS1: return "ANS1";
    case WitnessKind::ANS2: return "ANS2";
    case WitnessKind::AC1: return "AC1";
    case WitnessKind::AC2: return "AC2";
    case WitnessKind::AC3: return "AC3";
    case WitnessKind::DNS: return "DNS";
    case WitnessKind::DC: return "DC";
  }
  return "?";
}

struct CrossingWitness {
  WitnessKind kind;
  std::vector<Label> elements;
  bool operator==(const CrossingWitness&) const = default;
};

/// Checks the two conditions directly: within each orbit the external and
/// internal parts run in circle order, and a connecting orbit jumps between
/// the circles exactly once in each direction.
inline bool is_ann_standard(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  const auto p = static_cast<Label>(shape.p());
  auto in_circle_order = [](const std::vector<Label>& s) {
    std::size_t descents = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] > s[(i + 1) % s.size()]) ++descents;
    return descents <= 1;
  };
  for (const auto& cyc : tau.cycles()) {
    std::vector<Label> ext, in;
    std::size_t jumps = 0;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      (cyc[i] <= p ? ext : in).push_back(cyc[i]);
      if (cyc[i] <= p && cyc[(i + 1) % cyc.size()] > p) ++jumps;
    }
    if (!in_circle_order(ext) || !in_circle_order(in)) return false;
    if (!ext.empty() && !in.empty() && jumps != 1) return false;
  }
  return true;
}

/// Least ANS-1 witness, else least ANS-2 witness.
inline std::optional<CrossingWitness> find_ans(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  const std::size_t n = tau.size();
  const CyclicOrder t(tau);
  const CyclicOrder g(gamma_of(shape));
  auto label = [](std::size_t i) { return static_cast<Label>(i + 1); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !t.same_orbit(a, b) || !g.same_orbit(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (g.induces_cycle({a, b, c}) && t.induces_cycle({a, c, b}))
          return CrossingWitness{WitnessKind::ANS1, {label(a), label(b), label(c)}};
      }
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !g.same_orbit(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (g.same_orbit(a, c)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == c || !g.same_orbit(c, d)) continue;
          if (t.induces_cycle({a, c, b, d}))
            return CrossingWitness{WitnessKind::ANS2, {label(a), label(b), label(c), label(d)}};
        }
      }
    }
  return std::nullopt;
}

/// Least AC-1, else AC-2, else AC-3 witness. The pairs (x,y) are drawn only
/// from orbits meeting both circles, since the patterns need tau|{x,y} = (x,y).
inline std::optional<CrossingWitness> find_crossing(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  const std::size_t n = tau.size();
  const CyclicOrder t(tau);
  const CyclicOrder g(gamma_of(shape));
  auto label = [](std::size_t i) { return static_cast<Label>(i + 1); };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (t.same_orbit(a, b) || !g.same_orbit(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || !t.same_orbit(a, c)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == b || !t.same_orbit(b, d)) continue;
          if (g.induces_cycle({a, b, c, d}))
            return CrossingWitness{WitnessKind::AC1, {label(a), label(b), label(c), label(d)}};
        }
      }
    }

  struct Pair {
    std::size_t x, y;
    CyclicOrder lambda;
  };
  std::vector<Pair> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && t.same_orbit(x, y) && shape.circle_of(x) != shape.circle_of(y))
        pairs.push_back({x, y, CyclicOrder(lambda(shape, label(x), label(y)))});
  if (pairs.empty()) return std::nullopt;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !t.same_orbit(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b || !t.induces_cycle({a, c, b})) continue;
        for (const auto& pr : pairs) {
          if (t.same_orbit(pr.x, a)) continue;
          if (pr.lambda.induces_cycle({a, b, c}))
            return CrossingWitness{WitnessKind::AC2, {label(a), label(b), label(c), label(pr.x), label(pr.y)}};
        }
      }
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (t.same_orbit(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || !t.same_orbit(a, c)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == b || !t.same_orbit(b, d)) continue;
          for (const auto& pr : pairs) {
            if (t.same_orbit(pr.x, a) || t.same_orbit(pr.x, b)) continue;
            if (pr.lambda.induces_cycle({a, b, c, d}))
              return CrossingWitness{WitnessKind::AC3,
                                     {label(a), label(b), label(c), label(d), label(pr.x), label(pr.y)}};
          }
        }
      }
    }
  return std::nullopt;
}

/// Least witness of any of the five kinds: standardness first, then crossings.
inline std::optional<CrossingWitness> find_ann_witness(const Permutation& tau, const AnnulusShape& shape) {
  if (!is_ann_standard(tau, shape)) return find_ans(tau, shape);
  return find_crossing(tau, shape);
}

/// Some orbit meets both circles of a two-circle shape.
inline bool has_connecting_orbit(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  const auto p = static_cast<Label>(shape.p());
  for (const auto& cyc : tau.cycles())
    if (cyc.front() <= p && std::any_of(cyc.begin(), cyc.end(), [&](Label x) { return x > p; })) return true;
  return false;
}

/// tau and gamma act transitively on the ground set.
inline bool is_connected(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  return joint_orbit_count(tau, gamma_of(shape)) == 1;
}

/// #tau + #(tau^-1 gamma) reaches p+q (connected) or p+q+2 (disconnected).
inline bool is_ann_nc_geodesic(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  const std::size_t n = shape.total();
  const auto gamma = gamma_of(shape);
  const std::size_t s = orbit_count(tau) + orbit_count(compose(inverse(tau), gamma));
  return s == (has_connecting_orbit(tau, shape) ? n : n + 2);
}

enum class MembershipMethod { Geodesic, Patterns };

inline bool is_ann_nc(const Permutation& tau, const AnnulusShape& shape,
                      MembershipMethod method = MembershipMethod::Geodesic) {
  if (method == MembershipMethod::Geodesic) return is_ann_nc_geodesic(tau, shape);
  return is_ann_standard(tau, shape) && !find_crossing(tau, shape);
}

/// K(tau) = tau^-1 gamma.
inline Permutation kreweras_annular(const Permutation& tau, const AnnulusShape& shape) {
  if (!is_ann_nc(tau, shape)) throw DomainError("permutation is not annular non-crossing for shape " + format_shape(shape));
  return compose(inverse(tau), gamma_of(shape));
}

// ---------------------------------------------------------------------------
// Counting and enumeration

/// 2pq/(p+q) * C(2p-1,p) * C(2q-1,q)
inline BigInt count_connected_closed_form(unsigned p, unsigned q) {
  if (p == 0 || q == 0) throw DomainError("circle sizes must be positive");
  return exact_div(BigInt(2) * p * q * binomial(2 * p - 1, p) * binomial(2 * q - 1, q), BigInt(p + q));
}

inline BigInt count_disconnected_closed_form(unsigned p, unsigned q) {
  if (p == 0 || q == 0) throw DomainError("circle sizes must be positive");
  return catalan(p) * catalan(q);
}

/// Indices of the blocks of pi that meet both circles.
inline std::vector<std::size_t> connecting_blocks(const SetPartition& pi, const AnnulusShape& shape) {
  const auto p = static_cast<Label>(shape.p());
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < pi.block_count(); ++b) {
    const auto& blk = pi.blocks()[b];
    if (blk.front() <= p && blk.back() > p) out.push_back(b);
  }
  return out;
}

/// Every permutation that is standard in the annular sense and has the blocks
/// of pi as orbits. A connecting block contributes one cycle per choice of
/// (last external element, first internal element).
inline std::vector<Permutation> standard_perms_with_orbits(const SetPartition& pi, const AnnulusShape& shape) {
  const auto p = static_cast<Label>(shape.p());
  if (pi.ground() != shape.ground()) throw DomainError("partition must live on [" + std::to_string(shape.total()) + "]");
  std::vector<std::vector<Cycle>> options;
  for (const auto& blk : pi.blocks()) {
    const auto split = std::partition_point(blk.begin(), blk.end(), [&](Label x) { return x <= p; });
    const std::vector<Label> ext(blk.begin(), split), in(split, blk.end());
    if (ext.empty() || in.empty()) {
      options.push_back({blk});
      continue;
    }
    std::vector<Cycle> choices;
    for (std::size_t i = 0; i < ext.size(); ++i)
      for (std::size_t j = 0; j < in.size(); ++j) {
        Cycle c;
        for (std::size_t k = 1; k <= ext.size(); ++k) c.push_back(ext[(i + k) % ext.size()]);
        for (std::size_t k = 0; k < in.size(); ++k) c.push_back(in[(j + k) % in.size()]);
        choices.push_back(std::move(c));
      }
    options.push_back(std::move(choices));
  }
  std::vector<Permutation> out;
  std::vector<Cycle> current;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == options.size()) {
      out.push_back(Permutation::from_cycles(pi.ground(), current));
      return;
    }
    for (const auto& c : options[k]) {
      current.push_back(c);
      self(self, k + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// All tau in S_ann-nc(p,q) with orbits equal to the blocks of pi, sorted.
inline std::vector<Permutation> nc_ann_fiber(const SetPartition& pi, const AnnulusShape& shape,
                                             MembershipMethod method = MembershipMethod::Geodesic) {
  auto cands = standard_perms_with_orbits(pi, shape);
  std::vector<Permutation> out;
  for (auto& t : cands)
    if (is_ann_nc(t, shape, method)) out.push_back(std::move(t));
  std::sort(out.begin(), out.end());
  return out;
}

enum class Connectivity { Any, Connected, Disconnected };

/// Members of S_ann-nc(p,q), sorted, built fiber by fiber over the set
/// partitions of [p+q].
inline std::vector<Permutation> enumerate_ann_nc(const AnnulusShape& shape, Connectivity which = Connectivity::Any,
                                                 std::size_t max_n = kDefaultEnumerationLimit) {
  if (!shape.is_two_circle()) throw DomainError("enumeration requires a two-circle shape (p,q)");
  std::vector<Permutation> out;
  for_each_set_partition(
      shape.ground(),
      [&](const SetPartition& pi) {
        const bool connected = !connecting_blocks(pi, shape).empty();
        if (which == Connectivity::Connected && !connected) return;
        if (which == Connectivity::Disconnected && connected) return;
        for (auto& t : nc_ann_fiber(pi, shape)) out.push_back(std::move(t));
      },
      max_n);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Parity bijection

/// tau -> K~(tau^odd u K(tau)^even) on [2p+2q], where tau^odd(2i-1) = 2tau(i)-1,
/// K(tau)^even(2i) = 2K(tau)(i) and K~(sigma) = sigma^-1 gamma~ for the shape (2p,2q).
inline Permutation parity_bijection(const Permutation& tau, const AnnulusShape& shape) {
  if (!is_ann_nc(tau, shape)) throw DomainError("permutation is not annular non-crossing for shape " + format_shape(shape));
  if (!has_connecting_orbit(tau, shape)) throw DomainError("permutation is not connected");
  const auto k = compose(inverse(tau), gamma_of(shape));
  const std::size_t n = shape.total();
  std::vector<int> map(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    map[2 * i] = 2 * tau.index_image(i);
    map[2 * i + 1] = 2 * k.index_image(i) + 1;
  }
  const AnnulusShape doubled = AnnulusShape::two(2 * shape.p(), 2 * shape.q());
  const auto sigma = Permutation::from_positions(doubled.ground(), std::move(map));
  return compose(inverse(sigma), gamma_of(doubled));
}

/// Every orbit has exactly two elements.
inline bool is_pair_permutation(const Permutation& tau) {
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const auto j = static_cast<std::size_t>(tau.index_image(i));
    if (j == i || static_cast<std::size_t>(tau.index_image(j)) != i) return false;
  }
  return true;
}

/// sigma(i) - i is odd for every i.
inline bool is_parity_alternating(const Permutation& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if ((static_cast<std::size_t>(sigma.index_image(i)) + i) % 2 == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Any number of circles

/// (n - l + 2 #(tau v gamma)) - (#tau + #(tau^-1 gamma)); never negative.
inline std::size_t genus_defect(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  const auto gamma = gamma_of(shape);
  const std::size_t bound = shape.total() - shape.circles() + 2 * joint_orbit_count(tau, gamma);
  const std::size_t s = orbit_count(tau) + orbit_count(compose(inverse(tau), gamma));
  if (s > bound) throw std::logic_error("orbit count exceeds the genus bound");
  return bound - s;
}

/// Circles i and j share a block iff they lie in one joint orbit of tau and gamma.
inline SetPartition circle_partition(const Permutation& tau, const AnnulusShape& shape) {
  detail::require_on_shape(tau, shape);
  const auto ids = joint_orbit_ids(tau, gamma_of(shape));
  std::vector<std::vector<Label>> by_id(shape.total());
  for (std::size_t k = 0; k < shape.circles(); ++k)
    by_id[ids[shape.circle_start(k)]].push_back(static_cast<Label>(k + 1));
  std::vector<Block> blocks;
  for (auto& b : by_id)
    if (!b.empty()) blocks.push_back(std::move(b));
  return SetPartition(GroundSet::range(shape.circles()), std::move(blocks));
}

}  // namespace annulus
