#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "annulus/cyclic_order.hpp"
#include "annulus/errors.hpp"
#include "annulus/permutation.hpp"
#include "annulus/set_partition.hpp"

namespace annulus {

/// The forward cycle (1, 2, ..., n).
inline Permutation gamma_disc(std::size_t n) { return forward_cycle(GroundSet::range(n)); }

/// Lexicographically least (a,b,c) with gamma|{a,b,c} = (a,b,c) and
/// tau|{a,b,c} = (a,c,b), gamma being the forward cycle of tau's ground set.
inline std::optional<std::array<Label, 3>> find_dns(const Permutation& tau) {
  const auto& g = tau.ground();
  const std::size_t n = tau.size();
  const CyclicOrder t(tau);
  const CyclicOrder o(forward_cycle(g));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !t.same_orbit(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (o.induces_cycle({a, b, c}) && t.induces_cycle({a, c, b})) return std::array<Label, 3>{g[a], g[b], g[c]};
      }
    }
  return std::nullopt;
}

/// Every cycle of tau visits its orbit in increasing cyclic order.
inline bool is_disc_standard(const Permutation& tau) {
  for (const auto& cyc : tau.cycles())
    for (std::size_t i = 1; i < cyc.size(); ++i)
      if (cyc[i] < cyc[i - 1]) return false;
  return true;
}

/// Lexicographically least (a,b,c,d) with gamma|{a,b,c,d} = (a,b,c,d) and
/// tau|{a,b,c,d} = (a,c)(b,d).
inline std::optional<std::array<Label, 4>> find_dc(const Permutation& tau) {
  const auto& g = tau.ground();
  const std::size_t n = tau.size();
  const CyclicOrder t(tau);
  const CyclicOrder o(forward_cycle(g));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (t.same_orbit(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || !t.same_orbit(a, c)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == b || !t.same_orbit(b, d)) continue;
          if (o.induces_cycle({a, b, c, d})) return std::array<Label, 4>{g[a], g[b], g[c], g[d]};
        }
      }
    }
  return std::nullopt;
}

inline bool is_disc_nc(const Permutation& tau) { return is_disc_standard(tau) && !find_dc(tau); }

/// #tau + #(tau^-1 gamma) = n + 1.
inline bool is_disc_nc_geodesic(const Permutation& tau) {
  const auto gamma = forward_cycle(tau.ground());
  return orbit_count(tau) + orbit_count(compose(inverse(tau), gamma)) == tau.size() + 1;
}

/// d(id, tau) + d(tau, omega) = d(id, omega) for a disc-standard omega.
inline bool is_disc_nc_relative(const Permutation& tau, const Permutation& omega) {
  detail::require_same_ground(tau, omega);
  if (!is_disc_standard(omega)) throw DomainError("reference permutation is not standard in the disc sense");
  const auto id = Permutation::identity(tau.ground());
  return cayley_distance(id, tau) + cayley_distance(tau, omega) == cayley_distance(id, omega);
}

/// The disc-standard permutation whose orbits are the blocks of pi.
inline Permutation perm_of_nc_partition(const SetPartition& pi) {
  if (auto w = find_disc_crossing(pi))
    throw DomainError("partition is crossing at (" + std::to_string((*w)[0]) + "," + std::to_string((*w)[1]) + "," +
                      std::to_string((*w)[2]) + "," + std::to_string((*w)[3]) + ")");
  return Permutation::from_cycles(pi.ground(), pi.blocks());
}

inline constexpr std::size_t kDefaultEnumerationLimit = 12;

/// Visits every disc non-crossing partition of `ground`. The block containing
/// the first element of a gap is chosen first, then the gaps it leaves are
/// filled independently.
template <typename Visitor>
void for_each_nc_partition(const GroundSet& ground, Visitor&& visit, std::size_t max_n = kDefaultEnumerationLimit) {
  const std::size_t n = ground.size();
  if (n > max_n)
    throw GuardError("enumeration of " + std::to_string(n) + " elements exceeds the limit " + std::to_string(max_n));
  std::vector<std::pair<std::size_t, std::size_t>> pending{{0, n}};
  std::vector<Block> blocks;
  auto rec = [&](auto&& self) -> void {
    if (pending.empty()) {
      visit(SetPartition(ground, blocks));
      return;
    }
    const auto [lo, hi] = pending.back();
    pending.pop_back();
    if (lo >= hi) {
      self(self);
    } else {
      const std::size_t rest = hi - lo - 1;
      for (std::size_t mask = 0; mask < (std::size_t{1} << rest); ++mask) {
        Block b{ground[lo]};
        const std::size_t saved = pending.size();
        std::size_t start = lo + 1;
        for (std::size_t j = 0; j < rest; ++j) {
          if (!(mask >> j & 1)) continue;
          const std::size_t e = lo + 1 + j;
          pending.emplace_back(start, e);
          b.push_back(ground[e]);
          start = e + 1;
        }
        pending.emplace_back(start, hi);
        blocks.push_back(std::move(b));
        self(self);
        blocks.pop_back();
        pending.resize(saved);
      }
    }
    pending.emplace_back(lo, hi);
  };
  rec(rec);
}

inline std::vector<SetPartition> enumerate_nc_partitions(const GroundSet& ground,
                                                         std::size_t max_n = kDefaultEnumerationLimit) {
  std::vector<SetPartition> out;
  for_each_nc_partition(ground, [&](SetPartition p) { out.push_back(std::move(p)); }, max_n);
  return out;
}

/// Members of S_disc-nc(ground), sorted.
inline std::vector<Permutation> enumerate_disc_nc(const GroundSet& ground,
                                                  std::size_t max_n = kDefaultEnumerationLimit) {
  std::vector<Permutation> out;
  for_each_nc_partition(ground, [&](const SetPartition& p) { out.push_back(perm_of_nc_partition(p)); }, max_n);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Permutation> enumerate_disc_nc(std::size_t n, std::size_t max_n = kDefaultEnumerationLimit) {
  return enumerate_disc_nc(GroundSet::range(n), max_n);
}

}  // namespace annulus
