#pragma once

// Independent reference implementations. Nothing here calls into the
// library's counting or enumeration code; only the basic value types are shared.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "annulus/permutation.hpp"
#include "annulus/set_partition.hpp"

namespace oracle {

using annulus::Label;
using annulus::Permutation;

/// Bell numbers from the Bell triangle.
inline std::uint64_t bell(std::size_t n) {
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

/// Catalan numbers from the convolution recurrence.
inline std::uint64_t catalan(std::size_t n) {
  std::vector<std::uint64_t> c(n + 1, 0);
  c[0] = 1;
  for (std::size_t m = 1; m <= n; ++m)
    for (std::size_t i = 0; i < m; ++i) c[m] += c[i] * c[m - 1 - i];
  return c[n];
}

inline std::uint64_t double_factorial(std::int64_t n) {
  std::uint64_t r = 1;
  for (std::int64_t k = n; k > 1; k -= 2) r *= static_cast<std::uint64_t>(k);
  return r;
}

inline std::int64_t factorial(std::int64_t n) {
  std::int64_t r = 1;
  for (std::int64_t k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Product formula for the partition lattice: the interval [pi, rho] is a product
/// of full partition lattices, one per block of rho, of rank (k - 1) where k
/// counts the blocks of pi inside it; each contributes (-1)^(k-1) (k-1)!.
inline std::int64_t mobius_product(const annulus::SetPartition& pi, const annulus::SetPartition& rho) {
  std::int64_t mu = 1;
  for (const auto& rb : rho.blocks()) {
    std::int64_t k = 0;
    for (const auto& pb : pi.blocks())
      if (std::find(rb.begin(), rb.end(), pb.front()) != rb.end()) ++k;
    mu *= ((k - 1) % 2 ? -1 : 1) * factorial(k - 1);
  }
  return mu;
}

/// Image vectors of every permutation of [n], in lexicographic order.
inline std::vector<std::vector<Label>> all_images(std::size_t n) {
  std::vector<Label> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Label>(i + 1);
  std::vector<std::vector<Label>> out;
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline std::vector<Permutation> all_perms(std::size_t n) {
  std::vector<Permutation> out;
  const auto g = annulus::GroundSet::range(n);
  for (const auto& im : all_images(n)) out.emplace_back(g, im);
  return out;
}

/// Orbit count by walking each label until it returns.
inline std::size_t orbits(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  std::size_t count = 0;
  const auto g = p.ground();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    Label x = g[i];
    while (!seen[g.index_of(x)]) {
      seen[g.index_of(x)] = 1;
      x = p(x);
    }
  }
  return count;
}

/// Random permutation of [n].
inline Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Label> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Label>(i + 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(annulus::GroundSet::range(n), v);
}

/// Random non-empty subset of a ground set.
inline annulus::GroundSet random_subset(const annulus::GroundSet& g, std::mt19937_64& rng) {
  std::vector<Label> out;
  while (out.empty()) {
    out.clear();
    for (Label x : g)
      if (rng() & 1) out.push_back(x);
  }
  return annulus::GroundSet(out);
}

}  // namespace oracle
