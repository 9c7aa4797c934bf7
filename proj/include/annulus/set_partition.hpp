#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "annulus/errors.hpp"
#include "annulus/ground_set.hpp"

namespace annulus {

using Block = std::vector<Label>;

/// A partition of a ground set into disjoint non-empty blocks.
///
/// Stored canonically: elements sorted inside each block, blocks sorted by
/// their minima. Two partitions are equal iff their canonical forms agree.
class SetPartition {
 public:
  SetPartition(GroundSet ground, std::vector<Block> blocks) : ground_(std::move(ground)), blocks_(std::move(blocks)) {
    std::vector<char> seen(ground_.size(), 0);
    for (auto& b : blocks_) {
      if (b.empty()) throw DomainError("partition blocks must be non-empty");
      std::sort(b.begin(), b.end());
      for (Label x : b) {
        auto i = ground_.find(x);
        if (!i) throw DomainError("block label " + std::to_string(x) + " is not in the ground set");
        if (seen[*i]) throw DomainError("label " + std::to_string(x) + " appears in two blocks");
        seen[*i] = 1;
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw DomainError("blocks do not cover the ground set");
    std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
  }

  static SetPartition singletons(const GroundSet& ground) {
    std::vector<Block> blocks;
    for (Label x : ground) blocks.push_back({x});
    return SetPartition(ground, std::move(blocks));
  }

  static SetPartition one_block(const GroundSet& ground) {
    return SetPartition(ground, {Block(ground.begin(), ground.end())});
  }

  const GroundSet& ground() const noexcept { return ground_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }

  /// Index (into blocks()) of the block containing x.
  std::size_t block_of(Label x) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), x)) return i;
    throw DomainError("label " + std::to_string(x) + " is not in the ground set");
  }

  /// block id per ground position
  std::vector<std::size_t> block_index() const {
    std::vector<std::size_t> id(ground_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (Label x : blocks_[b]) id[ground_.index_of(x)] = b;
    return id;
  }

  bool operator==(const SetPartition& other) const = default;
  bool operator<(const SetPartition& other) const {
    if (ground_ != other.ground_) return ground_ < other.ground_;
    return blocks_ < other.blocks_;
  }

 private:
  GroundSet ground_;
  std::vector<Block> blocks_;
};

/// Lexicographically least (a,b,c,d), a<b<c<d, with a,c in one block and
/// b,d in another; empty when the partition is non-crossing.
inline std::optional<std::array<Label, 4>> find_disc_crossing(const SetPartition& pi) {
  const auto& g = pi.ground();
  const auto id = pi.block_index();
  const std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (id[a] == id[b]) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (id[c] != id[a]) continue;
        for (std::size_t d = c + 1; d < n; ++d)
          if (id[d] == id[b]) return std::array<Label, 4>{g[a], g[b], g[c], g[d]};
      }
    }
  return std::nullopt;
}

inline bool is_noncrossing_disc(const SetPartition& pi) { return !find_disc_crossing(pi).has_value(); }

/// Every block of pi lies inside a block of rho.
inline bool leq(const SetPartition& pi, const SetPartition& rho) {
  if (pi.ground() != rho.ground()) throw DomainError("partitions live on different ground sets");
  const auto& g = pi.ground();
  const auto rid = rho.block_index();
  for (const auto& b : pi.blocks()) {
    const auto first = rid[g.index_of(b.front())];
    for (Label x : b)
      if (rid[g.index_of(x)] != first) return false;
  }
  return true;
}

inline bool is_complete_matching(const SetPartition& pi) {
  return std::all_of(pi.blocks().begin(), pi.blocks().end(), [](const Block& b) { return b.size() == 2; });
}

inline constexpr std::size_t kDefaultPartitionLimit = 12;

/// Visits every set partition of `ground`, generated as restricted-growth strings.
/// The visitor may return false to stop early.
template <typename Visitor>
void for_each_set_partition(const GroundSet& ground, Visitor&& visit, std::size_t max_n = kDefaultPartitionLimit) {
  const std::size_t n = ground.size();
  if (n > max_n)
    throw GuardError("partition enumeration of " + std::to_string(n) + " elements exceeds the limit " +
                     std::to_string(max_n));
  std::vector<std::size_t> rgs(n, 0), maxima(n, 0);
  while (true) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k = std::max(k, rgs[i] + 1);
    std::vector<Block> blocks(k);
    for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(ground[i]);
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, SetPartition>, bool>) {
      if (!visit(SetPartition(ground, std::move(blocks)))) return;
    } else {
      visit(SetPartition(ground, std::move(blocks)));
    }
    // next restricted-growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1])
    std::size_t i = n;
    while (i-- > 1) {
      if (rgs[i] <= maxima[i - 1]) {
        ++rgs[i];
        maxima[i] = std::max(maxima[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
          rgs[j] = 0;
          maxima[j] = maxima[i];
        }
        break;
      }
    }
    if (i == 0) return;
  }
}

inline std::vector<SetPartition> enumerate_partitions(const GroundSet& ground,
                                                      std::size_t max_n = kDefaultPartitionLimit) {
  std::vector<SetPartition> out;
  for_each_set_partition(ground, [&](SetPartition p) { out.push_back(std::move(p)); }, max_n);
  return out;
}

inline std::vector<SetPartition> enumerate_partitions(std::size_t n, std::size_t max_n = kDefaultPartitionLimit) {
  return enumerate_partitions(GroundSet::range(n), max_n);
}

using MobiusValue = std::int64_t;

/// Mobius function of the refinement order, the unique function with
/// mu(pi,pi) = 1 and sum_{theta <= sigma <= rho} mu(sigma, rho) = 0 for theta < rho.
///
/// Solved top-down over the interval [pi, rho]: mu(sigma, rho) = -sum_{sigma < tau <= rho} mu(tau, rho),
/// memoized per call.
inline MobiusValue mobius(const SetPartition& pi, const SetPartition& rho) {
  if (!leq(pi, rho)) throw DomainError("mobius(pi, rho) requires pi <= rho");
  // [pi, rho] is the set of merges of pi's blocks that stay inside rho's blocks.
  const auto& g = pi.ground();
  const std::size_t k = pi.block_count();
  const auto rid = rho.block_index();
  std::vector<std::size_t> outer(k);
  for (std::size_t b = 0; b < k; ++b) outer[b] = rid[g.index_of(pi.blocks()[b].front())];

  struct Element {
    std::vector<std::size_t> rgs;  // merged-block id per block of pi
    std::size_t blocks;
  };
  std::vector<Element> interval;
  for_each_set_partition(
      GroundSet::range(k),
      [&](const SetPartition& merge) {
        for (const auto& mb : merge.blocks())
          for (Label x : mb)
            if (outer[x - 1] != outer[mb.front() - 1]) return;
        interval.push_back({merge.block_index(), merge.block_count()});
      },
      64);
  // coarsest (rho) first, pi last
  std::stable_sort(interval.begin(), interval.end(),
                   [](const Element& a, const Element& b) { return a.blocks < b.blocks; });
  auto refines = [](const Element& a, const Element& b) {
    std::vector<std::size_t> image(a.blocks, SIZE_MAX);
    for (std::size_t i = 0; i < a.rgs.size(); ++i) {
      auto& slot = image[a.rgs[i]];
      if (slot == SIZE_MAX) slot = b.rgs[i];
      else if (slot != b.rgs[i]) return false;
    }
    return true;
  };
  std::vector<MobiusValue> mu(interval.size(), 0);
  mu[0] = 1;
  for (std::size_t s = 1; s < interval.size(); ++s) {
    MobiusValue acc = 0;
    for (std::size_t t = 0; t < s; ++t)
      if (interval[t].blocks < interval[s].blocks && refines(interval[s], interval[t])) acc += mu[t];
    mu[s] = -acc;
  }
  return mu.back();
}

/// Parses "{1,2}{3,5}" style block notation. Labels of `ground` that are not
/// mentioned become singleton blocks.
inline SetPartition parse_partition(std::string_view text, const GroundSet& ground) {
  std::vector<Block> blocks;
  std::vector<char> used(ground.size(), 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> Label {
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
    if (text[i] != '{') throw ParseError("expected '{'", i);
    ++i;
    Block b{read_int()};
    skip_ws();
    while (i < text.size() && text[i] == ',') {
      ++i;
      b.push_back(read_int());
      skip_ws();
    }
    if (i >= text.size() || text[i] != '}') throw ParseError("expected '}' or ','", i);
    ++i;
    blocks.push_back(std::move(b));
    skip_ws();
  }
  for (std::size_t k = 0; k < ground.size(); ++k)
    if (!used[k]) blocks.push_back({ground[k]});
  return SetPartition(ground, std::move(blocks));
}

inline std::string format_partition(const SetPartition& pi) {
  std::string s;
  for (const auto& b : pi.blocks()) {
    s += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(b[i]);
    }
    s += '}';
  }
  return s;
}

}  // namespace annulus
