#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "annulus/permutation.hpp"

namespace annulus {

/// Orbit id and position-along-the-cycle for every ground position of a
/// permutation. Answers "does p induce exactly the cycle (e0, e1, ..., ek)
/// on {e0, ..., ek}?" in O(k), which is how every localized pattern
/// (DNS, DC, ANS-1/2, AC-1/2/3) is phrased.
class CyclicOrder {
 public:
  explicit CyclicOrder(const Permutation& p) : orbit_(p.size(), -1), offset_(p.size(), 0) {
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (orbit_[s] >= 0) continue;
      const int id = static_cast<int>(length_.size());
      std::size_t len = 0;
      for (std::size_t i = s; orbit_[i] < 0; i = static_cast<std::size_t>(p.index_image(i))) {
        orbit_[i] = id;
        offset_[i] = len++;
      }
      length_.push_back(len);
    }
  }

  std::size_t size() const noexcept { return orbit_.size(); }
  int orbit(std::size_t i) const noexcept { return orbit_[i]; }
  std::size_t orbit_length(std::size_t i) const noexcept { return length_[static_cast<std::size_t>(orbit_[i])]; }
  std::size_t orbit_count() const noexcept { return length_.size(); }
  bool same_orbit(std::size_t i, std::size_t j) const noexcept { return orbit_[i] == orbit_[j]; }

  /// True iff the permutation induced on the listed (distinct) positions is
  /// the single cycle visiting them in the listed order.
  bool induces_cycle(std::span<const std::size_t> elems) const noexcept {
    if (elems.empty()) return true;
    const std::size_t e0 = elems[0];
    const std::size_t len = orbit_length(e0);
    std::size_t prev = 0;
    for (std::size_t k = 1; k < elems.size(); ++k) {
      if (orbit_[elems[k]] != orbit_[e0]) return false;
      const std::size_t d = (offset_[elems[k]] + len - offset_[e0]) % len;
      if (d <= prev) return false;
      prev = d;
    }
    return true;
  }
  bool induces_cycle(std::initializer_list<std::size_t> elems) const noexcept {
    return induces_cycle(std::span<const std::size_t>(elems.begin(), elems.size()));
  }

 private:
  std::vector<int> orbit_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> length_;
};

}  // namespace annulus
