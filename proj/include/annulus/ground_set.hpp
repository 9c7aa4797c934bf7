#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "annulus/errors.hpp"

namespace annulus {

using Label = int;

/// A finite, totally ordered set of positive integer labels.
///
/// Labels are kept strictly increasing. The common case {1,...,n} is detected
/// so that label lookups are O(1); arbitrary subsets fall back to binary search.
class GroundSet {
 public:
  explicit GroundSet(std::vector<Label> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw DomainError("ground set must be non-empty");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] < 1) throw DomainError("ground labels must be positive, got " + std::to_string(labels_[i]));
      if (i > 0 && labels_[i] <= labels_[i - 1])
        throw DomainError("ground labels must be strictly increasing");
    }
    interval_ = labels_.front() == 1 && labels_.back() == static_cast<Label>(labels_.size());
  }

  /// The set [n] = {1, ..., n}.
  static GroundSet range(std::size_t n) {
    if (n == 0) throw DomainError("ground set must be non-empty");
    std::vector<Label> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Label>(i + 1);
    return GroundSet(std::move(v));
  }

  /// The interval {first, ..., last}.
  static GroundSet interval(Label first, Label last) {
    if (last < first) throw DomainError("empty interval");
    std::vector<Label> v;
    for (Label x = first; x <= last; ++x) v.push_back(x);
    return GroundSet(std::move(v));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const Label> labels() const noexcept { return labels_; }
  Label operator[](std::size_t i) const { return labels_[i]; }
  auto begin() const noexcept { return labels_.begin(); }
  auto end() const noexcept { return labels_.end(); }

  /// True when the ground set is exactly {1, ..., size()}.
  bool is_standard() const noexcept { return interval_; }

  std::optional<std::size_t> find(Label x) const noexcept {
    if (interval_) {
      if (x < 1 || x > static_cast<Label>(labels_.size())) return std::nullopt;
      return static_cast<std::size_t>(x - 1);
    }
    auto it = std::lower_bound(labels_.begin(), labels_.end(), x);
    if (it == labels_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool contains(Label x) const noexcept { return find(x).has_value(); }

  std::size_t index_of(Label x) const {
    auto i = find(x);
    if (!i) throw DomainError("label " + std::to_string(x) + " is not in the ground set");
    return *i;
  }

  bool is_subset_of(const GroundSet& other) const noexcept {
    return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(), labels_.end());
  }

  bool operator==(const GroundSet& other) const noexcept { return labels_ == other.labels_; }
  auto operator<=>(const GroundSet& other) const noexcept { return labels_ <=> other.labels_; }

 private:
  std::vector<Label> labels_;
  bool interval_ = false;
};

}  // namespace annulus
