#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "annulus/annular.hpp"
#include "annulus/cpoly.hpp"
#include "annulus/disc.hpp"
#include "annulus/errors.hpp"
#include "annulus/numbers.hpp"
#include "annulus/permutation.hpp"
#include "annulus/set_partition.hpp"

namespace annulus {

/// A letter function [n] -> [s].
class Word {
 public:
  Word(std::vector<int> letters, std::size_t alphabet_size) : letters_(std::move(letters)), s_(alphabet_size) {
    if (letters_.empty()) throw DomainError("a word needs at least one letter");
    if (s_ == 0) throw DomainError("alphabet size must be positive");
    for (int a : letters_)
      if (a < 1 || static_cast<std::size_t>(a) > s_)
        throw DomainError("letter " + std::to_string(a) + " outside alphabet [" + std::to_string(s_) + "]");
  }

  /// The word 1 1 ... 1 of length n over a one-letter alphabet.
  static Word constant(std::size_t n) { return Word(std::vector<int>(n, 1), 1); }

  std::size_t size() const noexcept { return letters_.size(); }
  std::size_t alphabet_size() const noexcept { return s_; }
  const std::vector<int>& letters() const noexcept { return letters_; }
  int operator[](std::size_t i) const { return letters_[i]; }

  bool operator==(const Word&) const = default;

 private:
  std::vector<int> letters_;
  std::size_t s_;
};

/// Parses "1,2,1". With alphabet_size 0 the alphabet is [largest letter].
inline Word parse_word(std::string_view text, std::size_t alphabet_size = 0) {
  std::vector<int> letters;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) throw ParseError("empty word", i);
  while (true) {
    skip();
    const std::size_t start = i;
    long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1'000'000) throw ParseError("letter too large", start);
      ++i;
    }
    if (i == start) throw ParseError("expected a letter", i);
    if (v == 0) throw ParseError("letters start at 1", start);
    letters.push_back(static_cast<int>(v));
    skip();
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError(std::string("unexpected '") + text[i] + "'", i);
    ++i;
  }
  const auto top = static_cast<std::size_t>(*std::max_element(letters.begin(), letters.end()));
  if (alphabet_size != 0 && top > alphabet_size)
    throw ParseError("letter " + std::to_string(top) + " outside alphabet [" + std::to_string(alphabet_size) + "]", 0);
  return Word(std::move(letters), alphabet_size ? alphabet_size : top);
}

/// Parses words separated by ';', e.g. "1,2;2". All words share one alphabet.
inline std::vector<Word> parse_words(std::string_view text, std::size_t alphabet_size = 0) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == ';') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  std::vector<Word> out;
  std::size_t offset = 0;
  for (auto part : parts) {
    try {
      out.push_back(parse_word(part, alphabet_size));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " in word " + std::to_string(out.size() + 1), offset + e.position());
    }
    offset += part.size() + 1;
  }
  if (alphabet_size == 0) {
    std::size_t s = 0;
    for (const auto& w : out) s = std::max(s, w.alphabet_size());
    for (auto& w : out) w = Word(w.letters(), s);
  }
  return out;
}

inline std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out;
}

/// The juxtaposition w_1 w_2 ... w_l.
inline std::vector<int> juxtapose(const std::vector<Word>& words) {
  std::vector<int> out;
  for (const auto& w : words) out.insert(out.end(), w.letters().begin(), w.letters().end());
  return out;
}

/// The shape (|w_1|, ..., |w_l|).
inline AnnulusShape shape_of(const std::vector<Word>& words) {
  if (words.empty()) throw DomainError("at least one word is required");
  std::vector<std::size_t> sizes;
  for (const auto& w : words) sizes.push_back(w.size());
  return AnnulusShape(std::move(sizes));
}

/// Default bound on the total length of the words in an exact sum.
inline constexpr std::size_t kDefaultMomentLimit = 9;

namespace detail {

inline void require_total(std::size_t n, std::size_t max_n) {
  if (n > max_n)
    throw GuardError("total word length " + std::to_string(n) + " exceeds the limit " + std::to_string(max_n));
}

/// Visits, as position maps, every tau with letters[tau(m)] == letters[m]:
/// one symmetric group per letter class, combined as a product.
template <typename Visitor>
void for_each_stabilizer_map(const std::vector<int>& letters, Visitor&& visit) {
  std::map<int, std::vector<int>> by_letter;
  for (std::size_t i = 0; i < letters.size(); ++i) by_letter[letters[i]].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> classes;
  for (auto& [letter, pos] : by_letter) classes.push_back(std::move(pos));
  std::vector<std::vector<int>> images = classes;
  std::vector<int> map(letters.size());
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == classes.size()) {
      visit(static_cast<const std::vector<int>&>(map));
      return;
    }
    auto& img = images[k];
    std::sort(img.begin(), img.end());
    do {
      for (std::size_t j = 0; j < img.size(); ++j) map[classes[k][j]] = img[j];
      self(self, k + 1);
    } while (std::next_permutation(img.begin(), img.end()));
  };
  rec(rec, 0);
}

/// Visits the fixed-point-free involutions that pair equal letters only.
template <typename Visitor>
void for_each_symmetric_matching(const std::vector<int>& letters, Visitor&& visit) {
  const std::size_t n = letters.size();
  if (n % 2) return;
  std::vector<int> map(n, -1);
  auto rec = [&](auto&& self) -> void {
    std::size_t i = 0;
    while (i < n && map[i] >= 0) ++i;
    if (i == n) {
      visit(static_cast<const std::vector<int>&>(map));
      return;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (map[j] >= 0 || letters[j] != letters[i]) continue;
      map[i] = static_cast<int>(j);
      map[j] = static_cast<int>(i);
      self(self);
      map[i] = map[j] = -1;
    }
  };
  rec(rec);
}

/// Tally of tau by (#tau, #(tau^-1 gamma)).
using OrbitProfile = std::map<std::pair<std::size_t, std::size_t>, std::uint64_t>;

enum class Restriction { All, Connected };

// Accumulates the profile of one position map against gamma.
class ProfileBuilder {
 public:
  ProfileBuilder(const AnnulusShape& shape, Restriction r) : gamma_(gamma_of(shape)), r_(r) {
    const std::size_t n = shape.total();
    inv_.resize(n);
    kg_.resize(n);
  }

  void add(const std::vector<int>& map) {
    const std::size_t n = map.size();
    if (r_ == Restriction::Connected) {
      DisjointSets ds(n);
      for (std::size_t i = 0; i < n; ++i) {
        ds.unite(i, static_cast<std::size_t>(map[i]));
        ds.unite(i, static_cast<std::size_t>(gamma_.index_image(i)));
      }
      if (ds.components() != 1) return;
    }
    for (std::size_t i = 0; i < n; ++i) inv_[static_cast<std::size_t>(map[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < n; ++i) kg_[i] = inv_[static_cast<std::size_t>(gamma_.index_image(i))];
    ++profile_[{count_cycles(map, seen_), count_cycles(kg_, seen_)}];
  }

  const OrbitProfile& profile() const noexcept { return profile_; }

 private:
  Permutation gamma_;
  Restriction r_;
  std::vector<int> inv_, kg_;
  std::vector<char> seen_;
  OrbitProfile profile_;
};

inline OrbitProfile wishart_profile(const std::vector<Word>& words, Restriction r, std::size_t max_n) {
  const auto shape = shape_of(words);
  require_total(shape.total(), max_n);
  ProfileBuilder b(shape, r);
  for_each_stabilizer_map(juxtapose(words), [&](const std::vector<int>& m) { b.add(m); });
  return b.profile();
}

inline OrbitProfile gue_profile(const std::vector<Word>& words, Restriction r, std::size_t max_n) {
  const auto shape = shape_of(words);
  require_total(shape.total(), max_n);
  ProfileBuilder b(shape, r);
  for_each_symmetric_matching(juxtapose(words), [&](const std::vector<int>& m) { b.add(m); });
  return b.profile();
}

// sum of count * M^a N^b over the profile, divided by N^d
inline Rational evaluate_profile(const OrbitProfile& prof, const BigInt& m, const BigInt& n, std::size_t d) {
  BigInt num = 0;
  for (const auto& [ab, count] : prof) num += BigInt(count) * power(m, ab.first) * power(n, ab.second);
  return Rational(num, power(n, d));
}

inline void require_dims(long long m, long long n) {
  if (m < 1 || n < 1) throw DomainError("matrix dimensions M and N must be positive");
}

}  // namespace detail

/// Every tau of [n] with w(tau(m)) = w(m), where w juxtaposes the words.
template <typename Visitor>
void for_each_word_symmetric_perm(const std::vector<Word>& words, Visitor&& visit,
                                  std::size_t max_n = kDefaultMomentLimit) {
  const auto shape = shape_of(words);
  detail::require_total(shape.total(), max_n);
  const auto ground = shape.ground();
  detail::for_each_stabilizer_map(juxtapose(words),
                                  [&](const std::vector<int>& m) { visit(Permutation::from_positions(ground, m)); });
}

inline std::vector<Permutation> word_symmetric_perms(const std::vector<Word>& words,
                                                     std::size_t max_n = kDefaultMomentLimit) {
  std::vector<Permutation> out;
  for_each_word_symmetric_perm(words, [&](const Permutation& t) { out.push_back(t); }, max_n);
  return out;
}

inline std::vector<Permutation> word_symmetric_perms(const Word& w, std::size_t max_n = kDefaultMomentLimit) {
  return word_symmetric_perms(std::vector<Word>{w}, max_n);
}

// ---------------------------------------------------------------------------
// Exact finite-(M,N) values

/// E(tr X_{w_1} ... tr X_{w_l}) for X_r = G_r^* G_r / N, G_r of size M x N.
inline Rational wishart_trace_product_exact(const std::vector<Word>& words, long long M, long long N,
                                            std::size_t max_n = kDefaultMomentLimit) {
  detail::require_dims(M, N);
  const auto prof = detail::wishart_profile(words, detail::Restriction::All, max_n);
  return detail::evaluate_profile(prof, M, N, shape_of(words).total() + words.size());
}

/// E(tr Y_{w_1} ... tr Y_{w_l}) for Y_r = (G_r + G_r^*) / sqrt(2N), G_r of size N x N.
inline Rational gue_trace_product_exact(const std::vector<Word>& words, long long N,
                                        std::size_t max_n = kDefaultMomentLimit) {
  detail::require_dims(1, N);
  const auto prof = detail::gue_profile(words, detail::Restriction::All, max_n);
  BigInt num = 0;
  for (const auto& [ab, count] : prof) num += BigInt(count) * power(BigInt(N), ab.first + ab.second);
  return Rational(num, power(BigInt(N), shape_of(words).total() + words.size()));
}

/// Classical cumulant C_l(tr X_{w_1}, ..., tr X_{w_l}) through Moebius
/// inversion on the partitions of [l].
inline Rational classical_cumulant_exact(const std::vector<Word>& words, long long M, long long N,
                                         std::size_t max_n = kDefaultMomentLimit) {
  const auto shape = shape_of(words);
  detail::require_total(shape.total(), max_n);
  const auto l = words.size();
  const auto top = SetPartition::one_block(GroundSet::range(l));
  std::map<Block, Rational> moment;
  Rational total = 0;
  for (const auto& pi : enumerate_partitions(l)) {
    Rational term = mobius(pi, top);
    for (const auto& blk : pi.blocks()) {
      auto it = moment.find(blk);
      if (it == moment.end()) {
        std::vector<Word> sub;
        for (Label i : blk) sub.push_back(words[static_cast<std::size_t>(i - 1)]);
        it = moment.emplace(blk, wishart_trace_product_exact(sub, M, N, max_n)).first;
      }
      term *= it->second;
    }
    total += term;
  }
  return total;
}

/// The same cumulant as a sum over word-symmetric tau whose joint action with
/// gamma is transitive.
inline Rational connected_cumulant_exact(const std::vector<Word>& words, long long M, long long N,
                                         std::size_t max_n = kDefaultMomentLimit) {
  detail::require_dims(M, N);
  const auto prof = detail::wishart_profile(words, detail::Restriction::Connected, max_n);
  return detail::evaluate_profile(prof, M, N, shape_of(words).total() + words.size());
}

/// N^2 (E(tr X_v tr X_w) - E(tr X_v) E(tr X_w)) and the connected sum it equals.
struct CovarianceIdentity {
  Rational lhs;
  Rational rhs;
};

inline CovarianceIdentity finite_N_covariance_identity(const Word& v, const Word& w, long long M, long long N,
                                                       std::size_t max_n = kDefaultMomentLimit) {
  detail::require_dims(M, N);
  const std::vector<Word> both{v, w};
  const Rational n2 = Rational(N) * N;
  CovarianceIdentity out;
  out.lhs = n2 * (wishart_trace_product_exact(both, M, N, max_n) - wishart_trace_product_exact({v}, M, N, max_n) *
                                                                       wishart_trace_product_exact({w}, M, N, max_n));
  const auto prof = detail::wishart_profile(both, detail::Restriction::Connected, max_n);
  const std::size_t pq = v.size() + w.size();
  const Rational ratio(M, N);
  for (const auto& [ab, count] : prof) {
    const auto e = static_cast<long long>(ab.first + ab.second) - static_cast<long long>(pq);
    const Rational scale = e >= 0 ? Rational(power(BigInt(N), static_cast<std::size_t>(e)))
                                  : Rational(1) / Rational(power(BigInt(N), static_cast<std::size_t>(-e)));
    out.rhs += Rational(count) * power(ratio, ab.first) * scale;
  }
  return out;
}

/// N^2 (E(tr Y_v tr Y_w) - E(tr Y_v) E(tr Y_w)).
inline Rational gue_covariance_exact(const Word& v, const Word& w, long long N,
                                     std::size_t max_n = kDefaultMomentLimit) {
  const Rational n2 = Rational(N) * N;
  return n2 * (gue_trace_product_exact({v, w}, N, max_n) -
               gue_trace_product_exact({v}, N, max_n) * gue_trace_product_exact({w}, N, max_n));
}

// ---------------------------------------------------------------------------
// Limits

/// Sum over non-crossing partitions of [n], w constant on blocks, of c^{#blocks}.
inline CPoly wishart_limit_moment(const Word& w, std::size_t max_n = kDefaultMomentLimit) {
  detail::require_total(w.size(), max_n);
  CPoly out;
  for_each_nc_partition(
      GroundSet::range(w.size()),
      [&](const SetPartition& pi) {
        for (const auto& blk : pi.blocks())
          for (Label x : blk)
            if (w[static_cast<std::size_t>(x - 1)] != w[static_cast<std::size_t>(blk.front() - 1)]) return;
        out.add_term(pi.block_count(), 1);
      },
      max_n);
  return out;
}

/// E_w and the polynomial that multiplies c' in E'_w.
struct LimitPair {
  CPoly e_w;
  CPoly e_w_prime_coeff;
};

inline LimitPair fluctuation_limits(const Word& w, std::size_t max_n = kDefaultMomentLimit) {
  detail::require_total(w.size(), max_n);
  LimitPair out;
  for (const auto& t : enumerate_disc_nc(w.size(), max_n)) {
    bool symmetric = true;
    for (std::size_t i = 0; i < w.size() && symmetric; ++i)
      symmetric = w[static_cast<std::size_t>(t.index_image(i))] == w[i];
    if (!symmetric) continue;
    const auto k = orbit_count(t);
    out.e_w.add_term(k, 1);
    out.e_w_prime_coeff.add_term(k - 1, static_cast<CPoly::Coefficient>(k));
  }
  return out;
}

namespace detail {

inline bool fixes_word(const Permutation& t, const std::vector<int>& letters) {
  for (std::size_t i = 0; i < letters.size(); ++i)
    if (letters[static_cast<std::size_t>(t.index_image(i))] != letters[i]) return false;
  return true;
}

}  // namespace detail

/// Sum over connected members tau of S_ann-nc(|v|,|w|) fixing v u w of c^{#tau}.
inline CPoly wishart_limit_covariance(const Word& v, const Word& w, std::size_t max_n = kDefaultMomentLimit) {
  detail::require_total(v.size() + w.size(), max_n);
  const auto letters = juxtapose({v, w});
  CPoly out;
  for (const auto& t : enumerate_ann_nc(AnnulusShape::two(v.size(), w.size()), Connectivity::Connected, max_n))
    if (detail::fixes_word(t, letters)) out.add_term(orbit_count(t), 1);
  return out;
}

/// Number of connected complete matchings in S_ann-nc(|v|,|w|) fixing v u w.
inline std::uint64_t gue_limit_covariance(const Word& v, const Word& w, std::size_t max_n = kDefaultMomentLimit) {
  detail::require_total(v.size() + w.size(), max_n);
  if ((v.size() + w.size()) % 2) return 0;
  const auto letters = juxtapose({v, w});
  std::uint64_t count = 0;
  for (const auto& t : enumerate_ann_nc(AnnulusShape::two(v.size(), w.size()), Connectivity::Connected, max_n))
    if (is_pair_permutation(t) && detail::fixes_word(t, letters)) ++count;
  return count;
}

/// Number of non-crossing complete matchings of [n] fixing w.
inline std::uint64_t gue_limit_moment(const Word& w, std::size_t max_n = kDefaultMomentLimit) {
  detail::require_total(w.size(), max_n);
  if (w.size() % 2) return 0;
  std::uint64_t count = 0;
  for (const auto& t : enumerate_disc_nc(w.size(), max_n))
    if (is_pair_permutation(t) && detail::fixes_word(t, w.letters())) ++count;
  return count;
}

}  // namespace annulus
