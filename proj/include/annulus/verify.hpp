#pragma once

// The acceptance suite: each criterion is a self-contained exact (or, for the
// Monte Carlo one, statistical) check with its own time budget.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "annulus/annular.hpp"
#include "annulus/disc.hpp"
#include "annulus/matrixsim.hpp"
#include "annulus/moments.hpp"
#include "annulus/numbers.hpp"

namespace annulus::verify {

struct Options {
  std::uint64_t seed = 20240601;
  std::size_t mc_trials = 10000;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;  // 0: no time limit
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<bool(const Options&, std::ostream&)> check;
};

namespace detail {

inline std::vector<AnnulusShape> two_circle_shapes(std::size_t max_total) {
  std::vector<AnnulusShape> out;
  for (std::size_t n = 2; n <= max_total; ++n)
    for (std::size_t p = 1; p < n; ++p) out.push_back(AnnulusShape::two(p, n - p));
  return out;
}

// Every composition (p_1, ..., p_l) of n.
inline std::vector<AnnulusShape> compositions(std::size_t n) {
  std::vector<AnnulusShape> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<std::size_t> parts{1};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (mask >> i & 1)
        parts.push_back(1);
      else
        ++parts.back();
    }
    out.emplace_back(parts);
  }
  return out;
}

inline std::vector<Word> words_of_length(std::size_t n, std::size_t s) {
  std::vector<Word> out;
  std::vector<int> v(n, 1);
  while (true) {
    out.emplace_back(v, s);
    std::size_t i = n;
    while (i > 0 && v[i - 1] == static_cast<int>(s)) v[--i] = 1;
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

// Tuples of exactly l words over [s] with total length <= max_total.
inline void for_each_word_tuple(std::size_t l, std::size_t max_total, std::size_t s,
                                const std::function<void(const std::vector<Word>&)>& f) {
  std::vector<Word> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t used) {
    if (cur.size() == l) {
      f(cur);
      return;
    }
    const std::size_t left = l - cur.size() - 1;
    for (std::size_t len = 1; used + len + left <= max_total; ++len)
      for (const auto& w : words_of_length(len, s)) {
        cur.push_back(w);
        rec(used + len);
        cur.pop_back();
      }
  };
  rec(0);
}

inline std::string shape_str(const AnnulusShape& s) { return "(" + format_shape(s) + ")"; }

// Restriction of pi to the labels in [lo, hi], as a partition of that interval.
inline SetPartition restrict_to(const SetPartition& pi, Label lo, Label hi) {
  std::vector<Block> blocks;
  for (const auto& b : pi.blocks()) {
    Block r;
    for (Label x : b)
      if (x >= lo && x <= hi) r.push_back(x);
    if (!r.empty()) blocks.push_back(std::move(r));
  }
  return SetPartition(GroundSet::interval(lo, hi), std::move(blocks));
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline bool catalan_counts(const Options&, std::ostream& log) {
  const std::uint64_t expected[] = {1, 2, 5, 14, 42, 132, 429, 1430};
  bool ok = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto enumerated = enumerate_disc_nc(n).size();
    ok = ok && enumerated == expected[n - 1] && BigInt(enumerated) == catalan(static_cast<unsigned>(n));
    log << "n=" << n << ":" << enumerated;
    if (n <= 7) {
      std::uint64_t filtered = 0;
      for_each_permutation(n, [&](const Permutation& t) { filtered += is_disc_nc(t); });
      ok = ok && filtered == expected[n - 1];
      log << "/" << filtered;
    }
    log << " ";
  }
  return ok;
}

inline bool geodesic_equivalence(const Options&, std::ostream& log) {
  std::uint64_t checked = 0, members = 0;
  for (const auto& s : detail::two_circle_shapes(8)) {
    bool ok = true;
    for_each_permutation(s.total(), [&](const Permutation& t) {
      const bool patterns = is_ann_nc(t, s, MembershipMethod::Patterns);
      ++checked;
      members += patterns;
      if (patterns != is_ann_nc_geodesic(t, s)) {
        log << "mismatch at " << detail::shape_str(s) << " " << format_cycles(t);
        ok = false;
      }
      return ok;
    });
    if (!ok) return false;
  }
  log << checked << " permutations, " << members << " members";
  return true;
}

inline bool connected_count(const Options&, std::ostream& log) {
  bool ok = count_connected_closed_form(1, 1) == 1 && count_connected_closed_form(2, 1) == 4 &&
            count_connected_closed_form(2, 2) == 18;
  for (const auto& s : detail::two_circle_shapes(8)) {
    const auto got = enumerate_ann_nc(s, Connectivity::Connected).size();
    const auto want = count_connected_closed_form(static_cast<unsigned>(s.p()), static_cast<unsigned>(s.q()));
    if (BigInt(got) != want) {
      log << detail::shape_str(s) << " enumerated " << got << " expected " << want << "; ";
      ok = false;
    }
  }
  log << "p+q<=8, (2,2)->" << enumerate_ann_nc(AnnulusShape::two(2, 2), Connectivity::Connected).size();
  return ok;
}

inline bool disconnected_count(const Options&, std::ostream& log) {
  bool ok = true;
  for (const auto& s : detail::two_circle_shapes(8)) {
    const auto got = enumerate_ann_nc(s, Connectivity::Disconnected).size();
    const auto want = catalan(static_cast<unsigned>(s.p())) * catalan(static_cast<unsigned>(s.q()));
    if (BigInt(got) != want || want != count_disconnected_closed_form(static_cast<unsigned>(s.p()),
                                                                      static_cast<unsigned>(s.q()))) {
      log << detail::shape_str(s) << " enumerated " << got << " expected " << want << "; ";
      ok = false;
    }
  }
  log << "p+q<=8";
  return ok;
}

inline bool saturation(const Options&, std::ostream& log) {
  bool ok = true;
  for (const auto& s : detail::two_circle_shapes(7)) {
    const auto g = gammas(s);
    const auto disc = enumerate_disc_nc(s.total());
    std::set<Permutation> closure(disc.begin(), disc.end());
    std::vector<Permutation> frontier(disc.begin(), disc.end());
    while (!frontier.empty()) {
      const auto t = frontier.back();
      frontier.pop_back();
      for (const auto& r : g.circles) {
        const auto c = conjugate(t, r);
        if (closure.insert(c).second) frontier.push_back(c);
      }
    }
    const auto members = enumerate_ann_nc(s);
    if (closure != std::set<Permutation>(members.begin(), members.end())) {
      log << "closure differs at " << detail::shape_str(s) << "; ";
      ok = false;
    }
  }
  log << "p+q<=7";
  return ok;
}

inline bool fiber_trichotomy(const Options&, std::ostream& log) {
  std::uint64_t partitions = 0;
  for (const auto& s : detail::two_circle_shapes(7)) {
    std::map<SetPartition, std::size_t> brute;
    for_each_permutation(s.total(), [&](const Permutation& t) {
      if (is_ann_nc(t, s)) ++brute[orbit_partition(t)];
    });
    const auto p = static_cast<Label>(s.p()), n = static_cast<Label>(s.total());
    bool ok = true;
    for_each_set_partition(s.ground(), [&](const SetPartition& pi) {
      ++partitions;
      const auto conn = connecting_blocks(pi, s);
      const auto size = nc_ann_fiber(pi, s).size();
      const auto it = brute.find(pi);
      const std::size_t seen = it == brute.end() ? 0 : it->second;
      bool good = size == seen;
      if (conn.size() >= 2) {
        good = good && size <= 1;
      } else {
        const bool nc = is_noncrossing_disc(detail::restrict_to(pi, 1, p)) &&
                        is_noncrossing_disc(detail::restrict_to(pi, p + 1, n));
        std::size_t expected = nc ? 1 : 0;
        if (conn.size() == 1 && nc) {
          const auto& b0 = pi.blocks()[conn[0]];
          const auto ext = static_cast<std::size_t>(std::count_if(b0.begin(), b0.end(), [&](Label x) { return x <= p; }));
          expected = ext * (b0.size() - ext);
        }
        good = good && size == expected;
      }
      if (!good) {
        log << "fiber of " << format_partition(pi) << " in " << detail::shape_str(s) << " has size " << size << "; ";
        ok = false;
      }
    });
    if (!ok) return false;
  }
  log << partitions << " partitions";
  return true;
}

inline bool kreweras(const Options&, std::ostream& log) {
  const auto fig = AnnulusShape::two(5, 3);
  bool ok = format_cycles(kreweras_annular(parse_cycles("(1,8)(3,4,7)(5,6)", 8), fig)) == "(1,2,7)(4,6)(5,8)";
  for (const auto& s : detail::two_circle_shapes(7)) {
    const auto members = enumerate_ann_nc(s);
    std::set<Permutation> image;
    for (const auto& t : members) image.insert(kreweras_annular(t, s));
    if (image != std::set<Permutation>(members.begin(), members.end())) {
      log << "not a bijection at " << detail::shape_str(s) << "; ";
      ok = false;
    }
  }
  log << "p+q<=7, figure instance " << (ok ? "reproduced" : "checked");
  return ok;
}

inline bool parity_pairs(const Options&, std::ostream& log) {
  bool ok = true;
  for (std::size_t p = 1; p <= 3; ++p)
    for (std::size_t q = 1; q <= 3; ++q) {
      const auto s = AnnulusShape::two(p, q);
      const auto big = AnnulusShape::two(2 * p, 2 * q);
      std::set<Permutation> alternating;
      std::uint64_t pairs = 0;
      for_each_pair_permutation(big.ground(), [&](const Permutation& t) {
        if (!is_ann_nc(t, big) || !is_connected(t, big)) return;
        ++pairs;
        if (is_parity_alternating(t)) alternating.insert(t);
      });
      const auto b = enumerate_ann_nc(s, Connectivity::Connected);
      std::set<Permutation> image;
      for (const auto& t : b) image.insert(parity_bijection(t, s));
      const bool good = BigInt(pairs) == 2 * count_connected_closed_form(static_cast<unsigned>(p), static_cast<unsigned>(q)) &&
                        image.size() == b.size() && image == alternating;
      if (!good) {
        log << detail::shape_str(s) << " failed; ";
        ok = false;
      }
    }
  log << "p,q<=3";
  return ok;
}

inline bool mobius_cumulant(const Options&, std::ostream& log) {
  std::uint64_t cases = 0;
  bool ok = true;
  for (std::size_t l = 1; l <= 3 && ok; ++l)
    detail::for_each_word_tuple(l, 6, 2, [&](const std::vector<Word>& words) {
      for (long long M = 1; M <= 3; ++M)
        for (long long N = 1; N <= 3; ++N) {
          ++cases;
          if (classical_cumulant_exact(words, M, N) != connected_cumulant_exact(words, M, N)) {
            if (ok) log << "mismatch for M=" << M << " N=" << N << "; ";
            ok = false;
          }
        }
    });
  log << cases << " exact comparisons";
  return ok;
}

inline bool covariance_identity(const Options& opt, std::ostream& log) {
  std::mt19937_64 rng(opt.seed);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 1 + rng() % 2;
    const std::size_t p = 1 + rng() % 5;
    const std::size_t q = 1 + rng() % (6 - p);
    const auto vs = detail::words_of_length(p, s), ws = detail::words_of_length(q, s);
    const auto& v = vs[rng() % vs.size()];
    const auto& w = ws[rng() % ws.size()];
    const long long M = 1 + static_cast<long long>(rng() % 8), N = 1 + static_cast<long long>(rng() % 8);
    const auto id = finite_N_covariance_identity(v, w, M, N);
    if (id.lhs != id.rhs) {
      log << "v=" << format_word(v) << " w=" << format_word(w) << " M=" << M << " N=" << N << " differ";
      return false;
    }
  }
  log << "200 random cases, seed " << opt.seed;
  return true;
}

namespace detail {

// One batch: every query compared with its exact value; returns the largest |z|.
inline bool mc_batch(Ensemble e, std::size_t n, std::size_t max_len, const Options& opt, std::uint64_t seed,
                     double& worst) {
  std::vector<std::vector<Word>> queries;
  for (std::size_t len = 1; len <= max_len; ++len)
    for (const auto& w : words_of_length(len, 2)) queries.push_back({w});
  const auto est = estimate_trace_products(queries, e, n, n, opt.mc_trials, seed);
  bool ok = true;
  worst = 0;
  const auto N = static_cast<long long>(n);
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const Rational exact = e == Ensemble::Wishart ? wishart_trace_product_exact(queries[k], N, N)
                                                  : gue_trace_product_exact(queries[k], N);
    const double diff = std::fabs(est[k].mean.real() - to_double(exact));
    worst = std::max(worst, diff / est[k].std_error);
    ok = ok && diff <= 5 * est[k].std_error;
  }
  return ok;
}

}  // namespace detail

/// A failing batch is rerun once with the next seed.
inline bool monte_carlo(const Options& opt, std::ostream& log) {
  bool ok = true;
  for (auto e : {Ensemble::Wishart, Ensemble::Gue})
    for (std::size_t n : {4, 8}) {
      const std::size_t max_len = e == Ensemble::Wishart ? 3 : 4;
      const std::uint64_t seed = opt.seed + n + (e == Ensemble::Gue ? 100 : 0);
      double worst = 0;
      bool good = detail::mc_batch(e, n, max_len, opt, seed, worst);
      log << to_string(e) << " N=" << n << " max|z|=" << std::round(worst * 100) / 100;
      if (!good) {
        good = detail::mc_batch(e, n, max_len, opt, seed + 1, worst);
        log << " retry max|z|=" << std::round(worst * 100) / 100;
      }
      log << "; ";
      ok = ok && good;
    }
  return ok;
}

inline bool cumulant_decay(const Options&, std::ostream& log) {
  const std::vector<Word> words(3, Word::constant(1));
  std::vector<double> values;
  for (long long N : {8, 16, 32}) {
    // C_3(N tr X, N tr X, N tr X) = N^3 C_3(tr X, tr X, tr X), exact until the final conversion
    values.push_back(to_double(Rational(N * N * N) * classical_cumulant_exact(words, N, N)));
  }
  bool ok = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double r = values[i] / values[i - 1];
    log << "ratio " << r << " ";
    ok = ok && std::fabs(r - 0.5) <= 0.125;
  }
  return ok;
}

inline bool genus_parity(const Options&, std::ostream& log) {
  std::uint64_t checked = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& s : detail::compositions(n)) {
      bool ok = true;
      for_each_permutation(n, [&](const Permutation& t) {
        ++checked;
        try {
          if (genus_defect(t, s) % 2 != 0) ok = false;
        } catch (const std::logic_error&) {
          ok = false;
        }
        if (!ok) log << "failed at " << detail::shape_str(s) << " " << format_cycles(t);
        return ok;
      });
      if (!ok) return false;
    }
  log << checked << " (shape, permutation) pairs";
  return true;
}

// ---------------------------------------------------------------------------

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "disc non-crossing counts are Catalan", 10, catalan_counts},
      {2, "crossing patterns agree with the geodesic condition", 60, geodesic_equivalence},
      {3, "connected annular count matches closed form", 0, connected_count},
      {4, "disconnected annular count is Catalan(p) Catalan(q)", 0, disconnected_count},
      {5, "annular members are the conjugation closure of disc members", 0, saturation},
      {6, "fiber sizes follow the connecting-block trichotomy", 0, fiber_trichotomy},
      {7, "Kreweras map is a bijection of annular members", 0, kreweras},
      {8, "parity map onto alternating connected pair permutations", 30, parity_pairs},
      {9, "Moebius cumulant equals connected sum", 0, mobius_cumulant},
      {10, "finite-N covariance identity", 0, covariance_identity},
      {11, "Monte Carlo agrees with exact moments", 60, monte_carlo},
      {12, "third cumulant decays like 1/N", 30, cumulant_decay},
      {13, "genus inequality with even defect", 0, genus_parity},
  };
  return all;
}

inline Result run(const Criterion& c, const Options& opt = {}) {
  Result r;
  r.id = c.id;
  r.name = c.name;
  r.budget_seconds = c.budget_seconds;
  std::ostringstream log;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.passed = c.check(opt, log);
  } catch (const std::exception& e) {
    log << "exception: " << e.what();
    r.passed = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.budget_seconds > 0 && r.seconds > c.budget_seconds) {
    log << " (over the " << c.budget_seconds << " s budget)";
    r.passed = false;
  }
  r.detail = log.str();
  return r;
}

}  // namespace annulus::verify
