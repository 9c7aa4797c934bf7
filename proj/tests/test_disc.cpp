#include <gtest/gtest.h>

#include <set>

#include "annulus/disc.hpp"
#include "oracles.hpp"

using namespace annulus;

namespace {

// The single cycle through `c`, on the ground set formed by its labels.
Permutation cycle_on(std::vector<Label> c) {
  std::vector<Label> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  return Permutation::from_cycles(GroundSet(sorted), {c});
}

}  // namespace

TEST(GammaDisc, Basics) {
  EXPECT_EQ(format_cycles(gamma_disc(3)), "(1,2,3)");
  EXPECT_TRUE(gamma_disc(1).is_identity());
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(orbit_count(gamma_disc(n)), 1u);
}

TEST(DiscStandard, Examples) {
  EXPECT_TRUE(is_disc_standard(parse_cycles("(1,8)(3,4,7)(5,6)", 8)));
  const auto rev = parse_cycles("(1,3,2)", 3);
  EXPECT_FALSE(is_disc_standard(rev));
  ASSERT_TRUE(find_dns(rev));
  EXPECT_EQ(*find_dns(rev), (std::array<Label, 3>{1, 2, 3}));
}

TEST(DiscStandard, MatchesDnsSearchExhaustive) {
  for (std::size_t n = 1; n <= 6; ++n)
    for_each_permutation(n, [](const Permutation& t) {
      const auto w = find_dns(t);
      ASSERT_EQ(is_disc_standard(t), !w.has_value()) << format_cycles(t);
      if (w) {
        const auto& [a, b, c] = *w;
        ASSERT_EQ(induce(gamma_disc(t.size()), {a, b, c}), cycle_on({a, b, c}));
        ASSERT_EQ(induce(t, {a, b, c}), cycle_on({a, c, b}));
      }
    });
}

TEST(DiscCrossingPattern, Examples) {
  ASSERT_TRUE(find_dc(parse_cycles("(1,3)(2,4)", 4)));
  EXPECT_EQ(*find_dc(parse_cycles("(1,3)(2,4)", 4)), (std::array<Label, 4>{1, 2, 3, 4}));
  EXPECT_FALSE(find_dc(Permutation::identity(5)));
}

TEST(DiscCrossingPattern, MatchesPartitionCrossingsExhaustive) {
  for (std::size_t n = 1; n <= 6; ++n)
    for_each_permutation(n, [](const Permutation& t) {
      ASSERT_EQ(find_dc(t).has_value(), !is_noncrossing_disc(orbit_partition(t))) << format_cycles(t);
    });
}

TEST(DiscNc, Examples) {
  EXPECT_TRUE(is_disc_nc(parse_cycles("(1,8)(3,4,7)(5,6)", 8)));
  EXPECT_FALSE(is_disc_nc(parse_cycles("(1,3)(2,4)", 4)));
  for (std::size_t n = 1; n <= 8; ++n) {
    EXPECT_TRUE(is_disc_nc_geodesic(Permutation::identity(n)));
    EXPECT_TRUE(is_disc_nc_geodesic(gamma_disc(n)));
  }
}

TEST(DiscNc, FilterCountsAreCatalan) {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::uint64_t patterns = 0, geodesic = 0;
    const auto gamma = gamma_disc(n);
    for_each_permutation(n, [&](const Permutation& t) {
      const bool a = is_disc_nc(t);
      const bool b = is_disc_nc_geodesic(t);
      ASSERT_EQ(a, b) << format_cycles(t);
      patterns += a;
      geodesic += b;
      const auto s = orbit_count(t) + orbit_count(compose(inverse(t), gamma));
      ASSERT_LE(s, n + 1);
      if (n <= 7 && a) {
        ASSERT_TRUE(is_disc_nc(compose(inverse(t), gamma)));
      }
    });
    EXPECT_EQ(patterns, oracle::catalan(n));
    EXPECT_EQ(geodesic, oracle::catalan(n));
  }
}

TEST(DiscNc, Relative) {
  const auto g = GroundSet::range(6);
  std::vector<Permutation> standard;
  for_each_permutation(g, [&](const Permutation& w) {
    if (is_disc_standard(w)) standard.push_back(w);
  });
  for_each_permutation(g, [&](const Permutation& t) {
    ASSERT_EQ(is_disc_nc_relative(t, gamma_disc(6)), is_disc_nc_geodesic(t));
    for (const auto& w : standard) {
      bool blockwise = true;
      const auto orbits = orbit_partition(w);
      for (const auto& blk : orbits.blocks()) {
        const GroundSet b(blk);
        // tau must preserve the block, and be disc-nc on it
        for (Label x : blk)
          if (!b.contains(t(x))) blockwise = false;
        if (blockwise) blockwise = is_disc_nc(induce(t, b));
      }
      ASSERT_EQ(is_disc_nc_relative(t, w), blockwise) << format_cycles(t) << " vs " << format_cycles(w);
    }
  });
  const auto nonstd = parse_cycles("(1,3,2)", 6);
  EXPECT_THROW(is_disc_nc_relative(Permutation::identity(6), nonstd), DomainError);
  EXPECT_TRUE(is_disc_nc_relative(parse_cycles("(1,2)(3,5)", 6), parse_cycles("(1,2)(3,5)", 6)));
}

TEST(PermOfPartition, Examples) {
  const auto g = GroundSet::range(8);
  EXPECT_EQ(perm_of_nc_partition(parse_partition("{1,8}{2}{3,4,7}{5,6}", g)), parse_cycles("(1,8)(3,4,7)(5,6)", g));
  EXPECT_TRUE(perm_of_nc_partition(SetPartition::singletons(g)).is_identity());
  EXPECT_THROW(perm_of_nc_partition(parse_partition("{1,3}{2,4}", g)), DomainError);
}

TEST(PermOfPartition, BijectionOntoDiscNc) {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::set<Permutation> image;
    for_each_set_partition(GroundSet::range(n), [&](const SetPartition& p) {
      if (!is_noncrossing_disc(p)) return;
      const auto t = perm_of_nc_partition(p);
      ASSERT_EQ(orbit_partition(t), p);
      ASSERT_TRUE(is_disc_standard(t));
      image.insert(t);
    });
    std::set<Permutation> members;
    for_each_permutation(n, [&](const Permutation& t) {
      if (is_disc_nc(t)) members.insert(t);
    });
    EXPECT_EQ(image, members);
  }
}

TEST(EnumerateDiscNc, Counts) {
  EXPECT_EQ(enumerate_disc_nc(1).size(), 1u);
  EXPECT_EQ(enumerate_disc_nc(3).size(), 5u);
  EXPECT_EQ(enumerate_disc_nc(6).size(), 132u);
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto all = enumerate_disc_nc(n);
    EXPECT_EQ(all.size(), oracle::catalan(n));
    EXPECT_EQ(std::set<Permutation>(all.begin(), all.end()).size(), all.size());
    for (const auto& t : all) ASSERT_TRUE(is_disc_nc_geodesic(t));
  }
  EXPECT_EQ(enumerate_disc_nc(12).size(), oracle::catalan(12));
  EXPECT_THROW(enumerate_disc_nc(13), GuardError);
}

TEST(Relabeling, MembershipInvariantUnderOrderIsomorphism) {
  const GroundSet t({2, 3, 7, 10, 11, 15});
  for_each_permutation(6, [&](const Permutation& p) {
    std::vector<int> pos(p.positions().begin(), p.positions().end());
    const auto q = Permutation::from_positions(t, pos);
    ASSERT_EQ(is_disc_nc(p), is_disc_nc(q));
    ASSERT_EQ(is_disc_nc_geodesic(p), is_disc_nc_geodesic(q));
    ASSERT_EQ(find_dc(p).has_value(), find_dc(q).has_value());
  });
}
