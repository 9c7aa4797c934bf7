#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "annulus/matrixsim.hpp"

using namespace annulus;

namespace {

constexpr std::uint64_t kSeed = 20240601;

// Every tuple of words over [s] with total length <= max_total.
void for_each_query(std::size_t max_total, std::size_t s, const std::function<void(const std::vector<Word>&)>& f) {
  std::vector<Word> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t used) {
    if (!cur.empty()) f(cur);
    for (std::size_t len = 1; used + len <= max_total; ++len) {
      std::vector<int> v(len, 1);
      while (true) {
        cur.emplace_back(v, s);
        rec(used + len);
        cur.pop_back();
        std::size_t i = len;
        while (i > 0 && v[i - 1] == static_cast<int>(s)) v[--i] = 1;
        if (i == 0) break;
        ++v[i - 1];
      }
    }
  };
  rec(0);
}

std::string describe(const std::vector<Word>& q) {
  std::string out;
  for (const auto& w : q) out += (out.empty() ? "" : ";") + format_word(w);
  return out;
}

void expect_within(const TraceEstimate& e, double exact, const std::string& what) {
  EXPECT_LE(std::fabs(e.mean.real() - exact), 5 * e.std_error) << what << " exact=" << exact << " mean=" << e.mean;
  EXPECT_LE(std::fabs(e.mean.imag()), 5 * e.std_error_imag + 1e-12) << what;
}

}  // namespace

TEST(Rng, SameKeySameMatrix) {
  const auto a = sample_gaussian(5, 7, {1, 2, 3});
  EXPECT_EQ(a, sample_gaussian(5, 7, {1, 2, 3}));
  EXPECT_NE(a, sample_gaussian(5, 7, {1, 2, 4}));
  EXPECT_NE(a, sample_gaussian(5, 7, {1, 3, 3}));
  EXPECT_NE(a, sample_gaussian(5, 7, {2, 2, 3}));
}

TEST(Rng, UniformRange) {
  CounterRng rng({9, 0, 0});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.symmetric_unit();
    ASSERT_GT(u, -1.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SampleGaussian, MomentsOfEntries) {
  std::vector<Complex> f;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto g = sample_gaussian(32, 32, {kSeed, t, 0});
    f.insert(f.end(), g.entries().begin(), g.entries().end());
  }
  const double n = static_cast<double>(f.size());
  double s1 = 0, s2 = 0, re = 0, re2 = 0, im = 0, im2 = 0, cross = 0;
  for (auto z : f) {
    const double m = std::norm(z);
    s1 += m;
    s2 += m * m;
    re += z.real();
    re2 += z.real() * z.real();
    im += z.imag();
    im2 += z.imag() * z.imag();
    cross += z.real() * z.imag();
  }
  const double mean_mod = s1 / n, se_mod = std::sqrt((s2 / n - mean_mod * mean_mod) / n);
  EXPECT_LE(std::fabs(mean_mod - 1.0), 5 * se_mod);
  EXPECT_LE(std::fabs(re / n), 5 * std::sqrt(0.5 / n));
  EXPECT_LE(std::fabs(im / n), 5 * std::sqrt(0.5 / n));
  // Var(X^2) = 2 sigma^4 = 1/2 for sigma^2 = 1/2
  EXPECT_LE(std::fabs(re2 / n - 0.5), 5 * std::sqrt(0.5 / n));
  EXPECT_LE(std::fabs(im2 / n - 0.5), 5 * std::sqrt(0.5 / n));
  EXPECT_LE(std::fabs(cross / n), 5 * std::sqrt(0.25 / n));
}

TEST(Multiply, BlockedMatchesNaive) {
  const auto a = sample_gaussian(70, 50, {1, 0, 0});
  const auto b = sample_gaussian(50, 65, {1, 0, 1});
  const auto x = multiply_naive(a, b), y = multiply_blocked(a, b);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) ASSERT_LT(std::abs(x(i, j) - y(i, j)), 1e-12);
  const auto id = multiply(a, ComplexMatrix::identity(50));
  EXPECT_EQ(id, a);
  EXPECT_THROW(multiply(a, a), DomainError);
}

TEST(Ensembles, WishartShapeAndSymmetry) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto x = wishart(sample_gaussian(3, 6, {kSeed, t, 0}), 6);
    ASSERT_EQ(x.rows(), 6u);
    ASSERT_EQ(x.cols(), 6u);
    ASSERT_LT(hermitian_defect(x), 1e-12);
    ASSERT_GE(normalized_trace(x).real(), 0.0);
  }
  EXPECT_THROW(wishart(sample_gaussian(3, 6, {}), 5), DomainError);
}

TEST(Ensembles, WishartDiagonalMean) {
  const std::size_t M = 3, N = 5, T = 20000;
  std::vector<Complex> d(T);
  for (std::size_t t = 0; t < T; ++t) d[t] = wishart(sample_gaussian(M, N, {kSeed, t, 0}), N)(2, 2);
  double s = 0, s2 = 0;
  for (auto z : d) {
    s += z.real();
    s2 += z.real() * z.real();
  }
  const double mean = s / T, se = std::sqrt((s2 / T - mean * mean) / T);
  EXPECT_LE(std::fabs(mean - static_cast<double>(M) / N), 5 * se);
}

TEST(Ensembles, GueHermitianExactly) {
  const auto y = gue(sample_gaussian(7, 7, {kSeed, 0, 0}));
  EXPECT_EQ(hermitian_defect(y), 0.0);
  EXPECT_THROW(gue(sample_gaussian(3, 4, {})), DomainError);
}

TEST(Estimate, ExamplesFromExactFormulas) {
  expect_within(estimate_trace_product({Word::constant(1)}, Ensemble::Wishart, 8, 8, 10000, kSeed), 1.0, "W 1");
  expect_within(estimate_trace_product({Word::constant(2)}, Ensemble::Wishart, 4, 4, 10000, kSeed), 2.0, "W 1,1");
  expect_within(estimate_trace_product({Word::constant(4)}, Ensemble::Gue, 8, 8, 10000, kSeed), 2.0 + 1.0 / 64,
                "G 1,1,1,1");
  expect_within(estimate_trace_product({Word::constant(2)}, Ensemble::Gue, 8, 8, 10000, kSeed), 1.0, "G 1,1");
  expect_within(estimate_trace_product({Word::constant(1)}, Ensemble::Gue, 8, 8, 10000, kSeed), 0.0, "G 1");
}

TEST(Estimate, ArgumentChecks) {
  EXPECT_THROW(estimate_trace_product({Word::constant(1)}, Ensemble::Wishart, 2, 2, 1, 0), DomainError);
  EXPECT_THROW(estimate_trace_product({Word::constant(1)}, Ensemble::Gue, 2, 3, 10, 0), DomainError);
  EXPECT_THROW(estimate_trace_products({{}}, Ensemble::Gue, 2, 2, 10, 0), DomainError);
}

TEST(Estimate, SeedDeterminism) {
  const std::vector<std::vector<Word>> q{{Word::constant(3)}, {Word(std::vector<int>{1, 2}, 2), Word::constant(1)}};
  const auto a = estimate_trace_products(q, Ensemble::Wishart, 3, 4, 500, 77);
  const auto b = estimate_trace_products(q, Ensemble::Wishart, 3, 4, 500, 77);
  const auto c = estimate_trace_products(q, Ensemble::Wishart, 3, 4, 500, 78);
  for (std::size_t k = 0; k < q.size(); ++k) {
    EXPECT_EQ(a[k].mean, b[k].mean);
    EXPECT_EQ(a[k].std_error, b[k].std_error);
    EXPECT_NE(a[k].mean, c[k].mean);
  }
  const auto solo = estimate_trace_product(q[1], Ensemble::Wishart, 3, 4, 500, 77);
  EXPECT_EQ(solo.mean, a[1].mean);
}

TEST(Estimate, PairwiseSumIndependentOfBlocking) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / static_cast<double>(i + 1);
  const double s = detail::pairwise_sum(std::span<const double>(v));
  double naive = 0;
  for (double x : v) naive += x;
  EXPECT_NEAR(s, naive, 1e-12);
  EXPECT_EQ(s, detail::pairwise_sum(std::span<const double>(v)));
}

// Every exact trace product with total length <= 4 is matched by simulation.
TEST(MonteCarlo, WishartAgreesWithExact) {
  for (auto [M, N] : {std::pair<std::size_t, std::size_t>{2, 3}, {4, 4}, {8, 5}}) {
    std::vector<std::vector<Word>> queries;
    for_each_query(4, 2, [&](const std::vector<Word>& q) { queries.push_back(q); });
    const auto est = estimate_trace_products(queries, Ensemble::Wishart, M, N, 10000, kSeed + M);
    for (std::size_t k = 0; k < queries.size(); ++k) {
      const double exact = to_double(wishart_trace_product_exact(queries[k], static_cast<long long>(M),
                                                                  static_cast<long long>(N)));
      expect_within(est[k], exact, describe(queries[k]) + " M=" + std::to_string(M) + " N=" + std::to_string(N));
    }
  }
}

TEST(MonteCarlo, GueAgreesWithExact) {
  for (std::size_t N : {2, 4, 8}) {
    std::vector<std::vector<Word>> queries;
    for_each_query(4, 2, [&](const std::vector<Word>& q) { queries.push_back(q); });
    const auto est = estimate_trace_products(queries, Ensemble::Gue, N, N, 10000, kSeed + N);
    for (std::size_t k = 0; k < queries.size(); ++k) {
      const double exact = to_double(gue_trace_product_exact(queries[k], static_cast<long long>(N)));
      expect_within(est[k], exact, describe(queries[k]) + " N=" + std::to_string(N));
    }
  }
}

TEST(MonteCarlo, CovarianceAgreesWithIdentity) {
  const std::vector<std::pair<Word, Word>> pairs{{Word::constant(1), Word::constant(1)},
                                                 {Word::constant(2), Word::constant(1)},
                                                 {Word(std::vector<int>{1, 2}, 2), Word(std::vector<int>{2, 1}, 2)},
                                                 {Word(std::vector<int>{1, 1}, 2), Word(std::vector<int>{2, 2}, 2)}};
  for (const auto& [v, w] : pairs) {
    const long long M = 3, N = 4;
    const auto e = estimate_covariance(v, w, Ensemble::Wishart, M, N, 20000, kSeed);
    const double exact = to_double(finite_N_covariance_identity(v, w, M, N).lhs / (N * N));
    EXPECT_LE(std::fabs(e.value.real() - exact), 5 * e.std_error) << format_word(v) << " | " << format_word(w);
    const auto g = estimate_covariance(v, w, Ensemble::Gue, N, N, 20000, kSeed);
    const double gexact = to_double(gue_covariance_exact(v, w, N) / (N * N));
    EXPECT_LE(std::fabs(g.value.real() - gexact), 5 * g.std_error + 1e-12) << format_word(v) << " | " << format_word(w);
  }
}
