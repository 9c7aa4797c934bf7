#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "annulus/errors.hpp"
#include "annulus/moments.hpp"

namespace annulus {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {
    if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<const Complex> entries() const noexcept { return a_; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> a_;
};

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

namespace detail {

inline void require_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimensions do not agree");
}

inline constexpr std::size_t kBlock = 32;

}  // namespace detail

/// i-k-j triple loop.
inline ComplexMatrix multiply_naive(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_product(a, b);
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex x = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += x * b(k, j);
    }
  return r;
}

/// Same product, tiled for larger sizes.
inline ComplexMatrix multiply_blocked(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_product(a, b);
  using detail::kBlock;
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i0 = 0; i0 < a.rows(); i0 += kBlock)
    for (std::size_t k0 = 0; k0 < a.cols(); k0 += kBlock)
      for (std::size_t j0 = 0; j0 < b.cols(); j0 += kBlock)
        for (std::size_t i = i0; i < std::min(i0 + kBlock, a.rows()); ++i)
          for (std::size_t k = k0; k < std::min(k0 + kBlock, a.cols()); ++k) {
            const Complex x = a(i, k);
            for (std::size_t j = j0; j < std::min(j0 + kBlock, b.cols()); ++j) r(i, j) += x * b(k, j);
          }
  return r;
}

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() > 2 * detail::kBlock ? multiply_blocked(a, b) : multiply_naive(a, b);
}

/// (1/N) sum of the diagonal, N the number of rows.
inline Complex normalized_trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("trace of a non-square matrix");
  Complex s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s / static_cast<double>(a.rows());
}

inline double hermitian_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  double d = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  return d;
}

// ---------------------------------------------------------------------------
// Random streams

/// Identifies one matrix draw: (master seed, trial index, matrix index).
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t matrix = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Counter-based generator: output k is a hash of (key, k), so any draw can be
/// reproduced without replaying earlier ones.
class CounterRng {
 public:
  explicit CounterRng(StreamKey key)
      : base_(detail::splitmix64(detail::splitmix64(detail::splitmix64(key.seed) ^ key.trial) ^
                                 (key.matrix * 0xd1342543de82ef95ULL))) {}

  std::uint64_t next() { return detail::splitmix64(base_ + 0x9e3779b97f4a7c15ULL * counter_++); }

  /// Uniform on (-1, 1).
  double symmetric_unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-52 - 1.0; }

  /// Standard normal, polar Box-Muller; the second value of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = symmetric_unit();
      v = symmetric_unit();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double spare_ = 0;
  bool has_spare_ = false;
};

/// M x N matrix of independent complex Gaussians whose real and imaginary
/// parts are N(0, 1/2) each, so E|f|^2 = 1.
inline ComplexMatrix sample_gaussian(std::size_t M, std::size_t N, StreamKey key) {
  ComplexMatrix g(M, N);
  CounterRng rng(key);
  const double scale = std::sqrt(0.5);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const double re = rng.normal();
      g(i, j) = Complex(re * scale, rng.normal() * scale);
    }
  return g;
}

/// G^* G / N for an M x N matrix G.
inline ComplexMatrix wishart(const ComplexMatrix& g, std::size_t N) {
  if (g.cols() != N) throw DomainError("wishart: G must have N columns");
  auto x = multiply(adjoint(g), g);
  const double inv = 1.0 / static_cast<double>(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) x(i, j) *= inv;
  // exact Hermitian symmetry
  for (std::size_t i = 0; i < N; ++i) {
    x(i, i) = x(i, i).real();
    for (std::size_t j = i + 1; j < N; ++j) x(j, i) = std::conj(x(i, j));
  }
  return x;
}

/// (G + G^*) / sqrt(2N) for a square N x N matrix G.
inline ComplexMatrix gue(const ComplexMatrix& g) {
  if (g.rows() != g.cols()) throw DomainError("gue: G must be square");
  const std::size_t n = g.rows();
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  ComplexMatrix y(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y(i, j) = (g(i, j) + std::conj(g(j, i))) * scale;
  return y;
}

// ---------------------------------------------------------------------------
// Estimators

enum class Ensemble { Wishart, Gue };

inline const char* to_string(Ensemble e) { return e == Ensemble::Wishart ? "wishart" : "gue"; }

struct TraceEstimate {
  Complex mean;
  double std_error = 0;       // of the real part
  double std_error_imag = 0;  // of the imaginary part
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  double z_score(double exact) const { return (mean.real() - exact) / std_error; }
};

struct CovarianceEstimate {
  Complex value;
  double std_error = 0;  // jackknife, real part
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  double z_score(double exact) const { return (value.real() - exact) / std_error; }
};

namespace detail {

/// Sum by recursive halving; the order depends only on the length.
template <typename T>
T pairwise_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

template <typename T>
T mean_of(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v)) / static_cast<double>(v.size());
}

inline TraceEstimate summarize(const std::vector<Complex>& xs, std::uint64_t seed) {
  TraceEstimate e;
  e.trials = xs.size();
  e.seed = seed;
  e.mean = mean_of(xs);
  std::vector<double> dr(xs.size()), di(xs.size());
  for (std::size_t t = 0; t < xs.size(); ++t) {
    dr[t] = std::pow(xs[t].real() - e.mean.real(), 2);
    di[t] = std::pow(xs[t].imag() - e.mean.imag(), 2);
  }
  const double n = static_cast<double>(xs.size());
  e.std_error = std::sqrt(pairwise_sum(std::span<const double>(dr)) / (n - 1) / n);
  e.std_error_imag = std::sqrt(pairwise_sum(std::span<const double>(di)) / (n - 1) / n);
  return e;
}

inline std::size_t alphabet_of(const std::vector<std::vector<Word>>& queries) {
  std::size_t s = 1;
  for (const auto& q : queries)
    for (const auto& w : q) s = std::max(s, w.alphabet_size());
  return s;
}

struct Sampler {
  Ensemble ensemble;
  std::size_t M, N, s;

  std::vector<ComplexMatrix> draw(std::uint64_t seed, std::uint64_t trial) const {
    std::vector<ComplexMatrix> mats;
    for (std::size_t r = 0; r < s; ++r) {
      const StreamKey key{seed, trial, r};
      if (ensemble == Ensemble::Wishart)
        mats.push_back(wishart(sample_gaussian(M, N, key), N));
      else
        mats.push_back(gue(sample_gaussian(N, N, key)));
    }
    return mats;
  }
};

inline Complex trace_of_word(const std::vector<ComplexMatrix>& mats, const Word& w) {
  ComplexMatrix acc = mats[static_cast<std::size_t>(w[0] - 1)];
  for (std::size_t i = 1; i < w.size(); ++i) acc = multiply(acc, mats[static_cast<std::size_t>(w[i] - 1)]);
  return normalized_trace(acc);
}

inline void require_sim_args(Ensemble e, std::size_t M, std::size_t N, std::size_t trials) {
  if (trials < 2) throw DomainError("at least two trials are required");
  if (M == 0 || N == 0) throw DomainError("matrix dimensions must be positive");
  if (e == Ensemble::Gue && M != N) throw DomainError("gue requires M = N");
}

}  // namespace detail

/// Per-trial products tr(X_{w_1}) ... tr(X_{w_l}) for each query, all queries
/// sharing the same matrix draws.
inline std::vector<std::vector<Complex>> sample_trace_products(const std::vector<std::vector<Word>>& queries,
                                                               Ensemble ensemble, std::size_t M, std::size_t N,
                                                               std::size_t trials, std::uint64_t seed) {
  detail::require_sim_args(ensemble, M, N, trials);
  for (const auto& q : queries)
    if (q.empty()) throw DomainError("a query needs at least one word");
  const detail::Sampler sampler{ensemble, M, N, detail::alphabet_of(queries)};
  // each distinct word is traced once per trial
  std::map<std::vector<int>, std::size_t> index;
  std::vector<const Word*> distinct;
  std::vector<std::vector<std::size_t>> refs(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k)
    for (const auto& w : queries[k]) {
      auto [it, fresh] = index.emplace(w.letters(), distinct.size());
      if (fresh) distinct.push_back(&w);
      refs[k].push_back(it->second);
    }
  std::vector<std::vector<Complex>> out(queries.size(), std::vector<Complex>(trials));
  std::vector<Complex> traces(distinct.size());
  for (std::size_t t = 0; t < trials; ++t) {
    const auto mats = sampler.draw(seed, t);
    for (std::size_t d = 0; d < distinct.size(); ++d) traces[d] = detail::trace_of_word(mats, *distinct[d]);
    for (std::size_t k = 0; k < queries.size(); ++k) {
      Complex prod = 1.0;
      for (auto d : refs[k]) prod *= traces[d];
      out[k][t] = prod;
    }
  }
  return out;
}

inline std::vector<TraceEstimate> estimate_trace_products(const std::vector<std::vector<Word>>& queries,
                                                          Ensemble ensemble, std::size_t M, std::size_t N,
                                                          std::size_t trials, std::uint64_t seed) {
  std::vector<TraceEstimate> out;
  for (const auto& xs : sample_trace_products(queries, ensemble, M, N, trials, seed))
    out.push_back(detail::summarize(xs, seed));
  return out;
}

/// Estimate of E(tr X_{w_1} ... tr X_{w_l}).
inline TraceEstimate estimate_trace_product(const std::vector<Word>& words, Ensemble ensemble, std::size_t M,
                                            std::size_t N, std::size_t trials, std::uint64_t seed) {
  return estimate_trace_products({words}, ensemble, M, N, trials, seed).front();
}

/// E(tr X_v tr X_w) - E(tr X_v) E(tr X_w) as mean of products minus product of
/// means, with a leave-one-out jackknife standard error.
inline CovarianceEstimate estimate_covariance(const Word& v, const Word& w, Ensemble ensemble, std::size_t M,
                                              std::size_t N, std::size_t trials, std::uint64_t seed) {
  const auto xs = sample_trace_products({{v}, {w}}, ensemble, M, N, trials, seed);
  const auto& a = xs[0];
  const auto& b = xs[1];
  std::vector<Complex> ab(trials);
  for (std::size_t t = 0; t < trials; ++t) ab[t] = a[t] * b[t];
  using detail::pairwise_sum;
  const Complex sa = pairwise_sum(std::span<const Complex>(a)), sb = pairwise_sum(std::span<const Complex>(b)),
                sab = pairwise_sum(std::span<const Complex>(ab));
  const double n = static_cast<double>(trials);
  CovarianceEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.value = sab / n - (sa / n) * (sb / n);
  std::vector<double> loo(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const Complex ma = (sa - a[t]) / (n - 1), mb = (sb - b[t]) / (n - 1), mab = (sab - ab[t]) / (n - 1);
    loo[t] = (mab - ma * mb).real();
  }
  const double mean_loo = detail::mean_of(loo);
  std::vector<double> dev(trials);
  for (std::size_t t = 0; t < trials; ++t) dev[t] = std::pow(loo[t] - mean_loo, 2);
  e.std_error = std::sqrt((n - 1) / n * pairwise_sum(std::span<const double>(dev)));
  return e;
}

}  // namespace annulus
