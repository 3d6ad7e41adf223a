// Shared generators and brute-force oracles for the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rankedge/core_matrix.hpp"
#include "rankedge/scores.hpp"

namespace testsupport {

using rankedge::ScoreMatrix;

// Mixed-shape random matrices: uniform, skewed, integer-valued and rank-one
// entries, so both symmetric and strongly skewed laws show up.
inline ScoreMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::exponential_distribution<double> ex(1.0);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<double> a(n * n);
  for (;;) {
    const int shape = pick(rng);
    if (shape == 3) {
      std::vector<double> e(n), d(n);
      for (auto& x : e) x = u(rng);
      for (auto& x : d) x = ex(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = e[i] * d[j];
    } else {
      for (auto& x : a) {
        if (shape == 0) x = u(rng);
        else if (shape == 1) x = std::pow(ex(rng), 2.0);
        else x = std::floor(5.0 * u(rng));
      }
    }
    ScoreMatrix m(n, a);
    if (!m.degenerate()) return m;
  }
}

// Double-centred, scaled entries computed from scratch.
inline std::vector<double> standardize_naive(const ScoreMatrix& m) {
  const std::size_t n = m.n();
  std::vector<double> r(n, 0.0), c(n, 0.0);
  double g = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r[i] += m(i, j) / n;
      c[j] += m(i, j) / n;
      g += m(i, j) / (double(n) * n);
    }
  std::vector<double> out(n * n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = m(i, j) - r[i] - c[j] + g;
      ss += out[i * n + j] * out[i * n + j];
    }
  const double s = std::sqrt(ss / (n - 1.0));
  for (auto& x : out) x /= s;
  return out;
}

struct EnumeratedMoments {
  double m1, m2, m3, m4;
};

// E of the standardized statistic's powers over all n! permutations.
inline EnumeratedMoments enumerate_moments(const ScoreMatrix& m) {
  const std::size_t n = m.n();
  const std::vector<double> a = standardize_naive(m);
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  std::uint64_t count = 0;
  do {
    long double t = 0;
    for (std::size_t i = 0; i < n; ++i) t += a[i * n + p[i]];
    s1 += t;
    s2 += t * t;
    s3 += t * t * t;
    s4 += t * t * t * t;
    ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return {double(s1 / count), double(s2 / count), double(s3 / count), double(s4 / count)};
}

// Block matrix with rows alternating (1,-1,0,...) and (-1,1,0,...); n even.
inline ScoreMatrix block_matrix(std::size_t n) {
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + 0] = i % 2 == 0 ? 1.0 : -1.0;
    a[i * n + 1] = i % 2 == 0 ? -1.0 : 1.0;
  }
  return ScoreMatrix(n, a);
}

// Two-sample design: the first m observations form the first sample.
inline ScoreMatrix two_sample(std::size_t n, std::size_t m, const std::vector<double>& d) {
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) e[i] = 1.0;
  return ScoreMatrix::outer(e, d);
}

inline std::vector<double> family_scores(const std::string& family, bool exact, std::size_t n) {
  if (family == "median") return rankedge::median_scores(n);
  const auto f = rankedge::score_by_name(family);
  return exact ? rankedge::exact_scores(f, n, 1) : rankedge::approx_scores(f, n);
}

struct CorpusEntry {
  std::string name;
  ScoreMatrix m;
};

// Seeded random matrices for n in 4..7 (the moment-formula corpus).
inline std::vector<CorpusEntry> random_corpus(std::uint64_t seed = 20240601, int count = 20) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 4 + static_cast<std::size_t>(k % 4);
    out.push_back({"random#" + std::to_string(k) + " n=" + std::to_string(n), random_matrix(rng, n)});
  }
  return out;
}

// Random matrices plus the built-in score families as two-sample designs at
// n in 4..10 and the block example.
inline std::vector<CorpusEntry> full_corpus() {
  std::vector<CorpusEntry> out = random_corpus();
  out.push_back({"swap n=2", ScoreMatrix::from_rows({{0, 1}, {1, 0}})});
  out.push_back({"block n=4", block_matrix(4)});
  out.push_back({"block n=6", block_matrix(6)});
  for (const char* fam : {"wilcoxon", "vdw", "median"})
    for (bool exact : {false, true}) {
      if (std::string(fam) == "median" && exact) continue;
      for (std::size_t n = 4; n <= 10; ++n) {
        const std::size_t m = std::string(fam) == "median" ? n / 2 : (n + 2) / 3;
        out.push_back({std::string(fam) + (exact ? " exact" : " approx") + " n=" + std::to_string(n),
                       two_sample(n, m, family_scores(fam, exact, n))});
      }
    }
  return out;
}

}  // namespace testsupport
