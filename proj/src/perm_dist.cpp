#include "rankedge/perm_dist.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <numeric>
#include <string>

#include "rankedge/error.hpp"
#include "rankedge/parallel.hpp"
#include "rankedge/rng.hpp"

namespace rankedge {

namespace {

constexpr std::uint64_t kEnumChunk = 40320;
constexpr std::uint64_t kMcChunk = 65536;

using Weighted = std::vector<std::pair<double, double>>;

// Sorts a chunk of statistic values and collapses exact duplicates.
Weighted compress(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  Weighted out;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    out.emplace_back(values[i], static_cast<double>(j - i));
    i = j;
  }
  return out;
}

StepCdf combine(std::vector<Weighted>& chunks) {
  Weighted all;
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  all.reserve(total);
  for (auto& c : chunks) {
    all.insert(all.end(), c.begin(), c.end());
    Weighted().swap(c);
  }
  return StepCdf::from_weighted(std::move(all));
}

const std::vector<double>& statistic_entries(const ScoreMatrix& m, bool standardized) {
  return standardized ? m.std_entries() : m.entries();
}

}  // namespace

std::uint64_t factorial(std::size_t n) {
  if (n > 20) fail(ErrorKind::SizeLimit, "factorial overflows 64 bits");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::vector<std::size_t> unrank_permutation(std::uint64_t rank, std::size_t n) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::size_t> perm;
  perm.reserve(n);
  for (std::size_t k = n; k > 0; --k) {
    const std::uint64_t f = factorial(k - 1);
    const std::size_t idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    perm.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return perm;
}

std::uint64_t rank_permutation(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

StepCdf exact_distribution(const ScoreMatrix& m, bool standardized, int cutoff, unsigned threads) {
  if (cutoff < 1 || cutoff > kMaxCutoff)
    fail(ErrorKind::SizeLimit, "enumeration cutoff must lie in 1.." + std::to_string(kMaxCutoff));
  const std::size_t n = m.n();
  if (n > static_cast<std::size_t>(cutoff))
    fail(ErrorKind::SizeLimit, "n = " + std::to_string(n) + " exceeds the enumeration cutoff " +
                                   std::to_string(cutoff) + "; use the Monte Carlo method instead");
  const auto& a = statistic_entries(m, standardized);
  const std::uint64_t total = factorial(n);
  const std::uint64_t chunks = (total + kEnumChunk - 1) / kEnumChunk;
  std::vector<Weighted> parts(chunks);
  parallel_chunks(chunks, threads, [&](std::uint64_t c) {
    const std::uint64_t begin = c * kEnumChunk;
    const std::uint64_t end = std::min(total, begin + kEnumChunk);
    auto perm = unrank_permutation(begin, n);
    std::vector<double> values;
    values.reserve(end - begin);
    for (std::uint64_t r = begin; r < end; ++r) {
      double t = 0.0;
      for (std::size_t i = 0; i < n; ++i) t += a[i * n + perm[i]];
      values.push_back(t);
      std::next_permutation(perm.begin(), perm.end());
    }
    parts[c] = compress(values);
  });
  return combine(parts);
}

std::optional<StepCdf> exact_two_sample_distribution(const ScoreMatrix& m, bool standardized) {
  const std::size_t n = m.n();
  const auto& raw = m.entries();
  auto same_row = [&](std::size_t x, std::size_t y) {
    return std::equal(raw.begin() + static_cast<std::ptrdiff_t>(x * n), raw.begin() + static_cast<std::ptrdiff_t>((x + 1) * n),
                      raw.begin() + static_cast<std::ptrdiff_t>(y * n));
  };
  std::size_t other = n;
  std::size_t first_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (same_row(i, 0)) {
      ++first_count;
    } else if (other == n) {
      other = i;
    } else if (!same_row(i, other)) {
      return std::nullopt;
    }
  }
  if (other == n) return std::nullopt;
  // Subsets of columns sent to the rows equal to row 0; each is equally likely.
  double subsets = 1.0;
  for (std::size_t k = 0; k < first_count; ++k) subsets = subsets * static_cast<double>(n - k) / static_cast<double>(k + 1);
  if (subsets > 5e7) fail(ErrorKind::SizeLimit, "two-sample enumeration exceeds 5e7 subsets");
  const auto& a = statistic_entries(m, standardized);
  std::vector<char> chosen(n, 0);
  std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(first_count), 1);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(subsets));
  do {
    double t = 0.0;
    for (std::size_t j = 0; j < n; ++j) t += chosen[j] ? a[j] : a[other * n + j];
    values.push_back(t);
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  std::vector<Weighted> parts{compress(values)};
  return combine(parts);
}

StepCdf exact_law(const ScoreMatrix& m, bool standardized, int cutoff, unsigned threads) {
  if (cutoff < 1 || cutoff > kMaxCutoff)
    fail(ErrorKind::SizeLimit, "enumeration cutoff must lie in 1.." + std::to_string(kMaxCutoff));
  if (auto two = exact_two_sample_distribution(m, standardized)) return *two;
  return exact_distribution(m, standardized, cutoff, threads);
}

StepCdf mc_distribution(const ScoreMatrix& m, std::uint64_t draws, std::uint64_t seed, bool standardized,
                        unsigned threads) {
  if (draws == 0) fail(ErrorKind::InputValidity, "draws must be positive");
  const std::size_t n = m.n();
  const auto& a = statistic_entries(m, standardized);
  const std::uint64_t chunks = (draws + kMcChunk - 1) / kMcChunk;
  std::vector<Weighted> parts(chunks);
  parallel_chunks(chunks, threads, [&](std::uint64_t c) {
    const std::uint64_t count = std::min(kMcChunk, draws - c * kMcChunk);
    auto eng = stream_engine(seed, c);
    std::vector<std::size_t> perm(n);
    std::vector<double> values;
    values.reserve(count);
    for (std::uint64_t d = 0; d < count; ++d) {
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(eng, i)]);
      double t = 0.0;
      for (std::size_t i = 0; i < n; ++i) t += a[i * n + perm[i]];
      values.push_back(t);
    }
    parts[c] = compress(values);
  });
  return combine(parts);
}

double third_moment_exact(const ScoreMatrix& m) {
  const double n = static_cast<double>(m.n());
  if (m.n() < 3) fail(ErrorKind::SizeLimit, "third moment formula needs n >= 3");
  return n / ((n - 1) * (n - 2)) * power_sums(m).sum3;
}

ExactMoments moments_exact(const ScoreMatrix& m) {
  const std::size_t nn = m.n();
  if (nn < 4) fail(ErrorKind::SizeLimit, "fourth moment formula needs n >= 4");
  const double n = static_cast<double>(nn);
  const auto& h = m.std_entries();
  const PowerSums p = power_sums(m);
  // sum_{i,j,k,h} a_ik a_ih a_jk a_jh = ||A^T A||_F^2
  double gram = 0.0;
  for (std::size_t k = 0; k < nn; ++k)
    for (std::size_t l = 0; l < nn; ++l) {
      double g = 0.0;
      for (std::size_t i = 0; i < nn; ++i) g += h[i * nn + k] * h[i * nn + l];
      gram += g * g;
    }
  ExactMoments r{};
  r.third = n / ((n - 1) * (n - 2)) * p.sum3;
  r.fourth = 3.0 * (n * n - 3 * n + 1) * (n - 1) / (n * (n - 2) * (n - 3)) -
             3.0 / ((n - 2) * (n - 3)) * p.row_col + n * (n + 1) / ((n - 1) * (n - 2) * (n - 3)) * p.sum4 +
             6.0 / (n * (n - 1) * (n - 2) * (n - 3)) * gram;
  return r;
}

SimplifiedMoments moments_simplified(const ScoreMatrix& m) {
  if (m.n() < 4) fail(ErrorKind::SizeLimit, "simplified moments need n >= 4");
  const double n = static_cast<double>(m.n());
  const PowerSums p = power_sums(m);
  SimplifiedMoments r{};
  r.third = p.sum3 / n;
  r.third_bound = 11.0 * p.abs3 / (n * n);
  r.fourth = 3.0 + 3.0 / n - 3.0 / (n * n) * p.row_col + p.sum4 / n;
  r.fourth_bound = 336.0 * p.sum4 / (n * n);
  return r;
}

}  // namespace rankedge
