#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rankedge/core_matrix.hpp"
#include "rankedge/step_cdf.hpp"

namespace rankedge {

constexpr int kDefaultCutoff = 10;
constexpr int kMaxCutoff = 11;

std::uint64_t factorial(std::size_t n);
// Lexicographic rank <-> permutation of 0..n-1 via the factorial number system.
std::vector<std::size_t> unrank_permutation(std::uint64_t rank, std::size_t n);
std::uint64_t rank_permutation(const std::vector<std::size_t>& perm);

// Law of T_A = sum_i a_{i pi(i)} (or of the standardized statistic) over all
// n! permutations.
StepCdf exact_distribution(const ScoreMatrix& m, bool standardized, int cutoff = kDefaultCutoff,
                           unsigned threads = 0);

// Exact law for matrices whose rows take exactly two distinct patterns
// (two-sample designs) by enumerating column subsets instead of
// permutations; nullopt for other matrices.
std::optional<StepCdf> exact_two_sample_distribution(const ScoreMatrix& m, bool standardized);

// Two-sample enumeration when it applies, permutation enumeration otherwise.
StepCdf exact_law(const ScoreMatrix& m, bool standardized, int cutoff = kDefaultCutoff, unsigned threads = 0);

// Empirical law from `draws` uniform permutations. The result depends only
// on (seed, draws), never on the thread count.
StepCdf mc_distribution(const ScoreMatrix& m, std::uint64_t draws, std::uint64_t seed,
                        bool standardized = false, unsigned threads = 0);

// Closed-form third moment of the standardized statistic, n >= 3.
double third_moment_exact(const ScoreMatrix& m);

struct ExactMoments {
  double third;
  double fourth;
};

// Closed-form third and fourth moments of the standardized statistic, n >= 4.
ExactMoments moments_exact(const ScoreMatrix& m);

struct SimplifiedMoments {
  double third;         // (1/n) sum ahat^3
  double third_bound;   // 11 beta / n^2
  double fourth;        // 3 + 3/n - (3/n^2) S + (1/n) sum ahat^4
  double fourth_bound;  // 336 delta / n^2
};

SimplifiedMoments moments_simplified(const ScoreMatrix& m);

}  // namespace rankedge
