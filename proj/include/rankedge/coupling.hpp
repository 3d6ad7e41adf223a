#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rankedge/core_matrix.hpp"

namespace rankedge {

using IndexVector = std::array<std::size_t, 16>;
using Permutation = std::vector<std::size_t>;

// One realization of the five-permutation coupling. All indices are 0-based;
// statistics are computed on the standardized matrix.
struct CouplingDraw {
  IndexVector i{};
  IndexVector j{};
  std::array<Permutation, 5> perms;
  std::array<double, 5> t{};
  std::array<double, 4> dt{};
  int gamma = 0;  // |{i1, i2}|
  int theta = 0;  // |{i1..i4}|
  int mu = 0;     // |{i1..i8}|
  int rho = 0;    // |{i1..i16}|
};

// True when i satisfies the seven equality-pattern equivalences of the
// 16-index construction.
bool satisfies_pattern(const IndexVector& i);

// Probability of index vector i under the construction.
double index_vector_probability(const IndexVector& i, std::size_t n);

// Builds the permutations, J indices and statistics for a fixed index vector
// and first permutation pi1.
CouplingDraw build_coupling(const ScoreMatrix& m, const IndexVector& i, const Permutation& pi1);

CouplingDraw sample_coupling(const ScoreMatrix& m, std::uint64_t seed, std::uint64_t draw = 0);

// Delta T_1..Delta T_4 recomputed from the index-local representations: each
// difference sums a_{x pi_{k+1}(x)} - a_{x pi_k(x)} over the distinct values
// x among I_1..I_16, I_1..I_8 and I_1..I_4 respectively.
std::array<double, 4> delta_representations(const ScoreMatrix& m, const CouplingDraw& d);

// Visits every reachable index vector with its probability.
void for_each_index_vector(std::size_t n, const std::function<void(const IndexVector&, double)>& visit);

struct CouplingLaw {
  std::size_t n = 0;
  double total_mass = 0.0;
  std::array<std::vector<double>, 5> perm_marginals;  // indexed by lexicographic rank
  std::vector<double> i1j1;                           // P(I1 = i, J1 = j) at i * n + j
  double mean_a = 0.0;                                // E a_{I1 J1}
  double identity_b = 0.0;                            // n E(a dT4)
  double identity_c = 0.0;                            // n{E(a dT4 dT3) + E(a dT4^2 / 2)}
  double identity_d = 0.0;                            // n{... four terms ...}
  double tv_t4_a = 0.0;                               // TV distance of (T4, a) to the product law
  double max_representation_error = 0.0;
};

// Exact joint law over (index vector, pi1) for n <= 4.
CouplingLaw coupling_exact_law(const ScoreMatrix& m);

struct CouplingSampleSummary {
  std::uint64_t draws = 0;
  std::vector<std::uint64_t> perm5_counts;  // indexed by lexicographic rank, n <= 8
  double mean = 0.0;                        // sample mean of n a_{I1 J1} dT4
  double std_error = 0.0;
  double max_representation_error = 0.0;
  bool patterns_valid = true;
};

CouplingSampleSummary summarize_couplings(const ScoreMatrix& m, std::uint64_t draws, std::uint64_t seed,
                                          unsigned threads = 0);

}  // namespace rankedge
