#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace rankedge {

// Dense n x n score matrix with cached means, mu = n * a.. and sigma^2.
// Indices are 0-based. Immutable after construction.
class ScoreMatrix {
 public:
  ScoreMatrix(std::size_t n, std::vector<double> entries);

  static ScoreMatrix from_rows(const std::vector<std::vector<double>>& rows);
  // a_ij = e_i * d_j
  static ScoreMatrix outer(const std::vector<double>& e, const std::vector<double>& d);

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<double>& entries() const { return a_; }
  const std::vector<double>& row_means() const { return row_means_; }
  const std::vector<double>& col_means() const { return col_means_; }
  double grand_mean() const { return grand_mean_; }
  double mu() const { return static_cast<double>(n_) * grand_mean_; }
  double sigma2() const { return sigma2_; }
  double sigma() const;
  bool degenerate() const { return !ahat_.has_value(); }

  // Standardized entries (a_ij - a_i. - a_.j + a..) / sigma. Throws a
  // Degenerate error when sigma = 0.
  const std::vector<double>& std_entries() const;
  double ahat(std::size_t i, std::size_t j) const { return std_entries()[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> a_;
  std::vector<double> row_means_;
  std::vector<double> col_means_;
  double grand_mean_ = 0.0;
  double sigma2_ = 0.0;
  std::optional<std::vector<double>> ahat_;
};

// The standardized matrix as a ScoreMatrix of its own.
ScoreMatrix standardized(const ScoreMatrix& m);

struct MatrixMoments {
  double beta;     // sum |ahat|^3
  double delta;    // sum ahat^4
  double eta;      // sum |ahat|^5
  double d_cap;    // sqrt(delta / n)
  double e_cap;    // (eta / n)^(1/3)
  double lambda1;
  double lambda2;
};

// Power sums of the standardized entries shared by several formulas.
struct PowerSums {
  double sum3;      // sum ahat^3
  double abs3;      // sum |ahat|^3
  double sum4;      // sum ahat^4
  double abs5;      // sum |ahat|^5
  double row_col;   // sum_i r_i^2 + sum_j c_j^2 with r, c row/column sums of ahat^2
};

PowerSums power_sums(const ScoreMatrix& m);
MatrixMoments moments(const ScoreMatrix& m);

struct SubmatrixSelector {
  std::vector<std::size_t> cancelled_rows;
  std::vector<std::size_t> cancelled_cols;
};

ScoreMatrix submatrix(const ScoreMatrix& m, const SubmatrixSelector& sel);

struct TruncatedTriple {
  ScoreMatrix a_prime;
  std::vector<std::pair<std::size_t, std::size_t>> gamma;
  std::vector<double> d_entries;
  std::optional<std::vector<double>> abar;
  std::vector<double> ahat;

  // A[k] = 2^k sum |ahat|^k
  double a_bracket(int k) const;
};

TruncatedTriple truncate(const ScoreMatrix& m);

}  // namespace rankedge
