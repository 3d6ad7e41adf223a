#include "rankedge/core_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankedge/error.hpp"

namespace rankedge {

ScoreMatrix::ScoreMatrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
  if (n_ == 0) fail(ErrorKind::InputValidity, "matrix must have at least one row");
  if (a_.size() != n_ * n_) fail(ErrorKind::InputValidity, "matrix is not square");
  double scale = 0.0;
  for (double v : a_) {
    if (!std::isfinite(v)) fail(ErrorKind::InputValidity, "matrix entries must be finite");
    scale = std::max(scale, std::fabs(v));
  }
  const double dn = static_cast<double>(n_);
  row_means_.assign(n_, 0.0);
  col_means_.assign(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      row_means_[i] += a_[i * n_ + j];
      col_means_[j] += a_[i * n_ + j];
    }
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    total += row_means_[i];
    row_means_[i] /= dn;
    col_means_[i] /= dn;
  }
  grand_mean_ = total / (dn * dn);
  if (n_ == 1) return;

  std::vector<double> centered(n_ * n_);
  double ss = 0.0;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      double c = a_[i * n_ + j] - row_means_[i] - col_means_[j] + grand_mean_;
      centered[i * n_ + j] = c;
      ss += c * c;
      max_abs = std::max(max_abs, std::fabs(c));
    }
  // Rounding noise of a constant-like matrix is treated as an exact zero.
  if (max_abs <= 1e-12 * scale || max_abs == 0.0) return;
  sigma2_ = ss / (dn - 1.0);
  const double s = std::sqrt(sigma2_);
  for (double& c : centered) c /= s;
  ahat_ = std::move(centered);
}

ScoreMatrix ScoreMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) fail(ErrorKind::InputValidity, "matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ScoreMatrix(n, std::move(flat));
}

ScoreMatrix ScoreMatrix::outer(const std::vector<double>& e, const std::vector<double>& d) {
  if (e.size() != d.size())
    fail(ErrorKind::InputValidity, "regression constants and scores differ in length (" +
                                       std::to_string(e.size()) + " vs " + std::to_string(d.size()) + ")");
  const std::size_t n = e.size();
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = e[i] * d[j];
  return ScoreMatrix(n, std::move(flat));
}

double ScoreMatrix::sigma() const { return std::sqrt(sigma2_); }

const std::vector<double>& ScoreMatrix::std_entries() const {
  if (!ahat_) fail(ErrorKind::Degenerate, "degenerate matrix: sigma_A = 0");
  return *ahat_;
}

ScoreMatrix standardized(const ScoreMatrix& m) { return ScoreMatrix(m.n(), m.std_entries()); }

PowerSums power_sums(const ScoreMatrix& m) {
  const auto& h = m.std_entries();
  const std::size_t n = m.n();
  PowerSums p{0, 0, 0, 0, 0};
  std::vector<double> rows(n, 0.0), cols(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = h[i * n + j];
      const double x2 = x * x;
      const double ax = std::fabs(x);
      p.sum3 += x2 * x;
      p.abs3 += x2 * ax;
      p.sum4 += x2 * x2;
      p.abs5 += x2 * x2 * ax;
      rows[i] += x2;
      cols[j] += x2;
    }
  for (std::size_t i = 0; i < n; ++i) p.row_col += rows[i] * rows[i] + cols[i] * cols[i];
  return p;
}

MatrixMoments moments(const ScoreMatrix& m) {
  const PowerSums p = power_sums(m);
  const double n = static_cast<double>(m.n());
  MatrixMoments r{};
  r.beta = p.abs3;
  r.delta = p.sum4;
  r.eta = p.abs5;
  r.d_cap = std::sqrt(p.sum4 / n);
  r.e_cap = std::cbrt(p.abs5 / n);
  r.lambda1 = p.sum3 / n;
  r.lambda2 = p.sum4 / n + 3.0 / n - 3.0 / (n * n) * p.row_col;
  return r;
}

namespace {

std::vector<std::size_t> kept(std::size_t n, const std::vector<std::size_t>& cancelled, const char* what) {
  std::vector<char> drop(n, 0);
  for (std::size_t k = 0; k < cancelled.size(); ++k) {
    if (cancelled[k] >= n) fail(ErrorKind::InputValidity, std::string(what) + " index out of range");
    if (k > 0 && cancelled[k] <= cancelled[k - 1])
      fail(ErrorKind::InputValidity, std::string(what) + " indices must be strictly increasing");
    drop[cancelled[k]] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!drop[i]) out.push_back(i);
  return out;
}

}  // namespace

ScoreMatrix submatrix(const ScoreMatrix& m, const SubmatrixSelector& sel) {
  const std::size_t n = m.n();
  if (sel.cancelled_rows.size() != sel.cancelled_cols.size())
    fail(ErrorKind::InputValidity, "selector must cancel as many rows as columns");
  if (sel.cancelled_rows.size() >= n) fail(ErrorKind::SizeLimit, "cannot cancel l >= n rows");
  const auto rows = kept(n, sel.cancelled_rows, "row");
  const auto cols = kept(n, sel.cancelled_cols, "column");
  std::vector<double> flat;
  flat.reserve(rows.size() * cols.size());
  for (std::size_t i : rows)
    for (std::size_t j : cols) flat.push_back(m(i, j));
  return ScoreMatrix(rows.size(), std::move(flat));
}

TruncatedTriple truncate(const ScoreMatrix& m) {
  const auto& h = m.std_entries();
  const std::size_t n = m.n();
  std::vector<double> ap(n * n);
  std::vector<std::pair<std::size_t, std::size_t>> gamma;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = h[i * n + j];
      if (std::fabs(x) <= 0.5) {
        ap[i * n + j] = x;
      } else {
        ap[i * n + j] = 0.0;
        gamma.emplace_back(i, j);
      }
    }
  ScoreMatrix a_prime(n, std::move(ap));
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = a_prime.row_means()[i] + a_prime.col_means()[j] - a_prime.grand_mean();
  std::optional<std::vector<double>> abar;
  if (!a_prime.degenerate()) abar = a_prime.std_entries();
  return TruncatedTriple{std::move(a_prime), std::move(gamma), std::move(d), std::move(abar), h};
}

double TruncatedTriple::a_bracket(int k) const {
  double s = 0.0;
  for (double x : ahat) s += std::pow(std::fabs(x), k);
  return std::ldexp(s, k);
}

}  // namespace rankedge
