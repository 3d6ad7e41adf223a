#include "rankedge/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "rankedge/error.hpp"
#include "rankedge/parallel.hpp"
#include "rankedge/perm_dist.hpp"
#include "rankedge/rng.hpp"
#include "rankedge/step_cdf.hpp"

namespace rankedge {

namespace {

constexpr std::uint64_t kCouplingChunk = 16384;

// Distinct values of i[first..last) in first-occurrence order.
std::vector<std::size_t> distinct(const IndexVector& i, std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t k = first; k < last; ++k)
    if (std::find(out.begin(), out.end(), i[k]) == out.end()) out.push_back(i[k]);
  return out;
}

double falling_ratio(std::size_t n, std::size_t k) {
  // (n - k)! / n!
  double r = 1.0;
  for (std::size_t j = 0; j < k; ++j) r /= static_cast<double>(n - j);
  return r;
}

// Permutation of 0..n-1 sending from[k] -> to[k], completed inside `support`
// by pairing the remaining preimages and images in ascending order; values
// outside the support are fixed.
Permutation completed_map(std::size_t n, const std::vector<std::size_t>& from, const std::vector<std::size_t>& to,
                          const std::vector<std::size_t>& support) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> dom(n, 0), img(n, 0);
  for (std::size_t k = 0; k < from.size(); ++k) {
    p[from[k]] = to[k];
    dom[from[k]] = 1;
    img[to[k]] = 1;
  }
  std::vector<std::size_t> sorted(support);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> free_dom, free_img;
  for (std::size_t x : sorted) {
    if (!dom[x]) free_dom.push_back(x);
    if (!img[x]) free_img.push_back(x);
  }
  for (std::size_t k = 0; k < free_dom.size(); ++k) p[free_dom[k]] = free_img[k];
  return p;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation r(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) r[x] = outer[inner[x]];
  return r;
}

double statistic(const std::vector<double>& h, std::size_t n, const Permutation& p) {
  double t = 0.0;
  for (std::size_t x = 0; x < n; ++x) t += h[x * n + p[x]];
  return t;
}

// Fills i[4..16) from i[0..4) and two injections given as value lists:
// phi maps distinct(i1..i4)[k] -> phi[k], phi2 maps distinct(i1..i8)[k] -> phi2[k].
void extend(IndexVector& i, const std::vector<std::size_t>& d4, const std::vector<std::size_t>& phi,
            const std::vector<std::size_t>& d8, const std::vector<std::size_t>& phi2) {
  auto map = [](const std::vector<std::size_t>& dom, const std::vector<std::size_t>& img, std::size_t x) {
    return img[static_cast<std::size_t>(std::find(dom.begin(), dom.end(), x) - dom.begin())];
  };
  i[4] = map(d4, phi, i[2]);
  i[5] = map(d4, phi, i[3]);
  i[6] = map(d4, phi, i[0]);
  i[7] = map(d4, phi, i[1]);
  (void)d8;
  for (std::size_t k = 0; k < 4; ++k) {
    i[8 + k] = map(d8, phi2, i[4 + k]);
    i[12 + k] = map(d8, phi2, i[k]);
  }
}

std::vector<std::size_t> draw_distinct(std::mt19937_64& eng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t j = 0; j < k; ++j) std::swap(pool[j], pool[j + uniform_index(eng, n - j)]);
  pool.resize(k);
  return pool;
}

IndexVector sample_index_vector(std::mt19937_64& eng, std::size_t n) {
  IndexVector i{};
  i[0] = uniform_index(eng, n);
  i[1] = uniform_index(eng, n);
  if (i[0] == i[1]) {
    i[2] = i[3] = uniform_index(eng, n);
  } else {
    const auto two = draw_distinct(eng, n, 2);
    i[2] = two[0];
    i[3] = two[1];
  }
  const auto d4 = distinct(i, 0, 4);
  const auto phi = draw_distinct(eng, n, d4.size());
  i[4] = i[5] = i[6] = i[7] = 0;
  // i5..i8 depend only on phi; fill them before collecting distinct(i1..i8).
  auto pos = [&](std::size_t x) { return phi[static_cast<std::size_t>(std::find(d4.begin(), d4.end(), x) - d4.begin())]; };
  i[4] = pos(i[2]);
  i[5] = pos(i[3]);
  i[6] = pos(i[0]);
  i[7] = pos(i[1]);
  const auto d8 = distinct(i, 0, 8);
  const auto phi2 = draw_distinct(eng, n, d8.size());
  extend(i, d4, phi, d8, phi2);
  return i;
}

Permutation random_permutation(std::mt19937_64& eng, std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[uniform_index(eng, k)]);
  return p;
}

// Every ordered selection of k distinct values from 0..n-1.
void for_each_injection(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> cur;
  std::vector<char> used(n, 0);
  std::function<void()> rec = [&] {
    if (cur.size() == k) {
      f(cur);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      cur.push_back(v);
      rec();
      cur.pop_back();
      used[v] = 0;
    }
  };
  rec();
}

double max_rep_error(const CouplingDraw& d, const std::array<double, 4>& rep) {
  double e = 0.0;
  for (std::size_t k = 0; k < 4; ++k) e = std::max(e, std::fabs(rep[k] - d.dt[k]));
  return e;
}

}  // namespace

bool satisfies_pattern(const IndexVector& i) {
  auto eq = [&](int a, int b) { return i[static_cast<std::size_t>(a - 1)] == i[static_cast<std::size_t>(b - 1)]; };
  auto same = [](bool a, bool b) { return a == b; };
  if (!same(eq(1, 2), eq(3, 4))) return false;
  if (!same(eq(1, 2), eq(7, 8))) return false;
  if (!same(eq(3, 4), eq(5, 6))) return false;
  for (int l : {1, 2})
    for (int k : {3, 4})
      if (!same(eq(l, k), eq(l + 6, k + 2))) return false;
  for (int l = 1; l <= 4; ++l)
    for (int k = 1; k <= 4; ++k)
      if (!same(eq(l, k), eq(l + 12, k + 12))) return false;
  for (int l = 5; l <= 8; ++l)
    for (int k = 5; k <= 8; ++k)
      if (!same(eq(l, k), eq(l + 4, k + 4))) return false;
  for (int l = 1; l <= 4; ++l)
    for (int k = 5; k <= 8; ++k)
      if (!same(eq(l, k), eq(l + 12, k + 4))) return false;
  return true;
}

double index_vector_probability(const IndexVector& i, std::size_t n) {
  if (!satisfies_pattern(i)) return 0.0;
  const std::size_t gamma = distinct(i, 0, 2).size();
  const std::size_t theta = distinct(i, 0, 4).size();
  const std::size_t mu = distinct(i, 0, 8).size();
  const double dn = static_cast<double>(n);
  return falling_ratio(n, mu) * falling_ratio(n, theta) * falling_ratio(n, gamma) / (dn * dn);
}

CouplingDraw build_coupling(const ScoreMatrix& m, const IndexVector& i, const Permutation& pi1) {
  const std::size_t n = m.n();
  const auto& h = m.std_entries();
  if (pi1.size() != n) fail(ErrorKind::InputValidity, "pi1 must be a permutation of size n");
  CouplingDraw d;
  d.i = i;
  const auto s16 = distinct(i, 0, 16);
  const auto s8 = distinct(i, 0, 8);
  const auto s4 = distinct(i, 0, 4);
  const auto s2 = distinct(i, 0, 2);
  d.gamma = static_cast<int>(s2.size());
  d.theta = static_cast<int>(s4.size());
  d.mu = static_cast<int>(s8.size());
  d.rho = static_cast<int>(s16.size());

  std::vector<std::size_t> vf, vt;
  for (std::size_t k = 0; k < 4; ++k) {
    vf.push_back(i[k]);
    vt.push_back(i[12 + k]);
    vf.push_back(i[4 + k]);
    vt.push_back(i[8 + k]);
  }
  const Permutation v = completed_map(n, vf, vt, s16);
  const Permutation u = completed_map(n, {i[0], i[1], i[2], i[3]}, {i[6], i[7], i[4], i[5]}, s8);
  const Permutation t = completed_map(n, {i[0], i[1]}, {i[3], i[2]}, s4);
  const Permutation s = completed_map(n, {i[0], i[1]}, {i[1], i[0]}, s2);

  d.perms[0] = pi1;
  d.perms[1] = compose(d.perms[0], v);
  d.perms[2] = compose(d.perms[1], u);
  d.perms[3] = compose(d.perms[2], t);
  d.perms[4] = compose(d.perms[3], s);
  for (std::size_t k = 0; k < 8; ++k) {
    d.j[k] = pi1[i[8 + k]];
    d.j[8 + k] = pi1[i[k]];
  }
  for (std::size_t k = 0; k < 5; ++k) d.t[k] = statistic(h, n, d.perms[k]);
  for (std::size_t k = 0; k < 4; ++k) d.dt[k] = d.t[k + 1] - d.t[k];
  return d;
}

CouplingDraw sample_coupling(const ScoreMatrix& m, std::uint64_t seed, std::uint64_t draw) {
  const std::size_t n = m.n();
  if (n < 2) fail(ErrorKind::SizeLimit, "coupling needs n >= 2");
  auto eng = stream_engine(seed, draw);
  const IndexVector i = sample_index_vector(eng, n);
  const Permutation pi1 = random_permutation(eng, n);
  return build_coupling(m, i, pi1);
}

std::array<double, 4> delta_representations(const ScoreMatrix& m, const CouplingDraw& d) {
  const std::size_t n = m.n();
  const auto& h = m.std_entries();
  auto a = [&](std::size_t r, std::size_t c) { return h[r * n + c]; };
  auto local = [&](std::size_t last, const Permutation& next, const Permutation& prev) {
    double s = 0.0;
    for (std::size_t x : distinct(d.i, 0, last)) s += a(x, next[x]) - a(x, prev[x]);
    return s;
  };
  std::array<double, 4> r{};
  r[0] = local(16, d.perms[1], d.perms[0]);
  r[1] = local(8, d.perms[2], d.perms[1]);
  r[2] = local(4, d.perms[3], d.perms[2]);
  const std::size_t i1 = d.i[0], i2 = d.i[1], j1 = d.j[0], j2 = d.j[1];
  r[3] = a(i1, j1) + a(i2, j2) - a(i1, j2) - a(i2, j1);
  return r;
}

void for_each_index_vector(std::size_t n, const std::function<void(const IndexVector&, double)>& visit) {
  IndexVector i{};
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (std::size_t i3 = 0; i3 < n; ++i3)
        for (std::size_t i4 = 0; i4 < n; ++i4) {
          if ((i1 == i2) != (i3 == i4)) continue;
          i[0] = i1;
          i[1] = i2;
          i[2] = i3;
          i[3] = i4;
          const auto d4 = distinct(i, 0, 4);
          for_each_injection(n, d4.size(), [&](const std::vector<std::size_t>& phi) {
            auto pos = [&](std::size_t x) {
              return phi[static_cast<std::size_t>(std::find(d4.begin(), d4.end(), x) - d4.begin())];
            };
            i[4] = pos(i[2]);
            i[5] = pos(i[3]);
            i[6] = pos(i[0]);
            i[7] = pos(i[1]);
            const auto d8 = distinct(i, 0, 8);
            for_each_injection(n, d8.size(), [&](const std::vector<std::size_t>& phi2) {
              extend(i, d4, phi, d8, phi2);
              visit(i, index_vector_probability(i, n));
            });
          });
        }
}

CouplingLaw coupling_exact_law(const ScoreMatrix& m) {
  const std::size_t n = m.n();
  if (n > 4) fail(ErrorKind::SizeLimit, "exact coupling law is limited to n <= 4");
  if (n < 2) fail(ErrorKind::SizeLimit, "coupling needs n >= 2");
  const auto& h = m.std_entries();
  const std::uint64_t nf = factorial(n);
  std::vector<Permutation> perms;
  for (std::uint64_t r = 0; r < nf; ++r) perms.push_back(unrank_permutation(r, n));

  // Every (index vector, pi1) pair has probability w / (n^2 (n!)^4) with the
  // integer weight w = (n - gamma)! (n - theta)! (n - mu)!; accumulating w
  // keeps the marginals exact.
  const std::uint64_t denom = n * n * nf * nf * nf * nf;
  std::array<std::vector<std::uint64_t>, 5> marg;
  for (auto& v : marg) v.assign(nf, 0);
  std::vector<std::uint64_t> cells(n * n, 0);
  std::vector<std::uint64_t> joint(nf * n * n, 0);  // (rank of pi4, cell of a_{I1 J1})
  std::uint64_t mass = 0;
  long double e_a = 0.0L, e_b = 0.0L, e_c = 0.0L, e_d = 0.0L;
  CouplingLaw law;
  law.n = n;

  for_each_index_vector(n, [&](const IndexVector& iv, double) {
    for (const auto& pi1 : perms) {
      const CouplingDraw d = build_coupling(m, iv, pi1);
      const std::uint64_t w = factorial(n - static_cast<std::size_t>(d.gamma)) *
                              factorial(n - static_cast<std::size_t>(d.theta)) *
                              factorial(n - static_cast<std::size_t>(d.mu));
      mass += w;
      for (std::size_t k = 0; k < 5; ++k) marg[k][rank_permutation(d.perms[k])] += w;
      const std::size_t cell = d.i[0] * n + d.j[0];
      cells[cell] += w;
      joint[rank_permutation(d.perms[3]) * n * n + cell] += w;
      const long double a = h[cell];
      const long double d2 = d.dt[1], d3 = d.dt[2], d4 = d.dt[3];
      const long double lw = static_cast<long double>(w);
      e_a += lw * a;
      e_b += lw * a * d4;
      e_c += lw * a * (d4 * d3 + 0.5L * d4 * d4);
      e_d += lw * a * (d4 * d3 * d2 + 0.5L * d4 * d3 * d3 + 0.5L * d4 * d4 * d3 + d4 * d4 * d4 / 6.0L);
      law.max_representation_error =
          std::max(law.max_representation_error, max_rep_error(d, delta_representations(m, d)));
    }
  });
  const double dd = static_cast<double>(denom);
  law.total_mass = static_cast<double>(mass) / dd;
  for (std::size_t k = 0; k < 5; ++k) {
    law.perm_marginals[k].resize(nf);
    for (std::uint64_t r = 0; r < nf; ++r) law.perm_marginals[k][r] = static_cast<double>(marg[k][r]) / dd;
  }
  law.i1j1.resize(n * n);
  for (std::size_t c = 0; c < n * n; ++c) law.i1j1[c] = static_cast<double>(cells[c]) / dd;
  const long double ld = static_cast<long double>(denom);
  const long double dn = static_cast<long double>(n);
  law.mean_a = static_cast<double>(e_a / ld);
  law.identity_b = static_cast<double>(dn * e_b / ld);
  law.identity_c = static_cast<double>(dn * e_c / ld);
  law.identity_d = static_cast<double>(dn * e_d / ld);

  // Group permutations by the value of T4 and cells by the value of a, then
  // compare the joint law with the product of its marginals.
  auto group = [](const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    std::vector<std::size_t> id(values.size());
    std::size_t next = 0;
    double anchor = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k == 0 || !values_merge(anchor, values[order[k]])) {
        anchor = values[order[k]];
        ++next;
      }
      id[order[k]] = next - 1;
    }
    return std::make_pair(id, next);
  };
  std::vector<double> t4(nf);
  for (std::uint64_t r = 0; r < nf; ++r) t4[r] = statistic(h, n, perms[r]);
  const auto [tid, tcount] = group(t4);
  const auto [aid, acount] = group(h);
  std::vector<double> pj(tcount * acount, 0.0), pt(tcount, 0.0), pa(acount, 0.0);
  for (std::uint64_t r = 0; r < nf; ++r)
    for (std::size_t c = 0; c < n * n; ++c) {
      const double p = static_cast<double>(joint[r * n * n + c]) / dd;
      pj[tid[r] * acount + aid[c]] += p;
      pt[tid[r]] += p;
      pa[aid[c]] += p;
    }
  double tv = 0.0;
  for (std::size_t x = 0; x < tcount; ++x)
    for (std::size_t y = 0; y < acount; ++y) tv += std::fabs(pj[x * acount + y] - pt[x] * pa[y]);
  law.tv_t4_a = 0.5 * tv;
  return law;
}

CouplingSampleSummary summarize_couplings(const ScoreMatrix& m, std::uint64_t draws, std::uint64_t seed,
                                          unsigned threads) {
  const std::size_t n = m.n();
  if (n < 2) fail(ErrorKind::SizeLimit, "coupling needs n >= 2");
  if (n > 8) fail(ErrorKind::SizeLimit, "permutation counts are limited to n <= 8");
  if (draws == 0) fail(ErrorKind::InputValidity, "draws must be positive");
  const auto& h = m.std_entries();
  const std::uint64_t nf = factorial(n);
  const std::uint64_t chunks = (draws + kCouplingChunk - 1) / kCouplingChunk;
  struct Part {
    std::vector<std::uint64_t> counts;
    double sum = 0.0;
    double sumsq = 0.0;
    double rep = 0.0;
    bool valid = true;
  };
  std::vector<Part> parts(chunks);
  parallel_chunks(chunks, threads, [&](std::uint64_t c) {
    Part part;
    part.counts.assign(nf, 0);
    const std::uint64_t count = std::min(kCouplingChunk, draws - c * kCouplingChunk);
    auto eng = stream_engine(seed, c);
    for (std::uint64_t k = 0; k < count; ++k) {
      const IndexVector iv = sample_index_vector(eng, n);
      const Permutation pi1 = random_permutation(eng, n);
      const CouplingDraw d = build_coupling(m, iv, pi1);
      part.valid = part.valid && satisfies_pattern(d.i);
      ++part.counts[rank_permutation(d.perms[4])];
      const double x = static_cast<double>(n) * h[d.i[0] * n + d.j[0]] * d.dt[3];
      part.sum += x;
      part.sumsq += x * x;
      part.rep = std::max(part.rep, max_rep_error(d, delta_representations(m, d)));
    }
    parts[c] = std::move(part);
  });
  CouplingSampleSummary s;
  s.draws = draws;
  s.perm5_counts.assign(nf, 0);
  double sum = 0.0, sumsq = 0.0;
  for (const auto& p : parts) {
    for (std::uint64_t r = 0; r < nf; ++r) s.perm5_counts[r] += p.counts[r];
    sum += p.sum;
    sumsq += p.sumsq;
    s.max_representation_error = std::max(s.max_representation_error, p.rep);
    s.patterns_valid = s.patterns_valid && p.valid;
  }
  const double dd = static_cast<double>(draws);
  s.mean = sum / dd;
  const double var = draws > 1 ? (sumsq - dd * s.mean * s.mean) / (dd - 1.0) : 0.0;
  s.std_error = std::sqrt(std::max(var, 0.0) / dd);
  return s;
}

}  // namespace rankedge
