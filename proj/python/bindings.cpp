#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rankedge/coupling.hpp"
#include "rankedge/edgeworth.hpp"
#include "rankedge/error.hpp"
#include "rankedge/normal_hermite.hpp"
#include "rankedge/perm_dist.hpp"
#include "rankedge/scores.hpp"

namespace py = pybind11;
using namespace rankedge;

namespace {

ScoreMatrix to_matrix(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw Error(ErrorKind::InputValidity, "matrix must be square");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return ScoreMatrix(n, std::vector<double>(a.data(), a.data() + n * n));
}

py::tuple law_arrays(const StepCdf& F) {
  py::array_t<double> values(F.size()), probs(F.size());
  auto v = values.mutable_unchecked<1>();
  auto p = probs.mutable_unchecked<1>();
  for (std::size_t k = 0; k < F.size(); ++k) {
    v(k) = F.atoms()[k].value;
    p(k) = F.atoms()[k].prob;
  }
  return py::make_tuple(values, probs);
}

StepCdf from_arrays(const std::vector<double>& values, const std::vector<double>& probs) {
  if (values.size() != probs.size()) throw Error(ErrorKind::InputValidity, "values and probs differ in length");
  std::vector<std::pair<double, double>> w;
  for (std::size_t k = 0; k < values.size(); ++k) w.emplace_back(values[k], probs[k]);
  return StepCdf::from_weighted(w);
}

ScoreFunction score(const std::string& name) {
  return name == "median" ? median_score() : score_by_name(name);
}

py::dict moments_dict(const ScoreMatrix& m) {
  const MatrixMoments mm = moments(m);
  py::dict d;
  d["mu"] = m.mu();
  d["sigma2"] = m.sigma2();
  d["beta"] = mm.beta;
  d["delta"] = mm.delta;
  d["eta"] = mm.eta;
  d["d_cap"] = mm.d_cap;
  d["e_cap"] = mm.e_cap;
  d["lambda1"] = mm.lambda1;
  d["lambda2"] = mm.lambda2;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and approximate null distributions of linear rank statistics";

  static py::exception<Error> error(m, "RankEdgeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("standardize", [](py::array_t<double> a) {
    const ScoreMatrix s = to_matrix(a);
    const auto& e = s.std_entries();
    py::array_t<double> out({s.n(), s.n()});
    std::copy(e.begin(), e.end(), out.mutable_data());
    return out;
  }, py::arg("matrix"));
  m.def("outer", [](const std::vector<double>& e, const std::vector<double>& d) {
    const ScoreMatrix s = ScoreMatrix::outer(e, d);
    py::array_t<double> out({s.n(), s.n()});
    std::copy(s.entries().begin(), s.entries().end(), out.mutable_data());
    return out;
  }, py::arg("regression"), py::arg("scores"));
  m.def("moments", [](py::array_t<double> a) { return moments_dict(to_matrix(a)); }, py::arg("matrix"));
  m.def("moments_exact", [](py::array_t<double> a) {
    const ExactMoments e = moments_exact(to_matrix(a));
    return py::make_tuple(e.third, e.fourth);
  }, py::arg("matrix"), "Closed-form third and fourth moments of the standardized statistic.");

  m.def("exact_distribution", [](py::array_t<double> a, bool standardized, int cutoff, unsigned threads) {
    const ScoreMatrix s = to_matrix(a);
    py::gil_scoped_release release;
    StepCdf F = exact_law(s, standardized, cutoff, threads);
    py::gil_scoped_acquire acquire;
    return law_arrays(F);
  }, py::arg("matrix"), py::arg("standardized") = true, py::arg("cutoff") = kDefaultCutoff, py::arg("threads") = 0,
     "Atoms (values, probs) of the permutation law.");
  m.def("mc_distribution", [](py::array_t<double> a, std::uint64_t draws, std::uint64_t seed, bool standardized,
                              unsigned threads) {
    const ScoreMatrix s = to_matrix(a);
    py::gil_scoped_release release;
    StepCdf F = mc_distribution(s, draws, seed, standardized, threads);
    py::gil_scoped_acquire acquire;
    return law_arrays(F);
  }, py::arg("matrix"), py::arg("draws"), py::arg("seed"), py::arg("standardized") = true, py::arg("threads") = 0);

  m.def("sample_coupling", [](py::array_t<double> a, std::uint64_t seed, std::uint64_t draw) {
    const CouplingDraw d = sample_coupling(to_matrix(a), seed, draw);
    py::dict out;
    out["i"] = std::vector<std::size_t>(d.i.begin(), d.i.end());
    out["j"] = std::vector<std::size_t>(d.j.begin(), d.j.end());
    out["perms"] = std::vector<Permutation>(d.perms.begin(), d.perms.end());
    out["t"] = std::vector<double>(d.t.begin(), d.t.end());
    out["dt"] = std::vector<double>(d.dt.begin(), d.dt.end());
    return out;
  }, py::arg("matrix"), py::arg("seed"), py::arg("draw") = 0, "One coupling draw; indices are 0-based.");

  m.def("expansion", [](double c1, double c2, int order, const std::vector<double>& x) {
    const EdgeworthExpansion e(order, c1, c2);
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = e(x[k]);
    return y;
  }, py::arg("c1"), py::arg("c2") = 0.0, py::arg("order") = 2, py::arg("x"));
  m.def("sup_distance_phi", [](const std::vector<double>& values, const std::vector<double>& probs) {
    return sup_distance(from_arrays(values, probs), [](double x) { return Phi(x); });
  }, py::arg("values"), py::arg("probs"));
  m.def("diagnose", [](py::array_t<double> a, int cutoff) {
    const ScoreMatrix s = to_matrix(a);
    const Diagnostics d = diagnose(s, exact_law(s, true, cutoff));
    py::dict out;
    out["sup_f_phi"] = d.sup_f_phi;
    out["sup_f_e1"] = d.sup_f_e1;
    out["sup_f_e2"] = d.sup_f_e2;
    out["ratio_k1"] = d.ratio_k1;
    out["d_cap2"] = d.d_cap2;
    out["e_cap3"] = d.e_cap3;
    out["beta_over_n"] = d.beta_over_n;
    return out;
  }, py::arg("matrix"), py::arg("cutoff") = kDefaultCutoff);
  m.def("iid_lattice_law", [](const std::vector<std::pair<double, double>>& support, std::size_t n) {
    return law_arrays(iid_convolution(make_iid_spec(support), n));
  }, py::arg("support"), py::arg("n"), "Exact law of the normalized sum of n iid copies.");

  m.def("scores", [](const std::string& fn, std::size_t n, const std::string& type) {
    if (fn == "median") return median_scores(n);
    if (type == "exact") return exact_scores(score(fn), n);
    if (type == "approx") return approx_scores(score(fn), n);
    throw Error(ErrorKind::Usage, "type must be exact or approx");
  }, py::arg("fn"), py::arg("n"), py::arg("type") = "approx");
  m.def("v_alpha", [](const std::string& fn, double alpha) {
    const VAlphaResult r = v_alpha_check(score(fn), alpha);
    return py::make_tuple(r.gamma, r.holds);
  }, py::arg("fn"), py::arg("alpha"));
  m.def("van_zwet", [](const std::vector<double>& e, const std::vector<double>& d, double delta,
                       std::optional<double> zeta) {
    VanZwetParams p;
    p.delta = delta;
    p.zeta = zeta;
    const VanZwetReport r = van_zwet_check(e, d, p);
    py::dict out;
    out["measure"] = r.measure;
    out["zeta"] = r.zeta;
    out["spread_ok"] = r.spread_ok;
    out["regression_ok"] = r.regression_ok;
    out["scores_ok"] = r.scores_ok;
    out["rate_exponent_first"] = r.rate_exponent_first;
    out["rate_exponent_second"] = r.rate_exponent_second;
    return out;
  }, py::arg("regression"), py::arg("scores"), py::arg("delta") = 0.1, py::arg("zeta") = py::none());

  m.def("hermite", &hermite, py::arg("n"), py::arg("x"));
  m.def("Phi", &Phi, py::arg("x"));
  m.def("psi", &psi, py::arg("x"));
}
