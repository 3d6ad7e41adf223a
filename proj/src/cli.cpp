#include "rankedge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "rankedge/coupling.hpp"
#include "rankedge/edgeworth.hpp"
#include "rankedge/normal_hermite.hpp"
#include "rankedge/perm_dist.hpp"
#include "rankedge/scores.hpp"

namespace rankedge {

using nlohmann::json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
      return 2;
    case ErrorKind::InputValidity:
      return 3;
    case ErrorKind::Degenerate:
    case ErrorKind::Numeric:
      return 4;
    case ErrorKind::SizeLimit:
      return 5;
  }
  return 1;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InputValidity, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& path, const std::string& text) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return true;
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '[';
}

double parse_number(const std::string& token, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::InputValidity, "bad number '" + token + "' in " + path);
  }
}

std::vector<double> split_numbers(const std::string& line, const std::string& path) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(parse_number(token, path));
    token.clear();
  };
  for (char c : line) {
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token.push_back(c);
  }
  flush();
  return out;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

struct Grid {
  double lo, hi, step;
};

Grid parse_grid(const std::string& spec) {
  Grid g{};
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':')
    fail(ErrorKind::Usage, "grid must look like lo:hi:step, got '" + spec + "'");
  if (!(g.step > 0.0) || !(g.hi >= g.lo)) fail(ErrorKind::Usage, "grid needs step > 0 and hi >= lo");
  if ((g.hi - g.lo) / g.step > 1e7) fail(ErrorKind::SizeLimit, "grid has more than 1e7 points");
  return g;
}

std::vector<double> grid_points(const Grid& g) {
  std::vector<double> x;
  const auto count = static_cast<std::size_t>(std::floor((g.hi - g.lo) / g.step + 1e-9));
  for (std::size_t k = 0; k <= count; ++k) x.push_back(g.lo + static_cast<double>(k) * g.step);
  return x;
}

std::vector<std::size_t> parse_n_list(const std::string& spec) {
  std::vector<std::size_t> out;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    try {
      const long v = std::stol(token);
      if (v < 2) throw std::out_of_range(token);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      fail(ErrorKind::Usage, "bad entry '" + token + "' in --n");
    }
  }
  if (out.empty()) fail(ErrorKind::Usage, "--n needs at least one size");
  return out;
}

struct Options {
  std::string matrix;
  std::string regression;
  std::string scores;
  std::string fn = "wilcoxon";
  std::string type = "approx";
  std::string method = "exact";
  std::string expansion = "matrix";
  std::string grid = "-4:4:0.01";
  std::string out;
  std::string format;  // empty: csv, except json for moments
  std::string n_list;
  std::string kind = "hermite";
  std::string kernel = "cubic";
  std::string config;
  int order = 2;
  int cutoff = kDefaultCutoff;
  int power = 0;
  int k = 0;
  std::uint64_t draws = 100000;
  std::uint64_t count = 1;
  std::uint64_t seed = 1;
  std::size_t n = 10;
  unsigned threads = 0;
  double z = 0.0;
  double lambda = 0.5;
  bool raw = false;
};

std::vector<double> scores_for(const Options& o, std::size_t n) {
  if (o.fn == "median") return median_scores(n);
  const ScoreFunction f = score_by_name(o.fn);
  if (o.type == "approx") return approx_scores(f, n);
  if (o.type == "exact") return exact_scores(f, n, o.threads);
  fail(ErrorKind::Usage, "--type must be exact or approx");
}

ScoreMatrix load_matrix(const Options& o) {
  if (!o.matrix.empty() && !o.regression.empty()) fail(ErrorKind::Usage, "give either --matrix or --regression, not both");
  if (!o.matrix.empty()) return read_matrix(o.matrix);
  if (!o.regression.empty()) {
    const std::vector<double> e = read_sequence(o.regression);
    if (!o.scores.empty()) {
      const std::vector<double> d = read_sequence(o.scores);
      if (d.size() != e.size()) fail(ErrorKind::InputValidity, "--regression and --scores differ in length");
      return ScoreMatrix::outer(e, d);
    }
    return ScoreMatrix::outer(e, scores_for(o, e.size()));
  }
  fail(ErrorKind::Usage, "an input is required: --matrix FILE or --regression FILE with --scores FILE or --fn");
}

StepCdf distribution(const Options& o, const ScoreMatrix& m, bool standardized) {
  if (o.method == "exact") return exact_law(m, standardized, o.cutoff, o.threads);
  if (o.method == "mc") return mc_distribution(m, o.draws, o.seed, standardized, o.threads);
  fail(ErrorKind::Usage, "--method must be exact or mc");
}

// Wilcoxon/vdW designs put the first ceil(n/3) observations in the first
// sample; the median design splits in halves.
ScoreMatrix family_matrix(const Options& o, std::size_t n) {
  std::vector<double> e(n, 0.0);
  const std::size_t m = o.fn == "median" ? n / 2 : (n + 2) / 3;
  for (std::size_t i = 0; i < m; ++i) e[i] = 1.0;
  return ScoreMatrix::outer(e, scores_for(o, n));
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) fail(ErrorKind::InputValidity, "cannot write " + path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_rows(std::ostream& os, const Options& o, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json obj = json::object();
      for (std::size_t c = 0; c < header.size(); ++c) obj[header[c]] = r[c];
      arr.push_back(obj);
    }
    os << arr.dump(2) << "\n";
    return;
  }
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << num(r[c]);
    os << "\n";
  }
}

void cmd_dist(const Options& o, std::ostream& out) {
  const ScoreMatrix m = load_matrix(o);
  const StepCdf F = distribution(o, m, !o.raw);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < F.size(); ++k) rows.push_back({F.atoms()[k].value, F.atoms()[k].prob, F.cdf_at_atom(k)});
  Output os(o.out, out);
  write_rows(*os, o, {"value", "prob", "cdf"}, rows);
}

void cmd_moments(const Options& o, std::ostream& out) {
  const ScoreMatrix m = load_matrix(o);
  const MatrixMoments mm = moments(m);
  std::vector<std::pair<std::string, double>> kv{
      {"n", static_cast<double>(m.n())}, {"mu", m.mu()},           {"sigma2", m.sigma2()},
      {"beta", mm.beta},                 {"delta", mm.delta},      {"eta", mm.eta},
      {"d_cap", mm.d_cap},               {"e_cap", mm.e_cap},      {"lambda1", mm.lambda1},
      {"lambda2", mm.lambda2}};
  if (m.n() >= 3) kv.emplace_back("third_exact", third_moment_exact(m));
  if (m.n() >= 4) {
    const ExactMoments ex = moments_exact(m);
    const SimplifiedMoments sm = moments_simplified(m);
    kv.emplace_back("fourth_exact", ex.fourth);
    kv.emplace_back("third_simplified", sm.third);
    kv.emplace_back("third_remainder_bound", sm.third_bound);
    kv.emplace_back("fourth_simplified", sm.fourth);
    kv.emplace_back("fourth_remainder_bound", sm.fourth_bound);
  }
  if (static_cast<int>(m.n()) <= o.cutoff || exact_two_sample_distribution(m, true)) {
    const StepCdf F = exact_law(m, true, o.cutoff, o.threads);
    kv.emplace_back("third_enumerated", F.moment(3));
    kv.emplace_back("fourth_enumerated", F.moment(4));
  }
  Output os(o.out, out);
  if (o.format == "csv") {
    *os << "key,value\n";
    for (auto& [k, v] : kv) *os << k << "," << num(v) << "\n";
  } else {
    json obj = json::object();
    for (auto& [k, v] : kv) obj[k] = v;
    *os << obj.dump(2) << "\n";
  }
}

void cmd_edgeworth(const Options& o, std::ostream& out) {
  const ScoreMatrix m = load_matrix(o);
  const StepCdf F = distribution(o, m, true);
  std::optional<EdgeworthExpansion> e1, e2;
  if (o.expansion == "matrix") {
    const MatrixMoments mm = moments(m);
    e1 = expansion_matrix(mm, 1);
    e2 = expansion_matrix(mm, 2);
  } else if (o.expansion == "integral") {
    if (o.regression.empty() || o.fn == "median")
      fail(ErrorKind::Usage, "the integral expansion needs --regression and a smooth --fn");
    const std::vector<double> ehat = standardize_sequence(read_sequence(o.regression));
    const ScoreFunction J = score_by_name(o.fn);
    e1 = expansion_integral(ehat, J, 1);
    e2 = expansion_integral(ehat, J, 2);
  } else {
    fail(ErrorKind::Usage, "--expansion must be matrix or integral");
  }
  std::vector<std::vector<double>> rows;
  for (double x : grid_points(parse_grid(o.grid))) {
    const double f = F.eval(x), a = (*e1)(x), b = (*e2)(x);
    rows.push_back({x, f, a, b, Phi(x), f - a, f - b});
  }
  Output os(o.out, out);
  write_rows(*os, o, {"x", "F", "e1", "e2", "phi", "diff1", "diff2"}, rows);
}

void cmd_scores(const Options& o, std::ostream& out) {
  const std::vector<double> d = scores_for(o, o.n);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < d.size(); ++j) rows.push_back({static_cast<double>(j + 1), d[j]});
  Output os(o.out, out);
  write_rows(*os, o, {"j", "d_j"}, rows);
}

json one_based(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (std::size_t x : v) a.push_back(x + 1);
  return a;
}

void cmd_sample(const Options& o, std::ostream& out) {
  const ScoreMatrix m = load_matrix(o);
  json arr = json::array();
  for (std::uint64_t k = 0; k < o.count; ++k) {
    const CouplingDraw d = sample_coupling(m, o.seed, k);
    json obj;
    obj["i"] = one_based({d.i.begin(), d.i.end()});
    obj["j"] = one_based({d.j.begin(), d.j.end()});
    for (std::size_t p = 0; p < 5; ++p) obj["perm" + std::to_string(p + 1)] = one_based(d.perms[p]);
    obj["t"] = d.t;
    obj["dt"] = d.dt;
    arr.push_back(obj);
  }
  Output os(o.out, out);
  *os << arr.dump(2) << "\n";
}

json diagnostics_json(const Diagnostics& d) {
  json obj;
  obj["n"] = d.n;
  obj["sup_f_phi"] = d.sup_f_phi;
  obj["sup_f_e1"] = d.sup_f_e1;
  obj["sup_f_e2"] = d.sup_f_e2;
  obj["beta_over_n"] = d.beta_over_n;
  obj["d_cap2"] = d.d_cap2;
  obj["e_cap3"] = d.e_cap3;
  obj["ratio_k1"] = d.ratio_k1;
  obj["lambda1"] = d.lambda1;
  obj["lambda2"] = d.lambda2;
  obj["conditions"] = {
      {"gap_e2_e1", d.gap_e2_e1},
      {"gap_bound", d.gap_bound},
      {"gap_ok", d.gap_e2_e1 <= d.gap_bound + 1e-12},
      {"e1_prime_sup", d.e1_prime_sup},
      {"e1_prime_bound", d.e1_prime_bound},
      {"e1_prime_ok", d.e1_prime_sup <= d.e1_prime_bound + 1e-6},
      {"ratio_k1_ok", d.ratio_k1 <= 90.0},
  };
  return obj;
}

void cmd_diagnose(const Options& o, std::ostream& out) {
  const ScoreMatrix m = load_matrix(o);
  const StepCdf F = distribution(o, m, true);
  Output os(o.out, out);
  *os << diagnostics_json(diagnose(m, F)).dump(2) << "\n";
}

void cmd_convergence(const Options& o, std::ostream& out) {
  std::vector<std::vector<double>> rows;
  for (std::size_t n : parse_n_list(o.n_list)) {
    const ScoreMatrix m = family_matrix(o, n);
    const Diagnostics d = diagnose(m, distribution(o, m, true));
    rows.push_back({static_cast<double>(n), d.sup_f_phi, d.sup_f_e1, d.sup_f_e2, d.d_cap2, d.e_cap3});
  }
  Output os(o.out, out);
  write_rows(*os, o, {"n", "sup_f_phi", "sup_f_e1", "sup_f_e2", "d_cap2", "e_cap3"}, rows);
}

void cmd_table(const Options& o, std::ostream& out) {
  const std::vector<double> xs = grid_points(parse_grid(o.grid));
  std::vector<std::vector<double>> rows;
  std::vector<std::string> header;
  if (o.kind == "hermite") {
    header = {"x", "value", "weighted"};
    for (double x : xs) rows.push_back({x, hermite(o.order, x), hermite(o.order, x) * psi(x)});
  } else if (o.kind == "kernel") {
    KernelKind kind;
    if (o.kernel == "linear")
      kind = KernelKind::Linear;
    else if (o.kernel == "quadratic")
      kind = KernelKind::Quadratic;
    else if (o.kernel == "cubic")
      kind = KernelKind::Cubic;
    else
      fail(ErrorKind::Usage, "--kernel must be linear, quadratic or cubic");
    const SmoothKernel h(kind, o.z, o.lambda, o.power);
    const int smooth = kind == KernelKind::Linear ? 0 : kind == KernelKind::Quadratic ? 1 : 2;
    header = {"x", "value", "d1", "d2", "d3"};
    for (double x : xs) {
      std::vector<double> r{x, h.value(x)};
      for (int d = 1; d <= 3; ++d) {
        double v = std::nan("");
        const auto knots = h.knots();
        const bool on_knot = std::find(knots.begin(), knots.end(), x) != knots.end();
        if (d <= smooth || !on_knot) {
          try {
            v = h.derivative(x, d);
          } catch (const Error&) {
          }
        }
        r.push_back(v);
      }
      rows.push_back(r);
    }
  } else if (o.kind == "stein") {
    const SteinSolution f(o.k, o.z);
    header = {"x", "value", "derivative", "bound"};
    for (double x : xs) rows.push_back({x, f.value(x), f.derivative(x), f.bound(x)});
  } else {
    fail(ErrorKind::Usage, "--kind must be hermite, kernel or stein");
  }
  Output os(o.out, out);
  write_rows(*os, o, header, rows);
}

}  // namespace

ScoreMatrix read_matrix(const std::string& path) {
  const std::string text = slurp(path);
  std::vector<std::vector<double>> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json_input = looks_like_json(path, text) || (first != std::string::npos && text[first] == '{');
  if (json_input) {
    try {
      const json j = json::parse(text);
      if (j.is_object() && j.contains("matrix")) {
        rows = j.at("matrix").get<std::vector<std::vector<double>>>();
      } else if (j.is_object() && j.contains("regression")) {
        if (!j.contains("scores")) fail(ErrorKind::InputValidity, path + ": \"regression\" needs \"scores\"");
        return ScoreMatrix::outer(j.at("regression").get<std::vector<double>>(), j.at("scores").get<std::vector<double>>());
      } else if (j.is_array()) {
        rows = j.get<std::vector<std::vector<double>>>();
      } else {
        fail(ErrorKind::InputValidity, path + ": expected \"matrix\" or \"regression\" plus \"scores\"");
      }
    } catch (const json::exception& e) {
      fail(ErrorKind::InputValidity, path + ": malformed matrix JSON (" + e.what() + ")");
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto r = split_numbers(line, path);
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  if (rows.empty()) fail(ErrorKind::InputValidity, path + " holds no matrix rows");
  return ScoreMatrix::from_rows(rows);
}

std::vector<double> read_sequence(const std::string& path) {
  const std::string text = slurp(path);
  std::vector<double> v;
  if (looks_like_json(path, text)) {
    try {
      v = json::parse(text).get<std::vector<double>>();
    } catch (const json::exception& e) {
      fail(ErrorKind::InputValidity, path + ": expected a JSON array of numbers (" + e.what() + ")");
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      for (double x : split_numbers(line, path)) v.push_back(x);
    }
  }
  if (v.empty()) fail(ErrorKind::InputValidity, path + " holds no numbers");
  return v;
}

std::vector<std::string> merge_config(std::vector<std::string> args, const std::string& config_path) {
  std::istringstream in(slurp(config_path));
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), '=', ' ');
    std::istringstream ls(line);
    std::string key, value;
    if (!(ls >> key)) continue;
    std::getline(ls >> std::ws, value);
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given || key == "config") continue;
    if (value == "true") {
      args.push_back(flag);
    } else if (value == "false") {
      continue;
    } else {
      if (value.empty()) fail(ErrorKind::Usage, "config key '" + key + "' has no value");
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact and approximate null distributions of linear rank statistics", "rankedge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* c, bool input, bool dist) {
    c->add_option("--config", o.config, "plain-text key/value file; command-line flags win");
    c->add_option("--out", o.out, "output path (default stdout)");
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
    if (input) {
      c->add_option("--matrix", o.matrix, "score matrix file, CSV rows or JSON");
      c->add_option("--regression", o.regression, "regression constants e_1..e_n");
      c->add_option("--scores", o.scores, "scores d_1..d_n (default: generated from --fn/--type)");
      c->add_option("--fn", o.fn, "wilcoxon, vdw, median or inv_sqrt");
      c->add_option("--type", o.type, "exact or approx scores");
    }
    if (dist) {
      c->add_option("--method", o.method, "exact or mc");
      c->add_option("--draws", o.draws, "Monte Carlo draws");
      c->add_option("--seed", o.seed, "Monte Carlo seed");
      c->add_option("--cutoff", o.cutoff, "largest n enumerated exactly");
    }
  };

  auto* dist = app.add_subcommand("dist", "law of the statistic as (value, prob, cdf)");
  common(dist, true, true);
  dist->add_flag("--raw", o.raw, "use the unstandardized statistic");
  auto* mom = app.add_subcommand("moments", "matrix moments, closed-form and enumerated moments");
  common(mom, true, false);
  mom->add_option("--cutoff", o.cutoff, "largest n enumerated exactly");
  auto* edge = app.add_subcommand("edgeworth", "F, e1, e2 and Phi on a grid");
  common(edge, true, true);
  edge->add_option("--grid", o.grid, "lo:hi:step");
  edge->add_option("--expansion", o.expansion, "matrix or integral");
  edge->add_option("--order", o.order, "ignored; both orders are emitted");
  auto* sc = app.add_subcommand("scores", "exact or approximating scores");
  common(sc, false, false);
  sc->add_option("--fn", o.fn, "wilcoxon, vdw, median or inv_sqrt");
  sc->add_option("--type", o.type, "exact or approx");
  sc->add_option("--n", o.n, "number of scores")->check(CLI::PositiveNumber);
  auto* sample = app.add_subcommand("sample", "draws of the five-permutation coupling as JSON");
  common(sample, true, false);
  sample->add_option("--seed", o.seed, "seed");
  sample->add_option("--count", o.count, "number of draws");
  auto* diag = app.add_subcommand("diagnose", "distances to Phi, e1, e2 and condition checks as JSON");
  common(diag, true, true);
  auto* conv = app.add_subcommand("convergence", "distance table over a list of n");
  common(conv, false, true);
  conv->add_option("--fn", o.fn, "wilcoxon, vdw or median");
  conv->add_option("--type", o.type, "exact or approx");
  conv->add_option("--n", o.n_list, "comma-separated sizes")->required();
  auto* table = app.add_subcommand("table", "Hermite polynomials, smooth kernels or Stein solutions on a grid");
  common(table, false, false);
  table->add_option("--kind", o.kind, "hermite, kernel or stein");
  table->add_option("--grid", o.grid, "lo:hi:step");
  table->add_option("--order", o.order, "Hermite order");
  table->add_option("--kernel", o.kernel, "linear, quadratic or cubic");
  table->add_option("--z", o.z, "kernel or Stein location");
  table->add_option("--lambda", o.lambda, "kernel width");
  table->add_option("--power", o.power, "kernel power factor");
  table->add_option("--k", o.k, "Stein moment order 0..4");

  try {
    std::vector<std::string> args = raw_args;
    for (std::size_t a = 0; a + 1 < args.size(); ++a)
      if (args[a] == "--config") {
        args = merge_config(args, args[a + 1]);
        break;
      }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    if (*dist) cmd_dist(o, out);
    if (*mom) cmd_moments(o, out);
    if (*edge) cmd_edgeworth(o, out);
    if (*sc) cmd_scores(o, out);
    if (*sample) cmd_sample(o, out);
    if (*diag) cmd_diagnose(o, out);
    if (*conv) cmd_convergence(o, out);
    if (*table) cmd_table(o, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rankedge
