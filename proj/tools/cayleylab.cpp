// Command-line front end. Links only the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cayleylab.h"
#include "report.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Raised for bad configuration; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failing library call. Statuses caused by the configuration count as
// usage errors; the rest propagate as internal failures.
struct LibError : std::runtime_error {
  cl_status status;
  LibError(cl_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(cl_status s, const char* call) {
  if (s == CL_OK) return;
  throw LibError(s, std::string(call) + ": " + cl_status_name(s) + ": " + cl_last_error());
}

struct Config {
  std::string family = "sl2";
  unsigned m = 2;
  std::uint64_t p = 5;
  unsigned k = 1;
  std::uint64_t q = 0;  // 0: use p and k
  std::uint64_t n = 6;  // cyclic modulus
  std::vector<std::uint64_t> primes;
  std::uint64_t seed = 0;
  unsigned n_pairs = 1;
  double c0 = 2.0;
  double gamma = 0.05;
  double kappa = 0.5;
  double tol = 1e-8;
  double eps_min = 0.01;
  std::string method = "lanczos";
  unsigned n_max = 10000;
  bool stop_at_surrogate = false;
  std::uint64_t samples = 10000;
  unsigned xn_degree = 2;
  double min_pass_rate = 0.9;
  unsigned max_len = 8;
  unsigned word_len = 6;
  std::uint64_t triples = 1000;
  std::string L = "100";
  std::string corpus;
  unsigned n_polys = 1000;
  unsigned n_sets = 100;
  unsigned set_size = 30;
  unsigned n_subgroups = 5;
  std::string output_dir = "cayleylab-out";
  unsigned threads = 0;  // 0: $CAYLEYLAB_THREADS or 1
};

// One entry per config key: how to read it from JSON, write it back, and
// override it from a command-line flag.
struct Binding {
  std::string key;
  std::function<void(Config&, const json&)> load;
  std::function<void(const Config&, json&)> save;
  std::function<void(Config&)> apply_flag;
};

std::string kebab(std::string s) {
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

class Options {
 public:
  explicit Options(CLI::App& app) : app_(app) {
    bind("family", &Config::family, "sl2, sl3, sl4, sl (with --m), sp4, su3 or cyclic");
    bind("m", &Config::m, "matrix size for --family sl");
    bind("p", &Config::p, "field characteristic");
    bind("k", &Config::k, "field degree");
    bind("q", &Config::q, "field order p^k (overrides --p/--k)");
    bind("n", &Config::n, "modulus for the cyclic family");
    bind("primes", &Config::primes, "sweep over F_p for these primes (comma separated)")->delimiter(',');
    bind("seed", &Config::seed, "master seed");
    bind("n_pairs", &Config::n_pairs, "random generator pairs per group");
    bind("c0", &Config::c0, "word length factor: n = 2 floor(c0 ln|G|)");
    bind("gamma", &Config::gamma, "trap threshold exponent: |G|^-gamma");
    bind("kappa", &Config::kappa, "phase-threshold exponent in (0, 1)");
    bind("tol", &Config::tol, "eigensolver residual tolerance");
    bind("eps_min", &Config::eps_min, "spectral gap counted as expanding");
    bind("method", &Config::method, "lanczos or power");
    bind("n_max", &Config::n_max, "longest walk traced");
    bind("stop_at_surrogate", &Config::stop_at_surrogate, "stop the walk at ||mu - 1||_inf <= 1/|G|");
    bind("samples", &Config::samples, "Monte Carlo samples per trap family");
    bind("xn_degree", &Config::xn_degree, "polynomial degree of the X_N module");
    bind("min_pass_rate", &Config::min_pass_rate, "nonconc: required fraction of passing pairs");
    bind("max_len", &Config::max_len, "ping-pong: longest reduced word certified");
    bind("word_len", &Config::word_len, "ping-pong: word length of sampled triples");
    bind("triples", &Config::triples, "ping-pong: sampled word triples");
    bind("L", &Config::L, "ping-pong: dilation parameter (rational)");
    bind("corpus", &Config::corpus, "sz-audit: JSON polynomial corpus");
    bind("n_polys", &Config::n_polys, "sz-audit: random polynomials when no corpus is given");
    bind("n_sets", &Config::n_sets, "bsg-audit: random sets");
    bind("set_size", &Config::set_size, "bsg-audit: size of each random set");
    bind("n_subgroups", &Config::n_subgroups, "bsg-audit: cyclic subgroups sampled");
    bind("output_dir", &Config::output_dir, "directory for report files");
    bind("threads", &Config::threads, "worker threads (0: $CAYLEYLAB_THREADS or 1)");
    app_.add_option("--config", config_path_, "JSON config file; flags override it");
  }

  Config resolve() const {
    Config c;
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw UsageError("cannot read config file " + config_path_);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("config file: " + std::string(e.what()));
      }
      if (!j.is_object()) throw UsageError("config file must hold a JSON object");
      for (const auto& [key, value] : j.items()) {
        const auto it = std::find_if(bindings_.begin(), bindings_.end(), [&](const Binding& b) { return b.key == key; });
        if (it == bindings_.end()) throw UsageError("unknown config key '" + key + "'");
        try {
          it->load(c, value);
        } catch (const json::exception&) {
          throw UsageError("config key '" + key + "' has the wrong type");
        }
      }
    }
    for (const auto& b : bindings_) b.apply_flag(c);
    return c;
  }

  json to_json(const Config& c) const {
    json j = json::object();
    for (const auto& b : bindings_) b.save(c, j);
    return j;
  }

 private:
  template <class T>
  CLI::Option* bind(const std::string& key, T Config::*field, const std::string& help) {
    auto holder = std::make_shared<std::optional<T>>();
    CLI::Option* opt = app_.add_option("--" + kebab(key), *holder, help);
    bindings_.push_back({key, [field](Config& c, const json& v) { c.*field = v.get<T>(); },
                         [key, field](const Config& c, json& j) { j[key] = c.*field; },
                         [holder, field](Config& c) {
                           if (*holder) c.*field = **holder;
                         }});
    return opt;
  }

  CLI::App& app_;
  std::string config_path_;
  std::vector<Binding> bindings_;
};

// ---- RAII over the C handles ----

struct GroupDel {
  void operator()(cl_group* g) const { cl_group_destroy(g); }
};
struct GensDel {
  void operator()(cl_gens* s) const { cl_gens_destroy(s); }
};
struct PolyDel {
  void operator()(cl_poly* p) const { cl_poly_destroy(p); }
};
using Group = std::unique_ptr<cl_group, GroupDel>;
using Gens = std::unique_ptr<cl_gens, GensDel>;
using Poly = std::unique_ptr<cl_poly, PolyDel>;

struct GroupSpec {
  cl_family family;
  unsigned m;
  std::uint64_t p;
  unsigned k;
};

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw UsageError("q must be a prime power >= 2");
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  unsigned k = 0;
  for (std::uint64_t r = q; r > 1; r /= p, ++k) {
    if (r % p != 0) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
  }
  return {p, k};
}

GroupSpec spec_of(const Config& c, std::optional<std::uint64_t> prime = std::nullopt) {
  GroupSpec s{CL_FAMILY_SL, 2, c.p, c.k};
  if (c.q != 0) std::tie(s.p, s.k) = prime_power(c.q);
  if (prime) s.p = *prime, s.k = 1;
  const std::string& f = c.family;
  if (f == "sl2" || f == "sl3" || f == "sl4") {
    s.m = static_cast<unsigned>(f[2] - '0');
  } else if (f == "sl") {
    s.m = c.m;
  } else if (f == "sp4") {
    s.family = CL_FAMILY_SP4;
    s.m = 4;
  } else if (f == "su3") {
    s.family = CL_FAMILY_SU3;
    s.m = 3;
  } else if (f == "cyclic") {
    s.family = CL_FAMILY_CYCLIC;
    s.m = 1;
    s.p = prime.value_or(c.n);
    s.k = 0;
  } else {
    throw UsageError("unknown family '" + f + "'");
  }
  return s;
}

Group make_group(const GroupSpec& s) {
  cl_group* g = nullptr;
  const cl_status st = cl_group_create(s.family, s.m, s.p, s.k, &g);
  if (st != CL_OK) throw UsageError(std::string("cannot build the group: ") + cl_status_name(st) + ": " + cl_last_error());
  return Group(g);
}

std::string group_name(const cl_group* g) {
  char buf[128];
  check(cl_group_name(g, buf, sizeof buf), "cl_group_name");
  return buf;
}

std::string group_order(const cl_group* g) {
  char buf[512];
  check(cl_group_order(g, buf, sizeof buf), "cl_group_order");
  return buf;
}

double order_d(const cl_group* g) { return std::stod(group_order(g)); }

cl_group_info info_of(const cl_group* g) {
  cl_group_info i{};
  check(cl_group_info_get(g, &i), "cl_group_info_get");
  return i;
}

std::size_t elem_len(const cl_group* g) {
  const auto i = info_of(g);
  return std::size_t{i.dim} * i.dim;
}

// Generators for experiments: the residue 1 in the cyclic family, otherwise
// a random pair from stream (seed, index).
Gens make_gens(const cl_group* g, std::uint64_t seed, std::uint64_t index) {
  cl_gens* s = nullptr;
  if (info_of(g).family == CL_FAMILY_CYCLIC) {
    const std::uint64_t one = 1;
    check(cl_gens_from_entries(g, 1, &one, &s), "cl_gens_from_entries");
  } else {
    check(cl_gens_random_pair(g, seed, index, &s), "cl_gens_random_pair");
  }
  return Gens(s);
}

json gens_json(const cl_group* g, const cl_gens* s) {
  json out = json::array();
  std::vector<std::uint64_t> e(elem_len(g));
  for (std::size_t i = 0; i < cl_gens_count(s); ++i) {
    check(cl_gens_entries(s, i, e.data()), "cl_gens_entries");
    out.push_back(e);
  }
  return out;
}

// A prime sweep replaces p and forces k = 1.
const std::vector<std::uint64_t>& sweep_primes(const Config& c) { return c.primes; }

// ---- output ----

struct Output {
  std::string command;
  const Config& cfg;
  json config;
  json results = json::object();
  std::vector<std::string> violations;
  std::map<std::string, std::string> files;

  void write_file(const std::string& name, const std::string& body) {
    fs::create_directories(cfg.output_dir);
    const fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path.string());
    out << body;
    files[name] = path.string();
  }

  int finish() {
    json r;
    r["command"] = command;
    r["version"] = cl_version();
    r["seed"] = cfg.seed;
    r["config"] = config;
    r["results"] = results;
    r["verdict"] = {{"ok", violations.empty()}, {"violations", violations}};
    json f = json::array();
    for (const auto& [k, v] : files) f.push_back(k);
    f.push_back(command + ".json");
    r["files"] = f;
    const std::string text = r.dump(2) + "\n";
    write_file(command + ".json", text);
    std::cout << text;
    return violations.empty() ? 0 : 2;
  }
};

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

struct Fit {
  double slope = 0, intercept = 0, r2 = 0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i], syy += y[i] * y[i];
  }
  Fit f;
  const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  if (vx <= 0) return f;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
  return f;
}

// ---- commands ----

int cmd_group_info(Output& out) {
  const Group g = make_group(spec_of(out.cfg));
  const auto i = info_of(g.get());
  json r;
  r["name"] = group_name(g.get());
  static const char* fam[] = {"SL", "Sp4", "SU3", "Cyclic"};
  r["family"] = fam[i.family];
  r["dim"] = i.dim;
  const std::string order = group_order(g.get());
  r["order"] = order.size() < 19 ? json(std::stoull(order)) : json(order);
  r["order_decimal"] = order;
  r["enumerable"] = i.enumerable != 0;
  if (i.family != CL_FAMILY_CYCLIC) {
    r["field"] = {{"p", i.p}, {"k", i.k}, {"q", i.q}};
    std::vector<std::uint64_t> mod(i.k + 1);
    check(cl_field_modulus(g.get(), mod.data(), mod.size()), "cl_field_modulus");
    r["field"]["modulus"] = mod;
    r["twist"] = i.twist;
  } else {
    r["n"] = i.p;
  }
  if (i.family == CL_FAMILY_SL || i.family == CL_FAMILY_SU3) {
    std::string buf(1 << 16, '\0');
    check(cl_bruhat_cell_sizes(g.get(), buf.data(), buf.size()), "cl_bruhat_cell_sizes");
    buf.resize(std::strlen(buf.c_str()));
    json cells = json::array();
    std::size_t pos = 0;
    long double sum = 0;
    std::string exact_sum;
    while (pos <= buf.size()) {
      const std::size_t end = std::min(buf.find(',', pos), buf.size());
      const std::string s = buf.substr(pos, end - pos);
      cells.push_back(s);
      sum += std::stold(s);
      pos = end + 1;
    }
    r["bruhat_cells"] = cells;
    // Relative check in long double; exact sums are covered by the test suite.
    const long double ord = std::stold(order);
    const bool ok = std::fabs(static_cast<double>(sum - ord)) <= 1e-12 * static_cast<double>(ord);
    r["bruhat_cells_sum_to_order"] = ok;
    if (!ok) out.violations.push_back("Bruhat cell sizes do not sum to |G|");
  }
  out.results = r;
  return out.finish();
}

int cmd_spectral_sweep(Output& out) {
  const Config& c = out.cfg;
  if (c.method != "lanczos" && c.method != "power") throw UsageError("method must be lanczos or power");
  cl_spectral_options so;
  cl_spectral_defaults(&so);
  so.power_method = c.method == "power";
  so.tol = c.tol;
  so.seed = c.seed;
  std::vector<std::optional<std::uint64_t>> groups;
  for (auto p : sweep_primes(c)) groups.emplace_back(p);
  if (groups.empty()) groups.emplace_back(std::nullopt);

  report::Csv csv({"group", "order", "pair", "lambda_abs", "lambda_signed_max", "lambda_signed_min", "epsilon",
                   "iterations", "residual", "converged", "bipartite", "expanding"});
  json rows = json::array();
  report::Series eps{"epsilon", {}, {}};
  std::size_t expanding = 0, total = 0, row = 0;
  for (const auto& prime : groups) {
    const Group g = make_group(spec_of(c, prime));
    const std::string name = group_name(g.get());
    const std::string order = group_order(g.get());
    const bool cyclic = info_of(g.get()).family == CL_FAMILY_CYCLIC;
    const unsigned pairs = cyclic ? 1 : c.n_pairs;
    for (unsigned i = 0; i < pairs; ++i) {
      const Gens s = make_gens(g.get(), c.seed, i);
      cl_spectral_report sr{};
      check(cl_spectral(g.get(), s.get(), &so, &sr), "cl_spectral");
      cl_bipartite_report br{};
      check(cl_bipartite(g.get(), s.get(), &br), "cl_bipartite");
      const bool exp = sr.epsilon >= c.eps_min && !br.bipartite;
      expanding += exp;
      ++total;
      csv.row(name, order, i, sr.lambda_abs, sr.lambda_signed_max, sr.lambda_signed_min, sr.epsilon, sr.iterations,
              sr.residual, sr.converged != 0, br.bipartite != 0, exp);
      rows.push_back({{"group", name},
                      {"pair", i},
                      {"generators", gens_json(g.get(), s.get())},
                      {"lambda_abs", sr.lambda_abs},
                      {"lambda_signed_max", sr.lambda_signed_max},
                      {"lambda_signed_min", sr.lambda_signed_min},
                      {"epsilon", sr.epsilon},
                      {"iterations", sr.iterations},
                      {"residual", sr.residual},
                      {"converged", sr.converged != 0},
                      {"bipartite", br.bipartite != 0},
                      {"bipartite_method", br.perfect_shortcut ? "perfect-group" : "bfs-2-coloring"}});
      eps.x.push_back(static_cast<double>(row++));
      eps.y.push_back(sr.epsilon);
      if (sr.lambda_abs > 1 + 1e-6 || sr.lambda_abs < -1e-12) {
        out.violations.push_back(name + " pair " + std::to_string(i) + ": lambda_abs outside [0, 1]");
      }
      if (br.bipartite && sr.converged && std::fabs(sr.lambda_signed_min + 1) > 1e-6) {
        out.violations.push_back(name + " pair " + std::to_string(i) + ": bipartite graph without eigenvalue -1");
      }
    }
  }
  out.results["rows"] = rows;
  out.results["expanding"] = expanding;
  out.results["total"] = total;
  out.results["expanding_fraction"] = total ? static_cast<double>(expanding) / total : 0.0;
  // Single-row runs also expose the row at top level for convenience.
  if (rows.size() == 1) {
    out.results["lambda_abs"] = rows[0]["lambda_abs"];
    out.results["bipartite"] = rows[0]["bipartite"];
  }
  out.write_file("spectral-sweep.csv", csv.str());
  out.write_file("spectral-sweep.svg", report::svg_plot("spectral gap per generator set", "row", "epsilon", {eps}, false));
  return out.finish();
}

int cmd_walk_trace(Output& out) {
  const Config& c = out.cfg;
  cl_phase_options po;
  cl_phase_defaults(&po);
  po.kappa = c.kappa;
  po.n_max = c.n_max;
  po.stop_at_surrogate = c.stop_at_surrogate;
  std::vector<std::optional<std::uint64_t>> groups;
  for (auto p : sweep_primes(c)) groups.emplace_back(p);
  if (groups.empty()) groups.emplace_back(std::nullopt);

  report::Csv csv({"group", "pair", "n", "l2", "linf_dist", "support"});
  json summary = json::array();
  std::vector<report::Series> plot;
  std::vector<double> fit_x, fit_y;
  std::vector<std::size_t> fit_missing;
  for (const auto& prime : groups) {
    const Group g = make_group(spec_of(c, prime));
    const std::string name = group_name(g.get());
    const bool cyclic = info_of(g.get()).family == CL_FAMILY_CYCLIC;
    const unsigned pairs = cyclic ? 1 : c.n_pairs;
    std::vector<double> hits;
    for (unsigned i = 0; i < pairs; ++i) {
      const Gens s = make_gens(g.get(), c.seed, i);
      cl_phase_summary ps{};
      std::vector<cl_phase_row> rows(c.n_max + 1);
      check(cl_phase_trace(g.get(), s.get(), &po, rows.data(), rows.size(), &ps), "cl_phase_trace");
      rows.resize(std::min(rows.size(), ps.rows));
      report::Series ser{name + " pair " + std::to_string(i), {}, {}};
      for (const auto& r : rows) {
        csv.row(name, i, r.n, r.l2, r.linf_dist, r.support);
        ser.x.push_back(r.n);
        ser.y.push_back(r.linf_dist);
      }
      if (plot.size() < 6) plot.push_back(std::move(ser));
      auto hit = [](int v) { return v < 0 ? json(nullptr) : json(v); };
      summary.push_back({{"group", name},
                         {"order", group_order(g.get())},
                         {"pair", i},
                         {"threshold1", ps.threshold1},
                         {"threshold2", ps.threshold2},
                         {"threshold3", ps.threshold3},
                         {"threshold3_raw", ps.threshold3_raw},
                         {"surrogate_inv", ps.surrogate_inv},
                         {"surrogate_abs", ps.surrogate_abs},
                         {"n1", hit(ps.n1)},
                         {"n2", hit(ps.n2)},
                         {"n3", hit(ps.n3)},
                         {"n3_inv", hit(ps.n3_inv)},
                         {"n3_abs", hit(ps.n3_abs)},
                         {"l2_monotone", ps.l2_monotone != 0},
                         {"steps", ps.rows}});
      if (!ps.l2_monotone) out.violations.push_back(name + " pair " + std::to_string(i) + ": L2 norm increased");
      if (ps.n3_inv >= 0) hits.push_back(ps.n3_inv);
    }
    // Pairs that never reach the surrogate (e.g. non-generating pairs) are
    // left out of the median; the count is reported.
    if (!hits.empty()) {
      fit_x.push_back(std::log(order_d(g.get())));
      fit_y.push_back(median(hits));
      fit_missing.push_back(pairs - hits.size());
    }
  }
  out.results["pairs"] = summary;
  if (fit_x.size() >= 2) {
    const Fit f = linear_fit(fit_x, fit_y);
    out.results["scaling"] = {{"log_order", fit_x}, {"median_n3_inv", fit_y}, {"pairs_not_mixed", fit_missing},
                              {"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
  }
  out.write_file("walk-trace.csv", csv.str());
  out.write_file("walk-trace.svg", report::svg_plot("distance to uniform", "n", "||mu^(n) - 1||_inf", plot, true));
  return out.finish();
}

int cmd_nonconc(Output& out) {
  const Config& c = out.cfg;
  const Group g = make_group(spec_of(c));
  if (info_of(g.get()).family == CL_FAMILY_CYCLIC) throw UsageError("nonconc needs a matrix group");
  cl_nonconc_options no;
  cl_nonconc_defaults(&no);
  no.gamma = c.gamma;
  no.c0 = c.c0;
  no.samples = c.samples;
  no.xn_degree = c.xn_degree;
  report::Csv csv({"pair", "family", "subfield_index", "n", "samples", "trapped", "trapped_fraction", "std_error",
                   "subfield_fraction", "degenerate_fraction", "discarded", "threshold", "pass"});
  json pairs = json::array();
  unsigned passing = 0;
  for (unsigned i = 0; i < c.n_pairs; ++i) {
    const Gens s = make_gens(g.get(), c.seed, i);
    no.seed = c.seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    cl_trap_report reps[16];
    std::size_t count = 0;
    check(cl_nonconc_verdict(g.get(), s.get(), &no, reps, 16, &count), "cl_nonconc_verdict");
    bool all = true;
    json fam = json::array();
    for (std::size_t j = 0; j < count; ++j) {
      const auto& r = reps[j];
      all = all && r.pass;
      csv.row(i, std::string(r.family), r.subfield_index, r.n, r.samples, r.trapped, r.trapped_fraction, r.std_error,
              r.subfield_fraction, r.degenerate_fraction, r.discarded, r.threshold, r.pass != 0);
      fam.push_back({{"family", r.family},
                     {"subfield_index", r.subfield_index},
                     {"n", r.n},
                     {"samples", r.samples},
                     {"trapped", r.trapped},
                     {"trapped_fraction", r.trapped_fraction},
                     {"std_error", r.std_error},
                     {"threshold", r.threshold},
                     {"pass", r.pass != 0}});
    }
    passing += all;
    pairs.push_back({{"pair", i}, {"generators", gens_json(g.get(), s.get())}, {"pass", all}, {"families", fam}});
  }
  const double rate = c.n_pairs ? static_cast<double>(passing) / c.n_pairs : 1.0;
  out.results = {{"group", group_name(g.get())}, {"pairs", pairs}, {"pass_rate", rate}};
  if (rate < c.min_pass_rate) {
    out.violations.push_back("pass rate " + std::to_string(rate) + " below " + std::to_string(c.min_pass_rate));
  }
  out.write_file("nonconc.csv", csv.str());
  return out.finish();
}

struct CorpusPoly {
  std::string id;
  std::string target;  // affine, group, pairs
  unsigned vars = 0;
  std::vector<std::uint64_t> coeffs;
  std::vector<unsigned> exps;
};

std::vector<CorpusPoly> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read corpus " + path);
  std::vector<CorpusPoly> out;
  try {
    const json j = json::parse(in);
    if (!j.is_array()) throw UsageError("corpus must be a JSON array");
    std::size_t idx = 0;
    for (const auto& e : j) {
      CorpusPoly p;
      p.id = e.value("id", "p" + std::to_string(idx++));
      p.target = e.value("target", "affine");
      p.vars = e.at("vars").get<unsigned>();
      for (const auto& t : e.at("terms")) {
        p.coeffs.push_back(t.at(0).get<std::uint64_t>());
        const auto ex = t.at(1).get<std::vector<unsigned>>();
        if (ex.size() != p.vars) throw UsageError("corpus entry " + p.id + ": exponent vector length differs from vars");
        p.exps.insert(p.exps.end(), ex.begin(), ex.end());
      }
      if (p.target != "affine" && p.target != "group" && p.target != "pairs") {
        throw UsageError("corpus entry " + p.id + ": target must be affine, group or pairs");
      }
      out.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw UsageError("corpus: " + std::string(e.what()));
  }
  return out;
}

// Deterministic fuzz corpus: d <= 3 affine variables, degree <= 5, plus
// entry polynomials of degree <= 3 on the group.
std::vector<CorpusPoly> fuzz_corpus(const Config& c, std::uint64_t q, unsigned dim, bool group_ok) {
  std::uint64_t state = c.seed ^ 0x5a5a5a5aULL;
  auto next = [&](std::uint64_t n) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return (z ^ (z >> 31)) % n;
  };
  auto random_poly = [&](const std::string& id, const std::string& target, unsigned vars, unsigned D) {
    CorpusPoly p{id, target, vars, {}, {}};
    const unsigned terms = 1 + static_cast<unsigned>(next(5));
    for (unsigned t = 0; t < terms; ++t) {
      const unsigned deg = t == 0 ? D : static_cast<unsigned>(next(D + 1));
      std::vector<unsigned> e(vars, 0);
      for (unsigned u = 0; u < deg; ++u) ++e[next(vars)];
      p.coeffs.push_back(1 + next(q - 1));
      p.exps.insert(p.exps.end(), e.begin(), e.end());
    }
    return p;
  };
  std::vector<CorpusPoly> out;
  for (unsigned i = 0; i < c.n_polys; ++i) {
    const unsigned d = 1 + static_cast<unsigned>(next(3));
    const unsigned D = 1 + static_cast<unsigned>(next(5));
    out.push_back(random_poly("affine" + std::to_string(i), "affine", d, D));
  }
  if (group_ok) {
    for (unsigned i = 0; i < 10; ++i) {
      const unsigned D = 1 + static_cast<unsigned>(next(3));
      out.push_back(random_poly("group" + std::to_string(i), "group", dim * dim, D));
    }
  }
  return out;
}

int cmd_sz_audit(Output& out) {
  const Config& c = out.cfg;
  const Group g = make_group(spec_of(c));
  const auto info = info_of(g.get());
  if (info.family == CL_FAMILY_CYCLIC) throw UsageError("sz-audit needs a matrix group");
  const bool small = order_d(g.get()) <= 1e7;
  const bool streamable = info.family == CL_FAMILY_SL || info.family == CL_FAMILY_SU3;
  const auto corpus = c.corpus.empty() ? fuzz_corpus(c, info.q, info.dim, small) : load_corpus(c.corpus);

  report::Csv csv({"poly_id", "target", "d", "D", "q", "count", "bound", "ratio", "identically_zero", "bound_holds"});
  std::size_t affine = 0, affine_violations = 0, group_rows = 0, stream_mismatch = 0;
  double max_group_ratio = 0;
  for (const auto& p : corpus) {
    cl_poly* raw = nullptr;
    check(cl_poly_create(g.get(), p.vars, p.coeffs.size(), p.coeffs.data(), p.exps.data(), &raw), "cl_poly_create");
    const Poly poly(raw);
    cl_zero_count zc{};
    if (p.target == "affine") {
      check(cl_sz_affine(poly.get(), &zc), "cl_sz_affine");
      ++affine;
      if (!zc.bound_holds) {
        ++affine_violations;
        out.violations.push_back("Schwartz-Zippel bound violated by " + p.id);
      }
    } else if (p.target == "group") {
      check(cl_sz_group(poly.get(), g.get(), 0, &zc), "cl_sz_group");
      ++group_rows;
      if (streamable) {
        cl_zero_count zs{};
        check(cl_sz_group(poly.get(), g.get(), 1, &zs), "cl_sz_group");
        if (zs.count != zc.count) {
          ++stream_mismatch;
          out.violations.push_back("index and cell-streaming counts differ for " + p.id);
        }
      }
      if (!zc.identically_zero) max_group_ratio = std::max(max_group_ratio, zc.ratio);
    } else {
      check(cl_sz_pairs(poly.get(), g.get(), &zc), "cl_sz_pairs");
      ++group_rows;
      if (!zc.fubini_holds) out.violations.push_back("slice bound violated by " + p.id);
      if (!zc.identically_zero) max_group_ratio = std::max(max_group_ratio, zc.ratio);
    }
    csv.row(p.id, p.target, p.vars, cl_poly_degree(poly.get()), info.q, zc.count, zc.bound, zc.ratio,
            zc.identically_zero != 0, zc.bound_holds != 0);
  }
  out.results = {{"group", group_name(g.get())},
                 {"polynomials", corpus.size()},
                 {"affine_checked", affine},
                 {"affine_violations", affine_violations},
                 {"group_checked", group_rows},
                 {"stream_mismatches", stream_mismatch},
                 {"max_group_ratio", max_group_ratio}};
  out.write_file("sz-audit.csv", csv.str());
  return out.finish();
}

int cmd_bsg_audit(Output& out) {
  const Config& c = out.cfg;
  const Group g = make_group(spec_of(c));
  const auto info = info_of(g.get());
  if (!info.enumerable) throw UsageError("bsg-audit needs an enumerable group");
  const std::size_t len = elem_len(g.get());
  std::vector<std::uint64_t> e(len);
  auto random_index = [&](std::uint64_t stream_id) {
    check(cl_group_random(g.get(), c.seed, stream_id, e.data()), "cl_group_random");
    std::uint64_t idx = 0;
    check(cl_group_index_of(g.get(), e.data(), &idx), "cl_group_index_of");
    return idx;
  };

  report::Csv csv({"set_id", "kind", "size", "product_size", "energy", "energy_ratio", "cs_bound", "tripling",
                   "approx_k", "cover_valid"});
  std::size_t rows = 0;
  auto audit = [&](const std::string& id, const std::string& kind, std::vector<std::uint64_t> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    const double a = static_cast<double>(set.size());
    std::uint64_t aa = 0, energy = 0, k = 0;
    int valid = 0;
    double tri = 0;
    check(cl_product_size(g.get(), set.data(), set.size(), set.data(), set.size(), &aa), "cl_product_size");
    const bool energy_ok = set.size() <= 4000;
    if (energy_ok) check(cl_energy(g.get(), set.data(), set.size(), &energy), "cl_energy");
    check(cl_tripling(g.get(), set.data(), set.size(), &tri), "cl_tripling");
    check(cl_approx_k(g.get(), set.data(), set.size(), &k, &valid), "cl_approx_k");
    const double cs = a * a * a * a / static_cast<double>(aa);
    csv.row(id, kind, set.size(), aa, energy_ok ? std::to_string(energy) : std::string(),
            energy_ok ? static_cast<double>(energy) / (a * a * a) : std::nan(""), cs, tri, k, valid != 0);
    ++rows;
    if (!valid) out.violations.push_back(id + ": greedy cover does not cover AA");
    if (energy_ok) {
      const double en = static_cast<double>(energy);
      if (en < a * a || en > a * a * a) out.violations.push_back(id + ": energy outside [|A|^2, |A|^3]");
      if (en < cs * (1 - 1e-12)) out.violations.push_back(id + ": energy below |A|^4/|AA|");
      if (kind == "subgroup" && en != a * a * a) out.violations.push_back(id + ": subgroup energy differs from |A|^3");
    }
    if (kind == "subgroup" && tri != 1.0) out.violations.push_back(id + ": subgroup tripling differs from 1");
  };

  std::uint64_t stream_id = 0;
  for (unsigned i = 0; i < c.n_sets; ++i) {
    std::vector<std::uint64_t> set;
    for (unsigned j = 0; j < c.set_size; ++j) set.push_back(random_index(stream_id++));
    audit("random" + std::to_string(i), "random", std::move(set));
  }
  for (unsigned i = 0; i < c.n_subgroups; ++i) {
    check(cl_group_random(g.get(), c.seed, stream_id++, e.data()), "cl_group_random");
    cl_gens* raw = nullptr;
    check(cl_gens_from_entries(g.get(), 1, e.data(), &raw), "cl_gens_from_entries");
    const Gens s(raw);
    std::size_t count = 0;
    std::vector<std::uint64_t> h(static_cast<std::size_t>(order_d(g.get())));
    check(cl_generated_subgroup(g.get(), s.get(), h.data(), h.size(), &count), "cl_generated_subgroup");
    h.resize(count);
    audit("subgroup" + std::to_string(i), "subgroup", std::move(h));
  }
  out.results = {{"group", group_name(g.get())}, {"sets", rows}};
  out.write_file("bsg-audit.csv", csv.str());
  return out.finish();
}

int cmd_pingpong_cert(Output& out) {
  const Config& c = out.cfg;
  if (c.max_len > 12) throw UsageError("max-len is limited to 12");
  if (c.word_len == 0 || c.word_len > 10) throw UsageError("word-len must lie in [1, 10]");
  cl_pingpong_options po;
  cl_pingpong_defaults(&po);
  po.L = c.L.c_str();
  po.max_len = c.max_len;
  po.word_len = c.word_len;
  po.triples = c.triples;
  po.seed = c.seed;
  cl_pingpong_report r{};
  const cl_status st = cl_pingpong_certify(&po, &r);
  if (st == CL_INVALID_ARGUMENT || st == CL_NON_GENERIC_CONJUGATOR) {
    throw UsageError(std::string(cl_status_name(st)) + ": " + cl_last_error());
  }
  check(st, "cl_pingpong_certify");
  out.results = {{"L", c.L},
                 {"max_len", r.max_len},
                 {"words_checked", r.words_checked},
                 {"all_nontrivial", r.all_nontrivial != 0},
                 {"counterexample", r.all_nontrivial ? json(nullptr) : json(r.counterexample)},
                 {"region_misses", r.region_misses},
                 {"inclusions_ok", r.inclusions_ok != 0},
                 {"inclusion_checks", r.inclusion_checks},
                 {"triples_checked", r.triples_checked},
                 {"triples_rejected", r.triples_rejected},
                 {"common_fixed_point_failures", r.common_fixed_point_failures},
                 {"containment_checked", r.containment_checked},
                 {"containment_failures", r.containment_failures}};
  if (!r.inclusions_ok) out.violations.push_back("region inclusions fail");
  if (!r.all_nontrivial) out.violations.push_back(std::string("word acts trivially: ") + r.counterexample);
  if (r.common_fixed_point_failures) out.violations.push_back("triple with a common fixed point");
  if (r.containment_failures) out.violations.push_back("fixed point outside its repelling region");
  return out.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on random Cayley graphs of finite groups of Lie type"};
  app.set_version_flag("--version", std::string(cl_version()));
  app.require_subcommand(1);
  app.fallthrough();
  Options options(app);

  using Runner = int (*)(Output&);
  const std::vector<std::tuple<std::string, std::string, Runner>> commands{
      {"group-info", "order, field and Bruhat cells of a group", cmd_group_info},
      {"spectral-sweep", "spectral gap of random generator pairs", cmd_spectral_sweep},
      {"walk-trace", "random walk trajectory and phase hitting times", cmd_walk_trace},
      {"nonconc", "trap fractions of random words", cmd_nonconc},
      {"sz-audit", "exhaustive polynomial zero counts", cmd_sz_audit},
      {"bsg-audit", "energy, tripling and covers of sets", cmd_bsg_audit},
      {"pingpong-cert", "exact freeness certificate for the affine pair", cmd_pingpong_cert},
  };
  for (const auto& [name, help, run] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const Config cfg = options.resolve();
    if (cfg.threads > 0) cl_set_threads(cfg.threads);
    Config effective = cfg;
    effective.threads = cl_threads();
    for (const auto& [name, help, run] : commands) {
      if (!app.got_subcommand(name)) continue;
      Output out{name, effective, options.to_json(effective), json::object(), {}, {}};
      return run(out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const LibError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
