#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "output.hpp"
#include "rexp/bounds.hpp"
#include "rexp/exact_int.hpp"
#include "rexp/lattice.hpp"
#include "rexp/majorant.hpp"
#include "rexp/moments.hpp"
#include "rexp/parallel.hpp"
#include "verify.hpp"

#ifndef EXPSUM_VERSION
#define EXPSUM_VERSION "0.0.0"
#endif

namespace expsum_cli {
namespace {

using namespace rexp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a check inside a subcommand fails; carries the check id.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  std::uint64_t samples = 200;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  double tol = 1e-10;
  std::string config;
};

struct MomentArgs {
  std::string process = "poisson";
  std::string map = "identity";
  double p = 4.0;
  std::vector<std::int64_t> sizes{16, 32, 64};
  std::string pmf;
  std::int64_t nodes = 0;
};

struct ShellArgs {
  int d = 3;
  std::vector<double> D{10.0};
  std::vector<double> E;
  std::string mode = "fast";
  bool sup = false;
  std::size_t e_samples = 2000;
  double s = 0.0;
};

struct DivisorArgs {
  std::vector<double> x{10.0};
  std::int64_t upto = 0;
};

struct RepcountArgs {
  int n = 2;
  int d = 2;
  std::int64_t M = 10;
  bool summary = false;
};

struct GreenRuzsaArgs {
  std::int64_t base = 5;
  int digits = 4;
  bool list = false;
};

struct MajorantArgs {
  std::vector<std::int64_t> freqs;
  double p = 4.0;
  int restarts = 8;
  bool genericity = false;
  std::string process = "poisson";
  std::vector<std::int64_t> sizes{8, 16, 32, 64};
  double epsilon = 0.2;
};

struct SlopeArgs {
  std::string in;
  std::string x_column = "size";
  std::string y_column = "mean";
};

// ---------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string env_name(const std::string& option) {
  std::string name = "EXPSUM_";
  for (char c : option) name += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

// Fills options not given on the command line: environment first, then the config file.
void apply_layers(CLI::App& app, CLI::App* sub, const std::string& config_path) {
  std::map<std::string, std::string> config;
  if (!config_path.empty()) config = read_config(config_path);
  std::vector<CLI::App*> scopes{&app};
  if (sub) scopes.push_back(sub);
  for (CLI::App* scope : scopes) {
    for (CLI::Option* opt : scope->get_options()) {
      const std::string name = opt->get_single_name();
      if (name.empty() || name == "help" || name == "config" || opt->count() > 0) continue;
      std::string value;
      if (const char* env = std::getenv(env_name(name).c_str())) {
        value = env;
      } else if (auto it = config.find(name); it != config.end()) {
        value = it->second;
      } else {
        continue;
      }
      if (opt->get_type_size() == 0) {
        // flags: accept the usual boolean spellings
        if (value == "1" || value == "true" || value == "yes" || value == "on") opt->add_result("true");
        else if (value == "0" || value == "false" || value == "no" || value == "off") opt->add_result("false");
        else throw UsageError("option " + name + ": expected a boolean, got '" + value + "'");
      } else {
        opt->add_result(value);
      }
      try {
        opt->run_callback();
      } catch (const CLI::Error& e) {
        throw UsageError("option " + name + " from environment/config: " + e.what());
      }
    }
  }
}

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::csv;
  if (f == "json") return Format::json;
  throw UsageError("--format must be csv or json");
}

ProcessKind parse_process(const std::string& s) {
  if (s == "poisson") return ProcessKind::poisson;
  if (s == "walk") return ProcessKind::walk;
  if (s == "iid") return ProcessKind::iid;
  throw UsageError("--process must be poisson, walk or iid");
}

TimeMap parse_map(const std::string& s) {
  if (s == "identity") return TimeMap::identity();
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string kind = s.substr(0, colon);
    const std::string arg = s.substr(colon + 1);
    try {
      if (kind == "power") return TimeMap::power(std::stoi(arg));
      if (kind == "arith") return TimeMap::arithmetic(std::stod(arg));
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError("--map must be identity, power:<d> or arith:<r>");
}

// "v:p,v:p,..." or "uniform:lo:hi"
Pmf parse_pmf(const std::string& s) {
  if (s.empty()) throw UsageError("--pmf is required for the iid process");
  try {
    if (s.rfind("uniform:", 0) == 0) {
      const auto parts = split(s.substr(8), ':');
      if (parts.size() != 2) throw UsageError("--pmf uniform:<lo>:<hi>");
      const std::int64_t lo = std::stoll(parts[0]), hi = std::stoll(parts[1]);
      if (hi < lo) throw UsageError("--pmf uniform needs lo <= hi");
      std::vector<std::int64_t> values;
      for (std::int64_t v = lo; v <= hi; ++v) values.push_back(v);
      return Pmf::uniform(values);
    }
    std::vector<Pmf::Entry> entries;
    for (const auto& item : split(s, ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw UsageError("--pmf entries are value:probability");
      entries.push_back({std::stoll(parts[0]), std::stod(parts[1])});
    }
    return Pmf(entries);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--pmf: ") + e.what());
  } catch (const std::out_of_range&) {
    throw UsageError("--pmf: value out of range");
  }
}

// ---------------------------------------------------------------- subcommands

Table run_moment(const Common& c, const MomentArgs& a) {
  if (c.samples < 1) throw UsageError("--samples must be >= 1");
  const ProcessKind process = parse_process(a.process);
  const TimeMap map = parse_map(a.map);
  const bool even = a.p >= 2.0 && std::floor(a.p) == a.p && static_cast<std::int64_t>(a.p) % 2 == 0;
  Table t{{"process", "map", "p", "size", "samples", "mean", "std_error", "seed", "nodes"}, {}};
  for (std::int64_t size : a.sizes) {
    if (size < 1) throw UsageError("--sizes must be positive");
    ExperimentSpec spec;
    spec.process = process;
    if (process == ProcessKind::iid) spec.pmf = parse_pmf(a.pmf);
    for (std::int64_t j = 1; j <= size; ++j) spec.index_set.push_back(j);
    spec.map = map;
    spec.p = a.p;
    spec.samples = c.samples;
    spec.seed = SeedSpec{c.seed, static_cast<std::uint64_t>(size)};
    spec.descriptor = a.process + "/" + a.map;
    const MomentEstimate e = even ? mc_even_moment(spec) : mc_general_moment(spec, a.nodes);
    t.add({Cell::text(a.process), Cell::text(a.map), Cell::real(a.p), Cell::integer(size),
           Cell::integer(static_cast<std::int64_t>(e.n_samples)), Cell::real(e.mean), Cell::real(e.std_error),
           Cell::integer(static_cast<std::int64_t>(c.seed)), Cell::integer(e.nodes)});
  }
  return t;
}

Table run_shell(const ShellArgs& a) {
  if (a.mode != "brute" && a.mode != "fast" && a.mode != "both") throw UsageError("--mode must be brute, fast or both");
  if (a.sup) {
    const bool with_bound = a.s > 0.0;
    Table t{{"d", "D", "sup_count", "ratio", "argmax_E", "grid_size"}, {}};
    if (with_bound) t.columns.insert(t.columns.end(), {"s", "level_bound"});
    for (double D : a.D) {
      const auto r = shell_sup_ratio(a.d, D, a.e_samples);
      std::vector<Cell> row{Cell::integer(std::int64_t{a.d}), Cell::real(D), Cell::integer(r.sup_count),
                            Cell::real(r.ratio), Cell::real(r.argmax_E),
                            Cell::integer(static_cast<std::int64_t>(r.grid_size))};
      if (with_bound) {
        row.push_back(Cell::real(a.s));
        row.push_back(Cell::real(power_level_shell_bound(a.d, D, a.s)));
      }
      t.add(std::move(row));
    }
    return t;
  }

  std::vector<ShellQuery> queries;
  for (double D : a.D) {
    if (!a.E.empty()) {
      for (double E : a.E) queries.push_back({a.d, E, D});
      continue;
    }
    const double lo = std::ceil(D), hi = std::floor(D * D);
    if (hi - lo + 1.0 > 1e6) throw GuardError("shell: more than 10^6 levels in [D, D^2]; pass --E or --sup");
    for (double E = lo; E <= hi; E += 1.0) queries.push_back({a.d, E, D});
  }
  for (const auto& q : queries) q.validate();

  const bool brute = a.mode != "fast", fast = a.mode != "brute";
  struct Counts {
    Count brute = 0, fast = 0;
  };
  const auto counts = parallel_map<Counts>(queries.size(), [&](std::size_t i) {
    Counts c;
    if (brute) c.brute = shell_count_brute(queries[i]).count;
    if (fast) c.fast = shell_count_fast(queries[i]).count;
    return c;
  });

  Table t;
  t.columns = {"d", "D", "E"};
  if (a.mode == "both")
    t.columns.insert(t.columns.end(), {"brute", "fast", "equal"});
  else
    t.columns.push_back("count");
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    std::vector<Cell> row{Cell::integer(std::int64_t{a.d}), Cell::real(queries[i].D), Cell::real(queries[i].E)};
    if (a.mode == "both") {
      const bool equal = counts[i].brute == counts[i].fast;
      mismatches += equal ? 0 : 1;
      row.insert(row.end(), {Cell::integer(counts[i].brute), Cell::integer(counts[i].fast), Cell::boolean(equal)});
    } else {
      row.push_back(Cell::integer(brute ? counts[i].brute : counts[i].fast));
    }
    t.add(std::move(row));
  }
  if (mismatches) throw CheckFailure("shell.fast_vs_brute");
  return t;
}

Table run_divisor(const DivisorArgs& a) {
  std::vector<double> xs = a.x;
  if (a.upto > 0) {
    if (a.upto > 10'000'000) throw GuardError("divisor: --upto above 10^7");
    xs.clear();
    for (std::int64_t x = 1; x <= a.upto; ++x) xs.push_back(static_cast<double>(x));
  }
  for (double x : xs)
    if (!(x >= 1.0)) throw UsageError("divisor: x must be >= 1");
  struct Row {
    Count D;
    double delta;
  };
  const auto rows = parallel_map<Row>(xs.size(), [&](std::size_t i) { return Row{divisor_summatory(xs[i]), divisor_error(xs[i])}; });
  Table t{{"x", "D", "delta", "delta_over_sqrt_x"}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i)
    t.add({Cell::real(xs[i]), Cell::integer(rows[i].D), Cell::real(rows[i].delta),
           Cell::real(rows[i].delta / std::sqrt(xs[i]))});
  return t;
}

Table run_repcount(const RepcountArgs& a) {
  if (a.n < 1 || a.d < 1 || a.M < 1) throw UsageError("repcount: n, d and M must be >= 1");
  const auto table = representation_count(a.n, a.d, a.M);
  if (a.summary) {
    Table t{{"n", "d", "M", "tuples", "solutions"}, {}};
    t.add({Cell::integer(std::int64_t{a.n}), Cell::integer(std::int64_t{a.d}), Cell::integer(a.M),
           Cell::integer(table.total()), Cell::integer(table.sum_of_squares())});
    return t;
  }
  Table t{{"m", "count"}, {}};
  for (const auto& [m, count] : table.entries()) t.add({Cell::integer(m), Cell::integer(count)});
  return t;
}

Table run_greenruzsa(const Common& c, const GreenRuzsaArgs& a) {
  if (a.base < 2) throw UsageError("greenruzsa: --base must be >= 2");
  const auto set = greenruzsa_generate({a.base, a.digits});
  if (a.list) {
    Table t{{"index", "value"}, {}};
    for (std::size_t i = 0; i < set.size(); ++i) t.add({Cell::integer(static_cast<std::int64_t>(i)), Cell::integer(set[i])});
    return t;
  }
  const std::int64_t top = std::max<std::int64_t>(set.back(), 1);
  struct Window {
    std::int64_t center, radius;
    std::size_t count;
    double bound;
  };
  const auto windows = parallel_map<Window>(c.samples, [&](std::size_t i) {
    Rng rng(SeedSpec{c.seed, 7}, i);
    Window w;
    w.center = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(top) + 1));
    // log-uniform radius in [1, top]
    w.radius = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::exp(rng.uniform_closed_open() * std::log(double(top) + 1.0))));
    w.count = sparsity_count(set, w.center, w.radius);
    w.bound = greenruzsa_sparsity_bound(a.base, w.radius);
    return w;
  });
  Table t{{"base", "digits", "center", "radius", "count", "bound", "holds"}, {}};
  std::size_t violations = 0;
  for (const auto& w : windows) {
    const bool holds = static_cast<double>(w.count) <= w.bound;
    violations += holds ? 0 : 1;
    t.add({Cell::integer(a.base), Cell::integer(std::int64_t{a.digits}), Cell::integer(w.center), Cell::integer(w.radius),
           Cell::integer(static_cast<std::int64_t>(w.count)), Cell::real(w.bound), Cell::boolean(holds)});
  }
  if (violations) throw CheckFailure("greenruzsa.sparsity");
  return t;
}

Table run_majorant(const Common& c, const MajorantArgs& a) {
  if (a.genericity) {
    ExperimentSpec process;
    process.process = parse_process(a.process);
    if (process.process == ProcessKind::iid) throw UsageError("majorant --genericity supports poisson and walk");
    std::vector<std::size_t> sizes;
    for (auto s : a.sizes) {
      if (s < 1) throw UsageError("--sizes must be positive");
      sizes.push_back(static_cast<std::size_t>(s));
    }
    const auto pts = genericity_experiment(process, sizes, a.p, a.epsilon, c.samples, a.restarts, SeedSpec{c.seed, 0});
    Table t{{"size", "samples", "p", "epsilon", "probability", "std_error", "max_ratio"}, {}};
    for (const auto& pt : pts)
      t.add({Cell::integer(static_cast<std::int64_t>(pt.size)), Cell::integer(static_cast<std::int64_t>(pt.samples)),
             Cell::real(a.p), Cell::real(a.epsilon), Cell::real(pt.probability), Cell::real(pt.std_error),
             Cell::real(pt.max_ratio)});
    return t;
  }
  if (a.freqs.empty()) throw UsageError("majorant: --freqs is required (or pass --genericity)");
  const bool even = a.p >= 2.0 && std::floor(a.p) == a.p && static_cast<std::int64_t>(a.p) % 2 == 0;
  const auto r = even ? majorant_ratio(a.freqs, static_cast<int>(a.p), a.restarts, SeedSpec{c.seed, 0})
                      : majorant_ratio_quadrature(a.freqs, a.p, a.restarts, SeedSpec{c.seed, 0});
  std::string phases;
  for (std::size_t i = 0; i < r.best_phases.size(); ++i) phases += (i ? " " : "") + format_double(r.best_phases[i]);
  Table t{{"p", "terms", "restarts", "base_moment", "best_moment", "ratio", "approximate", "phases"}, {}};
  t.add({Cell::real(a.p), Cell::integer(static_cast<std::int64_t>(a.freqs.size())), Cell::integer(std::int64_t{a.restarts}),
         Cell::real(r.base_moment), Cell::real(r.best_moment), Cell::real(r.ratio), Cell::boolean(r.approximate),
         Cell::text(phases)});
  return t;
}

Table run_verify(const Common& c) {
  if (!(c.tol > 0.0 && c.tol <= 1e-3)) throw UsageError("--tol must lie in (0, 1e-3]");
  const auto checks = run_verification(c.seed, c.tol);
  Table t{{"check", "cases", "failures", "min_slack", "passed"}, {}};
  std::vector<std::string> failed;
  for (const auto& s : checks) {
    t.add({Cell::text(s.id), Cell::integer(static_cast<std::int64_t>(s.cases)),
           Cell::integer(static_cast<std::int64_t>(s.failures)), Cell::real(s.min_slack), Cell::boolean(s.failures == 0)});
    if (s.failures) failed.push_back(s.id);
  }
  if (!failed.empty()) {
    std::string ids;
    for (const auto& id : failed) ids += (ids.empty() ? "" : ",") + id;
    throw CheckFailure(ids);
  }
  return t;
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

Table run_slope(const SlopeArgs& a) {
  if (a.in.empty()) throw UsageError("slope: --in is required");
  std::ifstream f(a.in);
  if (!f) throw UsageError("slope: cannot read " + a.in);
  std::string line;
  if (!std::getline(f, line)) throw UsageError("slope: empty input");
  const auto header = parse_csv_line(line);
  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw UsageError("slope: input has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = col(a.x_column), yi = col(a.y_column);
  std::vector<std::pair<double, double>> pts;
  while (std::getline(f, line)) {
    if (trim(line).empty()) continue;
    const auto cells = parse_csv_line(line);
    if (cells.size() != header.size()) throw UsageError("slope: ragged row in " + a.in);
    try {
      pts.emplace_back(std::stod(cells[xi]), std::stod(cells[yi]));
    } catch (const std::logic_error&) {
      throw UsageError("slope: non-numeric value in " + a.in);
    }
  }
  const auto fit = slope_fit(pts);
  Table t{{"points", "slope", "intercept", "residual"}, {}};
  t.add({Cell::integer(static_cast<std::int64_t>(pts.size())), Cell::real(fit.slope), Cell::real(fit.intercept),
         Cell::real(fit.residual)});
  return t;
}

// ---------------------------------------------------------------- driver

std::string seed_check(const std::string& s) {
  if (s.empty() || s[0] == '-') return "seed must be a nonnegative integer";
  return {};
}

int run(int argc, char** argv) {
  Common common;
  MomentArgs moment;
  ShellArgs shell;
  DivisorArgs divisor;
  RepcountArgs repcount;
  GreenRuzsaArgs gr;
  MajorantArgs majorant;
  SlopeArgs slope;

  CLI::App app{"Random exponential sums: moments, lattice counts, probability bounds and majorants", "expsum"};
  app.set_version_flag("--version", EXPSUM_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", common.seed, "master seed (env EXPSUM_SEED)")->check(CLI::Validator(seed_check, "UINT64"));
  app.add_option("--samples", common.samples, "Monte Carlo samples per point");
  app.add_option("--threads", common.threads, "worker threads, 0 = hardware (env EXPSUM_THREADS)");
  app.add_option("--out", common.out, "output file; a manifest is written next to it");
  app.add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", common.tol, "probability tolerance for truncated sums");
  app.add_option("--config", common.config, "key=value defaults (lowest precedence)");

  auto* sm = app.add_subcommand("moment", "Monte Carlo E||sum e(y X_t(j))||_p^p over A = {1..size}.\n"
                                          "columns: process,map,p,size,samples,mean,std_error,seed,nodes");
  sm->add_option("--process", moment.process, "poisson, walk or iid");
  sm->add_option("--map", moment.map, "identity, power:<d> or arith:<r> (t = j * (max A)^r)");
  sm->add_option("--p", moment.p, "moment order >= 1; even integers are evaluated exactly");
  sm->add_option("--sizes", moment.sizes, "comma-separated sizes of A")->delimiter(',');
  sm->add_option("--pmf", moment.pmf, "iid law: v:p,v:p,... or uniform:<lo>:<hi>");
  sm->add_option("--nodes", moment.nodes, "quadrature nodes for non-even p (0 = default rule)");

  auto* ss = app.add_subcommand("shell", "Lattice points with |k^d - j^d - E| < D.\n"
                                         "columns: d,D,E,count | d,D,E,brute,fast,equal (--mode both) | "
                                         "d,D,sup_count,ratio,argmax_E,grid_size[,s,level_bound] (--sup)");
  ss->add_option("--d", shell.d, "exponent >= 2");
  ss->add_option("--D", shell.D, "comma-separated half-widths")->delimiter(',');
  ss->add_option("--E", shell.E, "comma-separated levels (default: every integer in [D, D^2])")->delimiter(',');
  ss->add_option("--mode", shell.mode, "brute, fast or both")->check(CLI::IsMember({"brute", "fast", "both"}));
  ss->add_flag("--sup", shell.sup, "report the supremum over E in [D, D^2]");
  ss->add_option("--E-samples", shell.e_samples, "grid size for --sup");
  ss->add_option("--s", shell.s, "with --sup, also report the level bound at E = D^s");

  auto* sd = app.add_subcommand("divisor", "Divisor summatory function.\ncolumns: x,D,delta,delta_over_sqrt_x");
  sd->add_option("--x", divisor.x, "comma-separated arguments")->delimiter(',');
  sd->add_option("--upto", divisor.upto, "every integer 1..N instead of --x");

  auto* sr = app.add_subcommand("repcount", "Representations as sums of n d-th powers from [1, M].\n"
                                            "columns: m,count | n,d,M,tuples,solutions (--summary)");
  sr->add_option("--n", repcount.n, "number of summands");
  sr->add_option("--d", repcount.d, "power");
  sr->add_option("--M", repcount.M, "largest base");
  sr->add_flag("--summary", repcount.summary, "only the totals and the number of solutions");

  auto* sg = app.add_subcommand("greenruzsa", "Digit sets {0,1,3} in base D and their sparsity.\n"
                                              "columns: base,digits,center,radius,count,bound,holds | index,value (--list)");
  sg->add_option("--base", gr.base, "base D >= 2");
  sg->add_option("--digits", gr.digits, "number of digits k");
  sg->add_flag("--list", gr.list, "print the set instead of the sparsity scan (--samples windows)");

  auto* sj = app.add_subcommand("majorant", "Best unimodular coefficients against all-ones.\n"
                                            "columns: p,terms,restarts,base_moment,best_moment,ratio,approximate,phases | "
                                            "size,samples,p,epsilon,probability,std_error,max_ratio (--genericity)");
  sj->add_option("--freqs", majorant.freqs, "comma-separated frequencies")->delimiter(',');
  sj->add_option("--p", majorant.p, "norm exponent >= 1");
  sj->add_option("--restarts", majorant.restarts, "optimizer restarts");
  sj->add_flag("--genericity", majorant.genericity, "run the size sweep on random frequency sets");
  sj->add_option("--process", majorant.process, "poisson or walk (--genericity)");
  sj->add_option("--sizes", majorant.sizes, "sizes for --genericity")->delimiter(',');
  sj->add_option("--epsilon", majorant.epsilon, "exceedance threshold size^epsilon");

  auto* sv = app.add_subcommand("verify", "Bound grids and oracle cross-checks; exit 3 on any failure.\n"
                                          "columns: check,cases,failures,min_slack,passed");

  auto* sl = app.add_subcommand("slope", "Least-squares log-log slope over a moment CSV.\n"
                                         "columns: points,slope,intercept,residual");
  sl->add_option("--in", slope.in, "CSV written by `moment`");
  sl->add_option("--x", slope.x_column, "x column");
  sl->add_option("--y", slope.y_column, "y column");

  RunManifest manifest;
  manifest.started_at = utc_now();
  for (int i = 0; i < argc; ++i) manifest.argv.emplace_back(argv[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    apply_layers(app, sub, common.config);
    const Format format = parse_format(common.format);
    set_worker_count(common.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : common.threads);

    Table table;
    if (sub == sm) table = run_moment(common, moment);
    else if (sub == ss) table = run_shell(shell);
    else if (sub == sd) table = run_divisor(divisor);
    else if (sub == sr) table = run_repcount(repcount);
    else if (sub == sg) table = run_greenruzsa(common, gr);
    else if (sub == sj) table = run_majorant(common, majorant);
    else if (sub == sv) table = run_verify(common);
    else table = run_slope(slope);

    const std::string body = render(table, format);
    if (common.out.empty()) {
      std::cout << body;
    } else {
      manifest.subcommand = sub->get_name();
      manifest.seed = common.seed;
      manifest.version = EXPSUM_VERSION;
      manifest.format = common.format;
      manifest.digest = digest(body);
      manifest.finished_at = utc_now();
      write_output(common.out, body, manifest);
    }
    return kExitOk;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kExitGuard;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace
}  // namespace expsum_cli

int main(int argc, char** argv) { return expsum_cli::run(argc, argv); }
