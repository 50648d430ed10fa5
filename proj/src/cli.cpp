#include "qfe/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "qfe/asymptotics.hpp"
#include "qfe/extremal.hpp"
#include "qfe/filters.hpp"
#include "qfe/mc.hpp"
#include "qfe/risk.hpp"

namespace qfe::cli {

namespace {

using nlohmann::json;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DomainError("config key '" + key + "': not a number: " + text);
  }
  if (used != t.size()) throw DomainError("config key '" + key + "': not a number: " + text);
  return value;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("config key '" + key + "': not a nonnegative integer: " + text);
  }
  try {
    return std::stoull(t);
  } catch (const std::exception&) {
    throw DomainError("config key '" + key + "': out of range: " + text);
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string word;
    while (words >> word) out.push_back(parse_number(key, word));
  }
  return out;
}

EllipsoidKind parse_kind(const std::string& text) {
  const std::string t = trim(text);
  if (t == "polynomial" || t == "poly") return EllipsoidKind::Polynomial;
  if (t == "exponential" || t == "exp") return EllipsoidKind::Exponential;
  throw DomainError("unknown class '" + text + "' (expected polynomial or exponential)");
}

OutputFormat parse_format(const std::string& text) {
  const std::string t = trim(text);
  if (t == "csv") return OutputFormat::Csv;
  if (t == "json") return OutputFormat::Json;
  throw DomainError("unknown format '" + text + "' (expected csv or json)");
}

void apply_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "class") c.kind = parse_kind(value);
  else if (key == "alpha") c.alpha = parse_number(key, value);
  else if (key == "beta") c.beta = parse_number(key, value);
  else if (key == "r") c.r = parse_number(key, value);
  else if (key == "L" || key == "radius") c.radius = parse_number(key, value);
  else if (key == "gamma") c.gamma = parse_number(key, value);
  else if (key == "epsilon") c.epsilons = parse_list(key, value);
  else if (key == "replicates") c.replicates = parse_unsigned(key, value);
  else if (key == "seed") c.seed = parse_unsigned(key, value);
  else if (key == "threads") c.threads = static_cast<unsigned>(parse_unsigned(key, value));
  else if (key == "out") c.out = trim(value);
  else if (key == "format") c.format = parse_format(value);
  else if (key == "tolerance") c.tolerance = parse_number(key, value);
  else if (key == "lower") c.lower = parse_number(key, value);
  else if (key == "upper") c.upper = parse_number(key, value);
  else if (key == "signal") c.signal_path = trim(value);
  else if (key == "lemma") c.lemma = trim(value);
  else if (key == "lemma_a") c.lemma_a = parse_number(key, value);
  else if (key == "lemma_b") c.lemma_b = parse_number(key, value);
  else if (key == "lemma_r") c.lemma_r = parse_number(key, value);
  else if (key == "lemma_s") c.lemma_s = parse_number(key, value);
  else if (key == "lemma_n") c.lemma_n = parse_list(key, value);
  else if (key == "lemma_v") c.lemma_v = parse_list(key, value);
  else throw DomainError("unknown config key '" + key + "'");
}

const char* kind_name(EllipsoidKind kind) {
  return kind == EllipsoidKind::Polynomial ? "polynomial" : "exponential";
}

json params_json(const ExperimentConfig& c, const std::string& command) {
  json p;
  if (command == "lemma-check") {
    p["lemma"] = c.lemma;
    p["a"] = c.lemma_a;
    p["b"] = c.lemma_b;
    p["r"] = c.lemma_r;
    p["s"] = c.lemma_s;
    p["n"] = c.lemma_n;
    p["v"] = c.lemma_v;
    return p;
  }
  p["class"] = kind_name(c.kind);
  if (c.kind == EllipsoidKind::Polynomial) {
    p["alpha"] = c.alpha;
  } else {
    p["beta"] = c.beta;
    p["r"] = c.r;
  }
  p["L"] = c.radius;
  p["gamma"] = c.gamma;
  p["epsilon"] = c.epsilons;
  if (command == "mc-validate") {
    p["replicates"] = c.replicates;
    p["seed"] = c.seed;
    if (!c.signal_path.empty()) p["signal"] = c.signal_path;
  }
  return p;
}

// Everything about one epsilon that several commands need.
struct WorstCase {
  double epsilon = 0.0;
  double window = 0.0;
  bool clamped = false;
  FilterSeq filter = FilterSeq::zero();
  ExtremalSignal extremal;
  RiskDecomposition risk;
};

WorstCase worst_case(const ExperimentConfig& c, double epsilon) {
  const Ellipsoid ell = c.ellipsoid();
  const WindowSolution w = optimal_window(ell, c.gamma, epsilon);
  WorstCase out;
  out.epsilon = epsilon;
  out.window = w.window;
  out.clamped = w.clamped;
  out.filter = optimal_filter(ell, w.window);
  out.extremal = least_favorable_at(ell, c.gamma, epsilon, w.window);
  out.risk = exact_risk(out.extremal.signal, out.filter, Problem(c.gamma, epsilon));
  return out;
}

std::vector<WorstCase> sweep(const ExperimentConfig& c) {
  std::vector<WorstCase> rows(c.epsilons.size());
  parallel_for(rows.size(), c.threads,
               [&](std::size_t k) { rows[k] = worst_case(c, c.epsilons[k]); });
  return rows;
}

double theoretical_bound(const ExperimentConfig& c, double epsilon) {
  if (c.kind == EllipsoidKind::Polynomial) return nonparam_rate(c.alpha, c.gamma, c.radius, epsilon);
  return second_order_bound_exp(c.beta, c.r, c.gamma, epsilon);
}

bool tracks_total(const ExperimentConfig& c) {
  return c.kind == EllipsoidKind::Polynomial && !is_regular(c.alpha, c.gamma);
}

CommandResult risk_curve(const ExperimentConfig& c) {
  CommandResult res;
  res.table.columns = {"epsilon", "window", "a0", "a1", "a2", "a3",
                       "total", "second_order", "bound", "ratio"};
  const bool use_total = tracks_total(c);
  bool finite = true;
  json ratios = json::array();
  for (const WorstCase& w : sweep(c)) {
    const double bound = theoretical_bound(c, w.epsilon);
    const double ratio = (use_total ? w.risk.total : w.risk.second_order) / bound;
    finite = finite && std::isfinite(ratio);
    ratios.push_back(ratio);
    res.table.rows.push_back({w.epsilon, w.window, w.risk.a0, w.risk.a1, w.risk.a2, w.risk.a3,
                              w.risk.total, w.risk.second_order, bound, ratio});
  }
  res.pass = finite;
  res.metrics["ratio_of"] = use_total ? "total" : "second_order";
  res.metrics["ratios"] = ratios;
  return res;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

CommandResult rate_check(const ExperimentConfig& c) {
  CommandResult res;
  const bool regular = is_regular(c.alpha, c.gamma);
  const std::string tracked = regular ? "total-a2" : "a0+a1";
  res.table.columns = {"epsilon", "window", tracked};
  std::vector<double> xs;
  std::vector<double> ys;
  for (const WorstCase& w : sweep(c)) {
    const double value = regular ? w.risk.second_order : w.risk.bias_noise();
    if (!(value > 0.0)) {
      throw NumericalError("rate-check: tracked risk " + format_double(value) + " at epsilon " +
                           format_double(w.epsilon) + " is not positive; use smaller epsilon");
    }
    xs.push_back(std::log(w.epsilon));
    ys.push_back(std::log(value));
    res.table.rows.push_back({w.epsilon, w.window, value});
  }
  const double slope = least_squares_slope(xs, ys);
  const double exponent = rate_exponent(c.alpha, c.gamma);
  const double deviation = std::fabs(slope - exponent) / exponent;
  const double tol = c.tolerance.value_or(0.05);
  res.pass = deviation <= tol;
  res.metrics["regime"] = regular ? "regular" : "irregular";
  res.metrics["tracked"] = tracked;
  res.metrics["slope"] = slope;
  res.metrics["theoretical_exponent"] = exponent;
  res.metrics["relative_deviation"] = deviation;
  res.metrics["tolerance"] = tol;
  return res;
}

CommandResult constant_check(const ExperimentConfig& c) {
  CommandResult res;
  res.table.columns = {"epsilon", "window", "a0_plus_a1", "bound", "ratio"};
  const bool poly = c.kind == EllipsoidKind::Polynomial;
  const double lo = c.lower.value_or(poly ? 0.9 : 0.7);
  const double hi = c.upper.value_or(poly ? 1.1 : 1.3);
  double deepest = std::numeric_limits<double>::infinity();
  double deepest_ratio = 0.0;
  for (const WorstCase& w : sweep(c)) {
    const double bound = theoretical_bound(c, w.epsilon);
    const double ratio = w.risk.bias_noise() / bound;
    if (w.epsilon < deepest) {
      deepest = w.epsilon;
      deepest_ratio = ratio;
    }
    res.table.rows.push_back({w.epsilon, w.window, w.risk.bias_noise(), bound, ratio});
  }
  res.pass = deepest_ratio >= lo && deepest_ratio <= hi;
  res.metrics["epsilon"] = deepest;
  res.metrics["ratio"] = deepest_ratio;
  res.metrics["lower"] = lo;
  res.metrics["upper"] = hi;
  if (poly) res.metrics["constant_C"] = constant_C(c.alpha, c.gamma, c.radius);
  return res;
}

CommandResult lemma_check(const ExperimentConfig& c) {
  CommandResult res;
  res.table.columns = {"lemma", "a", "b", "shape", "point", "log_exact", "log_asymptote", "ratio"};
  const double tol = c.tolerance.value_or(0.05);
  bool pass = true;
  json last = json::object();
  auto run_curve = [&](const std::string& name, double shape, const std::vector<double>& points) {
    double final_ratio = 0.0;
    for (double p : points) {
      LogScalar exact;
      LogScalar asym;
      if (name == "sum") {
        const auto n = static_cast<std::uint64_t>(p);
        exact = lemma_sum_exact(c.lemma_a, c.lemma_b, shape, n);
        asym = lemma_sum_asymptote(c.lemma_a, c.lemma_b, shape, n);
      } else {
        exact = lemma_integral_exact(c.lemma_a, c.lemma_b, shape, p);
        asym = lemma_integral_asymptote(c.lemma_a, c.lemma_b, shape, p);
      }
      final_ratio = ratio(exact, asym);
      res.table.rows.push_back({name, c.lemma_a, c.lemma_b, shape, p, exact.log_value,
                                asym.log_value, final_ratio});
    }
    last[name] = final_ratio;
    pass = pass && std::fabs(final_ratio - 1.0) <= tol;
  };
  if (c.lemma == "sum" || c.lemma == "both") run_curve("sum", c.lemma_r, c.lemma_n);
  if (c.lemma == "integral" || c.lemma == "both") run_curve("integral", c.lemma_s, c.lemma_v);
  res.pass = pass;
  res.metrics["final_ratio"] = last;
  res.metrics["tolerance"] = tol;
  return res;
}

CommandResult mc_validate(const ExperimentConfig& c) {
  CommandResult res;
  res.table.columns = {"epsilon", "window", "exact", "mc_mean", "std_error", "z", "within_4se"};
  const Ellipsoid ell = c.ellipsoid();
  std::optional<Signal> fixed;
  if (!c.signal_path.empty()) fixed = load_signal_csv(c.signal_path);
  bool pass = true;
  double worst_z = 0.0;
  for (double eps : c.epsilons) {
    const double window = optimal_window(ell, c.gamma, eps).window;
    const FilterSeq filter = optimal_filter(ell, window);
    const Signal signal = fixed ? *fixed : least_favorable_at(ell, c.gamma, eps, window).signal;
    const Problem problem(c.gamma, eps);
    const double exact = exact_risk(signal, filter, problem).total;
    const McResult mc = mc_risk(signal, filter, problem, c.replicates, c.seed, c.threads);
    const double diff = mc.mean - exact;
    const double z = mc.std_error > 0.0 ? diff / mc.std_error : (diff == 0.0 ? 0.0 : INFINITY);
    const bool ok = std::fabs(diff) <= 4.0 * mc.std_error;
    pass = pass && ok;
    worst_z = std::max(worst_z, std::fabs(z));
    res.table.rows.push_back({eps, window, exact, mc.mean, mc.std_error, z,
                              static_cast<std::int64_t>(ok)});
  }
  res.pass = pass;
  res.metrics["max_abs_z"] = worst_z;
  res.metrics["threshold_se"] = 4.0;
  return res;
}

CommandResult grid_check(const ExperimentConfig& c) {
  CommandResult res;
  res.table.columns = {"epsilon",     "formula_window", "formula_grid_window", "best_window",
                       "formula_risk", "best_risk",     "ratio"};
  const Ellipsoid ell = c.ellipsoid();
  const double tol = c.tolerance.value_or(c.kind == EllipsoidKind::Polynomial ? 1.05 : 1.10);
  std::vector<GridSearchResult> found(c.epsilons.size());
  parallel_for(found.size(), c.threads, [&](std::size_t k) {
    const double eps = c.epsilons[k];
    const double w = optimal_window(ell, c.gamma, eps).window;
    found[k] = grid_search_window(ell, c.gamma, eps, default_window_range(w));
  });
  bool pass = true;
  json ratios = json::array();
  for (std::size_t k = 0; k < found.size(); ++k) {
    const GridSearchResult& g = found[k];
    pass = pass && g.ratio <= tol;
    ratios.push_back(g.ratio);
    res.table.rows.push_back({c.epsilons[k], g.formula_window,
                              static_cast<std::int64_t>(g.formula_grid_window),
                              static_cast<std::int64_t>(g.best_window), g.formula_risk,
                              g.best_risk, g.ratio});
  }
  res.pass = pass;
  res.metrics["ratios"] = ratios;
  res.metrics["tolerance"] = tol;
  return res;
}

CommandResult dump_extremal(const ExperimentConfig& c) {
  CommandResult res;
  res.table.columns = {"index", "value"};
  const Ellipsoid ell = c.ellipsoid();
  const double eps = c.epsilons.front();
  const ExtremalSignal x = least_favorable(ell, c.gamma, eps);
  for (std::size_t i = 1; i <= x.signal.support(); ++i) {
    res.table.rows.push_back({static_cast<std::int64_t>(i), x.signal.at(i)});
  }
  res.metrics["epsilon"] = eps;
  res.metrics["window"] = x.window;
  res.metrics["raw_norm"] = x.raw_norm;
  res.metrics["rescaled"] = x.rescaled;
  res.metrics["support"] = x.signal.support();
  res.metrics["ellipsoid_norm"] = ellipsoid_norm(x.signal, ell).value;
  return res;
}

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return json(format_double(*d));
    return json(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return json(*i);
  return json(std::get<std::string>(cell));
}

}  // namespace

Ellipsoid ExperimentConfig::ellipsoid() const {
  if (kind == EllipsoidKind::Polynomial) return Ellipsoid::polynomial(alpha, radius);
  return Ellipsoid::exponential(beta, r, radius);
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path,
                       const std::string& command) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw DomainError("config file: " + std::string(e.what()));
  }
  // Top-level keys first, then the section named after the command.
  for (const auto& [key, node] : tree) {
    if (node.empty()) apply_key(config, key, node.data());
  }
  for (const auto& [section, node] : tree) {
    if (node.empty()) continue;
    if (std::find(command_names().begin(), command_names().end(), section) ==
        command_names().end()) {
      throw DomainError("config file: unknown section [" + section + "]");
    }
    if (section != command) continue;
    for (const auto& [key, leaf] : node) apply_key(config, key, leaf.data());
  }
}

void validate(const ExperimentConfig& c, const std::string& command) {
  require(std::find(command_names().begin(), command_names().end(), command) !=
              command_names().end(),
          "unknown command '" + command + "'");
  require(c.threads >= 1, "threads must be >= 1");
  if (command == "lemma-check") {
    require(c.lemma == "sum" || c.lemma == "integral" || c.lemma == "both",
            "lemma must be sum, integral or both");
    if (c.lemma != "integral") {
      require(!c.lemma_n.empty(), "lemma_n must list at least one N");
      for (double n : c.lemma_n) {
        require(n >= 1.0 && n == std::floor(n) && n <= 1e9, "lemma_n values must be integers in [1, 1e9]");
      }
    }
    if (c.lemma != "sum") {
      require(!c.lemma_v.empty(), "lemma_v must list at least one v");
      require(c.lemma_a > 0.0, "integral lemma requires lemma_a > 0");
    }
    return;
  }
  require(!c.epsilons.empty(), "epsilon list must not be empty");
  for (double e : c.epsilons) {
    require(std::isfinite(e) && e > 0.0 && e < 1.0, "each epsilon must lie in (0, 1)");
  }
  (void)c.ellipsoid();
  require(std::isfinite(c.gamma) && c.gamma >= 0.0, "gamma must be >= 0");
  if (command == "mc-validate") require(c.replicates >= 100, "replicates must be >= 100");
  if (command == "rate-check") {
    require(c.kind == EllipsoidKind::Polynomial, "rate-check needs the polynomial class");
    require(c.epsilons.size() >= 4, "rate-check needs at least 4 epsilon values");
    const auto [lo, hi] = std::minmax_element(c.epsilons.begin(), c.epsilons.end());
    require(std::log10(*hi / *lo) >= 3.0 - 1e-12,
            "rate-check needs epsilon values spanning at least 3 decades");
  }
}

CommandResult run_command(const std::string& command, const ExperimentConfig& config) {
  validate(config, command);
  CommandResult res;
  if (command == "risk-curve") res = risk_curve(config);
  else if (command == "rate-check") res = rate_check(config);
  else if (command == "constant-check") res = constant_check(config);
  else if (command == "lemma-check") res = lemma_check(config);
  else if (command == "mc-validate") res = mc_validate(config);
  else if (command == "grid-check") res = grid_check(config);
  else res = dump_extremal(config);
  res.command = command;
  res.params = params_json(config, command);
  return res;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) out += ',';
    out += table.columns[k];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += cell_text(row[k]);
    }
    out += '\n';
  }
  return out;
}

json summary_json(const CommandResult& result) {
  return json{{"command", result.command},
              {"params", result.params},
              {"pass", result.pass},
              {"metrics", result.metrics.is_null() ? json::object() : result.metrics}};
}

json document_json(const CommandResult& result) {
  json doc = summary_json(result);
  doc["columns"] = result.table.columns;
  json rows = json::array();
  for (const auto& row : result.table.rows) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

void write_result(const CommandResult& result, const ExperimentConfig& config,
                  std::ostream& stdout_sink) {
  auto write_file = [](const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + path);
    f << text;
  };
  if (config.format == OutputFormat::Json) {
    const std::string text = document_json(result).dump(2) + "\n";
    if (config.out.empty()) stdout_sink << text;
    else write_file(config.out, text);
    return;
  }
  const std::string table = render_csv(result.table);
  const std::string summary = summary_json(result).dump() + "\n";
  if (config.out.empty()) {
    stdout_sink << table << summary;
  } else {
    write_file(config.out, table);
    write_file(config.out + ".json", summary);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic functional estimation in Gaussian inverse problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string kind;
  double alpha = 0, beta = 0, r = 0, radius = 0, gamma = 0;
  std::vector<double> epsilons;
  std::size_t replicates = 0;
  double tolerance = 0, lower = 0, upper = 0;
  std::string signal;
  std::string lemma;
  double lemma_a = 0, lemma_b = 0, lemma_r = 0, lemma_s = 0;
  std::vector<double> lemma_n, lemma_v;

  auto* o_config = app.add_option("--config", config_path, "INI config file");
  auto* o_out = app.add_option("--out", out_path, "Output file (default: stdout)");
  auto* o_format = app.add_option("--format", format, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
  auto* o_seed = app.add_option("--seed", seed, std::string("RNG seed (default: $") + kSeedEnvVar + ")");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* o_kind = app.add_option("--class", kind, "polynomial or exponential");
  auto* o_alpha = app.add_option("--alpha", alpha);
  auto* o_beta = app.add_option("--beta", beta);
  auto* o_r = app.add_option("--r", r, "Exponential class shape r in (0, 2]");
  auto* o_radius = app.add_option("-L,--radius", radius, "Ellipsoid radius L");
  auto* o_gamma = app.add_option("--gamma", gamma);
  auto* o_eps = app.add_option("--epsilon", epsilons, "Noise levels, comma separated")->delimiter(',');
  auto* o_reps = app.add_option("--replicates", replicates);
  auto* o_tol = app.add_option("--tolerance", tolerance);
  auto* o_lower = app.add_option("--lower", lower);
  auto* o_upper = app.add_option("--upper", upper);
  auto* o_signal = app.add_option("--signal", signal, "One-column CSV signal (mc-validate)");
  auto* o_lemma = app.add_option("--lemma", lemma, "sum, integral or both");
  auto* o_la = app.add_option("--lemma-a", lemma_a);
  auto* o_lb = app.add_option("--lemma-b", lemma_b);
  auto* o_lr = app.add_option("--lemma-r", lemma_r);
  auto* o_ls = app.add_option("--lemma-s", lemma_s);
  auto* o_ln = app.add_option("--lemma-n", lemma_n)->delimiter(',');
  auto* o_lv = app.add_option("--lemma-v", lemma_v)->delimiter(',');

  for (const auto& name : command_names()) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig c;
    if (*o_config) apply_config_file(c, config_path, command);
    if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && !*o_seed) {
      c.seed = parse_unsigned(kSeedEnvVar, env);
    }
    if (*o_out) c.out = out_path;
    if (*o_format) c.format = parse_format(format);
    if (*o_seed) c.seed = seed;
    if (*o_threads) c.threads = threads;
    if (*o_kind) c.kind = parse_kind(kind);
    if (*o_alpha) c.alpha = alpha;
    if (*o_beta) c.beta = beta;
    if (*o_r) c.r = r;
    if (*o_radius) c.radius = radius;
    if (*o_gamma) c.gamma = gamma;
    if (*o_eps) c.epsilons = epsilons;
    if (*o_reps) c.replicates = replicates;
    if (*o_tol) c.tolerance = tolerance;
    if (*o_lower) c.lower = lower;
    if (*o_upper) c.upper = upper;
    if (*o_signal) c.signal_path = signal;
    if (*o_lemma) c.lemma = lemma;
    if (*o_la) c.lemma_a = lemma_a;
    if (*o_lb) c.lemma_b = lemma_b;
    if (*o_lr) c.lemma_r = lemma_r;
    if (*o_ls) c.lemma_s = lemma_s;
    if (*o_ln) c.lemma_n = lemma_n;
    if (*o_lv) c.lemma_v = lemma_v;

    const CommandResult result = run_command(command, c);
    write_result(result, c, out);
    return result.pass ? 0 : 1;
  } catch (const DomainError& e) {
    err << "qfe " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "qfe " << command << ": numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qfe::cli
