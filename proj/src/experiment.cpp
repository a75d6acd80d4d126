#include "lsquad/experiment.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lsquad/diagnostics.hpp"
#include "lsquad/dop.hpp"
#include "lsquad/errors.hpp"
#include "lsquad/expr.hpp"
#include "lsquad/moments.hpp"
#include "lsquad/reference.hpp"
#include "lsquad/solvers.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lsquad {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC-4180-style quoting, applied only when the field needs it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

node_set make_nodes(const interval& iv, int n, node_mode mode, std::uint64_t seed) {
  if (n == 1 && mode == node_mode::equidistant) return node_set(iv, {iv.midpoint()});
  return mode == node_mode::equidistant ? make_equidistant(iv, n)
                                        : make_scattered(iv, n, seed);
}

quad_rule build_rule(method meth, const dop_basis& basis, const moment_vector& m,
                     const weight_fn& w, exec ex) {
  switch (meth) {
    case method::ls:
      return ls_weights(basis, m, ex);
    case method::nnls:
      return nnls_weights(basis, m, w);
    case method::trapezoid: {
      quad_rule rule = trapezoid_rule(basis.nodeset(), w);
      rule.exactness_residual = exactness_residual(basis, m, rule.weights);
      return rule;
    }
  }
  throw std::invalid_argument("unknown method");
}

std::string run_weights(const experiment_config& cfg, exec ex);
std::string run_sweep(const experiment_config& cfg, exec ex);
std::string run_ratio(const experiment_config& cfg, exec ex);

}  // namespace

const char* command_name(command_kind c) {
  switch (c) {
    case command_kind::weights:
      return "weights";
    case command_kind::sweep:
      return "sweep";
    case command_kind::ratio:
      return "ratio";
  }
  return "?";
}

const char* node_mode_name(node_mode m) {
  return m == node_mode::equidistant ? "eq" : "sc";
}

const char* measure_name(measure_kind m) {
  switch (m) {
    case measure_kind::stability:
      return "stability";
    case measure_kind::sign:
      return "sign";
    case measure_kind::exactness:
      return "exactness";
    case measure_kind::accuracy:
      return "accuracy";
  }
  return "?";
}

command_kind parse_command(const std::string& s) {
  if (s == "weights") return command_kind::weights;
  if (s == "sweep") return command_kind::sweep;
  if (s == "ratio") return command_kind::ratio;
  throw std::invalid_argument("unknown command '" + s + "'");
}

node_mode parse_node_mode(const std::string& s) {
  if (s == "eq") return node_mode::equidistant;
  if (s == "sc") return node_mode::scattered;
  throw std::invalid_argument("unknown node mode '" + s + "' (expected eq or sc)");
}

measure_kind parse_measure(const std::string& s) {
  if (s == "stability") return measure_kind::stability;
  if (s == "sign") return measure_kind::sign;
  if (s == "exactness") return measure_kind::exactness;
  if (s == "accuracy") return measure_kind::accuracy;
  throw std::invalid_argument("unknown measure '" + s + "'");
}

method parse_method(const std::string& s) {
  if (s == "ls") return method::ls;
  if (s == "nnls") return method::nnls;
  if (s == "trap") return method::trapezoid;
  throw std::invalid_argument("unknown method '" + s + "' (expected ls, nnls or trap)");
}

void parse_int_range(const std::string& s, int& from, int& to, int& step) {
  int a = 0, b = 0, c = 1;
  char extra = 0;
  const int got = std::sscanf(s.c_str(), "%d:%d:%d%c", &a, &b, &c, &extra);
  if (got != 2 && got != 3)
    throw std::invalid_argument("range '" + s + "' is not from:to or from:to:step");
  from = a;
  to = b;
  step = got == 3 ? c : 1;
}

interval parse_interval(const std::string& s) {
  double a = 0.0, b = 0.0;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &a, &b, &extra) != 2)
    throw std::invalid_argument("interval '" + s + "' is not a,b");
  return {a, b};
}

void validate(const experiment_config& cfg) {
  resolve_weight(cfg.weight).validate_on(cfg.iv);
  if (cfg.j < 1) throw std::invalid_argument("J must be >= 1");
  if (cfg.d < 0) throw std::invalid_argument("d must be >= 0");

  switch (cfg.command) {
    case command_kind::weights:
      if (!cfg.has_n) throw std::invalid_argument("weights requires --N");
      if (cfg.n <= cfg.d)
        throw std::invalid_argument("weights requires N > d (got N = " +
                                    std::to_string(cfg.n) + ", d = " +
                                    std::to_string(cfg.d) + ")");
      break;
    case command_kind::sweep:
      if (cfg.has_n_range == cfg.has_d_range)
        throw std::invalid_argument("sweep requires exactly one of --N-range and --d-range");
      if (cfg.has_n_range && (cfg.n_from < 1 || cfg.n_to < cfg.n_from || cfg.n_step < 1))
        throw std::invalid_argument("sweep N-range must satisfy 1 <= from <= to, step >= 1");
      if (cfg.has_d_range && (cfg.d_from < 0 || cfg.d_to < cfg.d_from))
        throw std::invalid_argument("sweep d-range must satisfy 0 <= from <= to");
      break;
    case command_kind::ratio:
      if (cfg.meth == method::trapezoid)
        throw std::invalid_argument("ratio requires method ls or nnls");
      if (!cfg.has_d_range)
        throw std::invalid_argument("ratio requires --d-range");
      if (cfg.d_from < 1 || cfg.d_to > 40 || cfg.d_to < cfg.d_from)
        throw std::invalid_argument("ratio d-range must lie within 1..40");
      if (cfg.confirm_window < 0)
        throw std::invalid_argument("confirm window must be >= 0");
      break;
  }
}

std::string canonical_header(const experiment_config& cfg) {
  std::string h;
  const auto kv = [&h](const char* key, const std::string& value) {
    h += "# ";
    h += key;
    h += '=';
    h += value;
    h += '\n';
  };
  kv("command", command_name(cfg.command));
  kv("weight", cfg.weight);
  kv("interval", g17(cfg.iv.a) + "," + g17(cfg.iv.b));
  const bool d_scaling = cfg.command != command_kind::weights && cfg.has_d_range;
  if (d_scaling)
    kv("d_range", std::to_string(cfg.d_from) + ":" + std::to_string(cfg.d_to));
  else
    kv("d", std::to_string(cfg.d));
  if (cfg.command == command_kind::weights) kv("N", std::to_string(cfg.n));
  if (cfg.command == command_kind::sweep && cfg.has_n_range)
    kv("N_range", std::to_string(cfg.n_from) + ":" + std::to_string(cfg.n_to) + ":" +
                      std::to_string(cfg.n_step));
  if (cfg.command != command_kind::ratio) {
    kv("nodes", node_mode_name(cfg.nodes));
    kv("seed", std::to_string(cfg.seed));
  }
  kv("J", std::to_string(cfg.j));
  kv("method", method_name(cfg.meth));
  if (cfg.command == command_kind::sweep) kv("measure", measure_name(cfg.measure));
  if (cfg.command == command_kind::ratio)
    kv("confirm_window", std::to_string(cfg.confirm_window));
  return h;
}

std::string run_experiment(const experiment_config& cfg, exec ex) {
  validate(cfg);
  switch (cfg.command) {
    case command_kind::weights:
      return run_weights(cfg, ex);
    case command_kind::sweep:
      return run_sweep(cfg, ex);
    case command_kind::ratio:
      return run_ratio(cfg, ex);
  }
  throw std::invalid_argument("unknown command");
}

namespace {

std::string run_weights(const experiment_config& cfg, exec ex) {
  const weight_fn w = resolve_weight(cfg.weight);
  const node_set nodes = make_nodes(cfg.iv, cfg.n, cfg.nodes, cfg.seed);
  const dop_basis basis = build_dop_basis(nodes, cfg.d, ex);
  const moment_vector m = compute_moments(basis, w, cfg.j, ex);
  const quad_rule rule = build_rule(cfg.meth, basis, m, w, ex);

  std::string out = canonical_header(cfg);
  out += "# K_omega=" + g17(k_omega(w, cfg.iv, 3000)) + "\n";
  out += "# kappa=" + g17(kappa(rule.weights)) + "\n";
  out += "# S_omega=" + g17(sign_consistency_measure(rule, w)) + "\n";
  out += "# residual=" + g17(rule.exactness_residual.value()) + "\n";
  out += "node,weight\n";
  for (int i = 0; i < nodes.size(); ++i)
    out += g17(nodes.nodes[static_cast<std::size_t>(i)]) + "," +
           g17(rule.weights[static_cast<std::size_t>(i)]) + "\n";
  return out;
}

// One sweep grid point. For accuracy sweeps every method contributes a row;
// otherwise only the configured one does.
std::vector<std::string> sweep_rows(const experiment_config& cfg, int d, int n, exec ex) {
  const weight_fn w = resolve_weight(cfg.weight);
  std::vector<method> methods;
  if (cfg.measure == measure_kind::accuracy)
    methods = {method::ls, method::nnls, method::trapezoid};
  else
    methods = {cfg.meth};

  std::vector<std::string> rows;
  std::optional<dop_basis> basis;
  std::optional<moment_vector> moments;
  std::string build_error;
  try {
    const node_set nodes = make_nodes(cfg.iv, n, cfg.nodes, cfg.seed);
    basis.emplace(build_dop_basis(nodes, d, ex));
    moments.emplace(compute_moments(*basis, w, cfg.j, ex));
  } catch (const std::exception& e) {
    build_error = e.what();
  }

  for (method meth : methods) {
    const std::string prefix =
        std::to_string(d) + "," + std::to_string(n) + "," + method_name(meth) + ",";
    // Columns: kappa, K_omega, kappa_minus_K, S_omega, residual, error_absx3,
    // error_expx, error.
    std::string kap, komega, diff, somega, resid, e1, e2, err;
    if (!build_error.empty()) {
      err = build_error;
    } else {
      try {
        const quad_rule rule = build_rule(meth, *basis, *moments, w, ex);
        switch (cfg.measure) {
          case measure_kind::stability: {
            const stability_report rep = stability(rule, w);
            kap = g17(rep.kappa);
            komega = g17(rep.k_omega);
            diff = g17(rep.difference);
            break;
          }
          case measure_kind::sign:
            somega = g17(sign_consistency_measure(rule, w));
            break;
          case measure_kind::exactness:
            resid = g17(rule.exactness_residual.value());
            break;
          case measure_kind::accuracy: {
            const test_fn f1 = test_fn::abs_x3();
            const test_fn f2 = test_fn::exp_x();
            e1 = g17(integration_error(rule, f1, reference_integral(f1, w, cfg.iv)));
            e2 = g17(integration_error(rule, f2, reference_integral(f2, w, cfg.iv)));
            break;
          }
        }
      } catch (const std::exception& e) {
        err = e.what();
      }
    }
    rows.push_back(prefix + kap + "," + komega + "," + diff + "," + somega + "," + resid +
                   "," + e1 + "," + e2 + "," + csv_field(err));
  }
  return rows;
}

std::string run_sweep(const experiment_config& cfg, exec ex) {
  // Grid of (d, N) pairs: either N varies at fixed d, or d varies with
  // N = N(d) (the adaptive choice used by the accuracy-versus-degree study).
  std::vector<std::pair<int, int>> grid;
  if (cfg.has_n_range) {
    for (int n = cfg.n_from; n <= cfg.n_to; n += cfg.n_step) grid.emplace_back(cfg.d, n);
  } else {
    for (int d = cfg.d_from; d <= cfg.d_to; ++d)
      grid.emplace_back(d, static_cast<int>(n_of_d(d)));
  }

  std::vector<std::vector<std::string>> slots(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (ex == exec::par)
#endif
  for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
    slots[static_cast<std::size_t>(i)] =
        sweep_rows(cfg, grid[static_cast<std::size_t>(i)].first,
                   grid[static_cast<std::size_t>(i)].second, ex);

  std::string out = canonical_header(cfg);
  out += "d,N,method,kappa,K_omega,kappa_minus_K,S_omega,residual,error_absx3,error_expx,error\n";
  for (const auto& rows : slots)
    for (const auto& row : rows) out += row + "\n";
  return out;
}

std::string run_ratio(const experiment_config& cfg, exec ex) {
  const weight_fn w = resolve_weight(cfg.weight);
  stability_criterion crit;
  crit.j = cfg.j;
  crit.confirm_window = cfg.confirm_window;

  const int count = cfg.d_to - cfg.d_from + 1;
  std::vector<std::string> rows(static_cast<std::size_t>(count));
  std::vector<std::optional<std::pair<int, int>>> found(static_cast<std::size_t>(count));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (ex == exec::par)
#endif
  for (int i = 0; i < count; ++i) {
    const int d = cfg.d_from + i;
    try {
      const int n = minimal_stable_n(d, w, cfg.iv, cfg.meth, crit, exec::seq);
      found[static_cast<std::size_t>(i)] = {d, n};
      rows[static_cast<std::size_t>(i)] = std::to_string(d) + "," + std::to_string(n) + ",";
    } catch (const search_error& e) {
      rows[static_cast<std::size_t>(i)] =
          std::to_string(d) + ",," + csv_field(e.what());
    }
  }

  std::vector<std::pair<int, int>> samples;
  for (const auto& f : found)
    if (f) samples.push_back(*f);
  const power_law_fit fit = fit_power_law(samples);

  std::string out = canonical_header(cfg);
  out += "d,minimal_N,error\n";
  for (const auto& row : rows) out += row + "\n";
  out += "# fit C=" + g17(fit.c) + " s=" + g17(fit.s) + "\n";
  out += "# fit_loglog C=" + g17(fit.loglog_c) + " s=" + g17(fit.loglog_s) + "\n";
  out += "# fit_samples=" + std::to_string(samples.size()) + "\n";
  return out;
}

}  // namespace

experiment_config parse_config_header(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) continue;
    const std::string body = line.substr(2);
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = body.substr(0, eq);
    if (key.find(' ') != std::string::npos) continue;  // computed footer, not config
    kv.emplace(key, body.substr(eq + 1));  // first occurrence wins
  }
  if (!kv.count("command"))
    throw std::invalid_argument("replay: no '# command=' line found");

  experiment_config cfg;
  cfg.command = parse_command(kv.at("command"));
  if (kv.count("weight")) cfg.weight = kv.at("weight");
  if (kv.count("interval")) cfg.iv = parse_interval(kv.at("interval"));
  if (kv.count("d")) cfg.d = std::stoi(kv.at("d"));
  if (kv.count("N")) {
    cfg.has_n = true;
    cfg.n = std::stoi(kv.at("N"));
  }
  if (kv.count("N_range")) {
    cfg.has_n_range = true;
    parse_int_range(kv.at("N_range"), cfg.n_from, cfg.n_to, cfg.n_step);
  }
  if (kv.count("d_range")) {
    cfg.has_d_range = true;
    int step = 1;
    parse_int_range(kv.at("d_range"), cfg.d_from, cfg.d_to, step);
  }
  if (kv.count("nodes")) cfg.nodes = parse_node_mode(kv.at("nodes"));
  if (kv.count("seed")) cfg.seed = std::stoull(kv.at("seed"));
  if (kv.count("J")) cfg.j = std::stoi(kv.at("J"));
  if (kv.count("method")) cfg.meth = parse_method(kv.at("method"));
  if (kv.count("measure")) cfg.measure = parse_measure(kv.at("measure"));
  if (kv.count("confirm_window")) cfg.confirm_window = std::stoi(kv.at("confirm_window"));
  return cfg;
}

}  // namespace lsquad
