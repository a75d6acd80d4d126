// Experiment runner: computes quadrature weights for prescribed nodes and
// general weight functions, sweeps stability / sign-consistency / exactness /
// accuracy measures over N or d, scans the minimal stable node count per
// degree with a power-law fit, and replays any experiment from its CSV
// header. Output is CSV to --out or stdout.
//
// Exit codes: 0 success, 2 usage or invalid configuration, 3 numerical
// failure.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lsquad/errors.hpp"
#include "lsquad/experiment.hpp"

namespace {

struct cli_options {
  lsquad::experiment_config cfg;
  std::string interval_text = "-1,1";
  std::string n_range_text;
  std::string d_range_text;
  std::string nodes_text = "eq";
  std::string method_text = "ls";
  std::string measure_text = "stability";
  std::string out_path;
  bool serial = false;
};

void add_common_flags(CLI::App& cmd, cli_options& opt) {
  cmd.add_option("--weight", opt.cfg.weight,
                 "weight function: catalog name (1, 1-x^2, sqrt(1-x^2), "
                 "x*sqrt(1-x^3), cos(20*pi*x)) or an expression in x");
  cmd.add_option("--interval", opt.interval_text, "integration interval as a,b");
  cmd.add_option("--J", opt.cfg.j, "Gauss-Legendre points for the moment computation");
  cmd.add_option("--method", opt.method_text, "ls, nnls or trap");
  cmd.add_option("--out", opt.out_path, "output file (stdout when omitted)");
  cmd.add_flag("--serial", opt.serial, "run single-threaded (output is identical)");
}

void finish_config(cli_options& opt) {
  opt.cfg.iv = lsquad::parse_interval(opt.interval_text);
  opt.cfg.nodes = lsquad::parse_node_mode(opt.nodes_text);
  opt.cfg.meth = lsquad::parse_method(opt.method_text);
  opt.cfg.measure = lsquad::parse_measure(opt.measure_text);
  if (!opt.n_range_text.empty()) {
    opt.cfg.has_n_range = true;
    lsquad::parse_int_range(opt.n_range_text, opt.cfg.n_from, opt.cfg.n_to, opt.cfg.n_step);
  }
  if (!opt.d_range_text.empty()) {
    opt.cfg.has_d_range = true;
    int step = 1;
    lsquad::parse_int_range(opt.d_range_text, opt.cfg.d_from, opt.cfg.d_to, step);
  }
}

void emit(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  out << csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable quadrature weights for prescribed nodes and general weight functions"};
  app.require_subcommand(1);

  cli_options opt;
  std::string replay_path;

  CLI::App* weights = app.add_subcommand("weights", "compute one rule's weights");
  add_common_flags(*weights, opt);
  weights->add_option("--d", opt.cfg.d, "degree of exactness");
  weights->add_option("--N", opt.cfg.n, "number of nodes")->required();
  weights->add_option("--nodes", opt.nodes_text, "node layout: eq or sc");
  weights->add_option("--seed", opt.cfg.seed, "seed for scattered nodes");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep a measure over N (or d with N = N(d))");
  add_common_flags(*sweep, opt);
  sweep->add_option("--d", opt.cfg.d, "degree of exactness (fixed-d sweeps)");
  sweep->add_option("--N-range", opt.n_range_text, "from:to or from:to:step");
  sweep->add_option("--d-range", opt.d_range_text, "from:to (sets N = N(d) per row)");
  sweep->add_option("--nodes", opt.nodes_text, "node layout: eq or sc");
  sweep->add_option("--seed", opt.cfg.seed, "seed for scattered nodes");
  sweep->add_option("--measure", opt.measure_text,
                    "stability, sign, exactness or accuracy");

  CLI::App* ratio = app.add_subcommand("ratio", "minimal stable N per degree plus power-law fit");
  add_common_flags(*ratio, opt);
  ratio->add_option("--d-range", opt.d_range_text, "from:to within 1..40")->required();
  ratio->add_option("--confirm-window", opt.cfg.confirm_window,
                    "also require the next W values of N to pass");

  CLI::App* replay = app.add_subcommand("replay", "re-run an experiment from a CSV header");
  replay->add_option("csv", replay_path, "CSV file produced by this tool")->required();
  replay->add_option("--out", opt.out_path, "output file (stdout when omitted)");
  replay->add_flag("--serial", opt.serial, "run single-threaded (output is identical)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 is --help; everything else is a usage error
  }

  try {
    lsquad::experiment_config cfg;
    if (replay->parsed()) {
      std::ifstream in(replay_path);
      if (!in) throw std::invalid_argument("cannot open '" + replay_path + "'");
      cfg = lsquad::parse_config_header(in);
    } else {
      finish_config(opt);
      if (weights->parsed()) {
        opt.cfg.command = lsquad::command_kind::weights;
        opt.cfg.has_n = true;
      } else if (sweep->parsed()) {
        opt.cfg.command = lsquad::command_kind::sweep;
      } else {
        opt.cfg.command = lsquad::command_kind::ratio;
      }
      cfg = opt.cfg;
    }
    const lsquad::exec ex = opt.serial ? lsquad::exec::seq : lsquad::exec::par;
    emit(lsquad::run_experiment(cfg, ex), opt.out_path);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lsquad::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
