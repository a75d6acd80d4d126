#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lsquad/core.hpp"
#include "lsquad/exec.hpp"

namespace lsquad {

enum class command_kind { weights, sweep, ratio };
enum class node_mode { equidistant, scattered };
enum class measure_kind { stability, sign, exactness, accuracy };

const char* command_name(command_kind c);
const char* node_mode_name(node_mode m);
const char* measure_name(measure_kind m);

command_kind parse_command(const std::string& s);
node_mode parse_node_mode(const std::string& s);
measure_kind parse_measure(const std::string& s);
method parse_method(const std::string& s);

// One experiment, fully specified. The canonical header echo of this struct
// is embedded in every CSV, and replay reconstructs the struct from that echo
// alone, so identical configs (and seeds) produce byte-identical files.
struct experiment_config {
  command_kind command = command_kind::weights;
  std::string weight = "1";
  interval iv{-1.0, 1.0};
  int d = 0;
  bool has_n = false;
  int n = 0;
  bool has_n_range = false;
  int n_from = 0;
  int n_to = 0;
  int n_step = 1;
  bool has_d_range = false;
  int d_from = 0;
  int d_to = 0;
  node_mode nodes = node_mode::equidistant;
  std::uint64_t seed = 0;
  int j = 200;
  method meth = method::ls;
  measure_kind measure = measure_kind::stability;
  int confirm_window = 0;
};

// "from:to" and "from:to:step" range syntax used by the CLI flags.
void parse_int_range(const std::string& s, int& from, int& to, int& step);

// "a,b" interval syntax.
interval parse_interval(const std::string& s);

// Contract checks beyond what the type system enforces; throws
// std::invalid_argument with a message naming the violated requirement.
void validate(const experiment_config& cfg);

// The `# key=value` block echoed at the top of every CSV.
std::string canonical_header(const experiment_config& cfg);

// Runs the configured experiment and returns the complete CSV text,
// including the canonical header (and, for some commands, computed metadata
// comments and footers). The execution policy affects runtime only, never
// output bytes.
std::string run_experiment(const experiment_config& cfg, exec ex = exec::par);

// Reconstructs a config from the `# key=value` lines of a CSV stream
// (non-config comment lines are ignored), enabling replay from a results
// file alone.
experiment_config parse_config_header(std::istream& in);

}  // namespace lsquad
