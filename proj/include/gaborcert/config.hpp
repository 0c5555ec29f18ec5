#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaborcert/window.hpp"

namespace gaborcert {

// Settings shared by all subcommands. Text form is one "key = value" per
// line; '#' starts a comment. Lists are comma separated.
struct RunConfig {
  std::string window = "bump";
  double alpha = 1.0;
  double beta = 0.70710678118654752;
  std::vector<double> alpha_grid;  // scan; empty means {alpha}
  std::vector<double> beta_grid;   // scan; empty means {beta}
  int samples_per_gap = 32;
  double delta_floor = 1e-8;
  int extent = 32;
  int hop_bound = 10000;
  int core_grid = 4096;
  int sup_grid = 4096;
  int x_grid = 64;
  std::string policy = "full";  // framebounds column policy: full | any
  std::uint64_t seed = 0;
  double dt = 1.0 / 4096.0;
  double component_var = 1.0;
  int quadrature_n = 2048;
  double xi_max = 80.0;
  int n_xi = 512;
  int workers = 1;
  std::string out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError("line N: ...") on unknown keys or malformed values.
RunConfig parse_config(std::istream& is, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Every key, floats with 17 significant digits. parse_config(emit_config(c))
// == c.
std::string emit_config(const RunConfig& c);

// Sets one field from its text value. Throws ConfigError naming the field.
void set_config_field(RunConfig& c, const std::string& key, const std::string& value);

// bump | gevrey:N | char[:a:b] | oddbump | poly[:a:b] | csv:PATH |
// random[:SEED]. Random windows use cfg.dt, cfg.component_var,
// cfg.quadrature_n and cfg.seed (unless the descriptor names a seed), and are
// normalized to sup norm 1.
Window make_window(const std::string& descriptor, const RunConfig& cfg = {});

// "%.17g"
std::string format_double(double v);

}  // namespace gaborcert
