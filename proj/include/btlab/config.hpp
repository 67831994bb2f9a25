#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "btlab/model.hpp"

namespace btlab {

/// Experiment configuration, read from a flat "key = value" file (strings,
/// numbers, comma-separated integer lists; '#' comments). All defaults live
/// in default_run_config() and are printed by `--print-defaults`.
struct RunConfig {
  std::string experiment = "figure2";  // figure2 | separable | cubic | sharpness | custom
  std::string operator_kind = "L";     // L | T
  std::string potential = "quadratic";
  std::vector<double> potential_params;
  std::string alpha = "dip_with_floor";
  std::vector<double> alpha_params{0.1};
  std::vector<int> n_list{4, 5, 6, 7, 8};
  int nx = 400;
  int ny = 200;
  double x_extent = 4.0;
  double y_extent = 7.0;
  double x_min_spacing_over_sqrt_h = 1.0 / 32.0;
  double y_min_spacing = 0.015;
  int k = 3;
  double tol = 1e-10;
  double mu = 0.5;  // Agmon weight exponent
  bool quasimode_start = true;
  std::string outdir = "out";
  std::uint64_t seed = 42;

  bool operator==(const RunConfig&) const = default;
};

RunConfig default_run_config();
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string serialize_run_config(const RunConfig& cfg);

/// Model config for one sweep point h = 2^{-n}.
ModelConfig to_model_config(const RunConfig& rc, int n);

}  // namespace btlab
