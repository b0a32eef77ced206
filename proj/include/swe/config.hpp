#ifndef SWE_CONFIG_HPP
#define SWE_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace swe {

/// Resolved run configuration. The on-disk format is flat `key = value`
/// ASCII with `[section]` headers; '#' starts a comment.
struct RunConfig {
  // [run]
  std::string scenario = "ex3a"; // ex1|ex2|ex3a..ex3e|bay|bay_extended|custom
  int N = 50;                    // square-mesh division count
  std::string mesh_path;         // bay*/custom scenarios
  int order = 2;
  std::optional<double> dt;
  std::optional<double> T;
  double c0 = 0.9;
  int snapshot_every = 0; // 0 disables snapshots
  std::string out_dir = "out";
  bool deterministic = false;
  std::uint64_t seed = 1;
  double perturbation = 0.2;
  std::optional<std::set<int>> tbc_segments; // unset = keep all labeled segments

  // [custom] initial bump for the `custom` scenario
  double custom_amplitude = 1e-3;
  double custom_sharpness = 100.0;
  double custom_center_x = 0.0;
  double custom_center_y = 0.0;

  // [params] physical overrides
  std::optional<double> rho, mu, g, zeta;
  double solver_tol = 1e-12;

  // [eoc]
  std::vector<int> eoc_n_list = {8, 16, 32, 64};
  std::vector<int> eoc_orders = {1, 2};

  // [sweep]
  std::vector<double> c0_values = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2};
};

/// Parses the INI-style config; unknown keys or malformed values raise
/// ParseError.
RunConfig parse_config(const std::string& path);

} // namespace swe

#endif
