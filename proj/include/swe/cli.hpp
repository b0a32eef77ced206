#ifndef SWE_CLI_HPP
#define SWE_CLI_HPP

#include "swe/config.hpp"
#include "swe/scenarios.hpp"

namespace swe {

/// Builds the scenario selected by the config (applying parameter overrides,
/// transmission-segment toggles, dt/T overrides).
ScenarioBundle scenario_from_config(const RunConfig& cfg, double c0);

/// Runs one simulation; writes timeseries.csv, run.json and snap_<step>.vtk
/// files into cfg.out_dir. Returns the process exit status.
int cmd_run(const RunConfig& cfg);

/// Convergence study over cfg.eoc_n_list and cfg.eoc_orders with
/// dt = 0.25 sqrt(1/N); writes eoc.csv (and run.json). Requires an exact
/// solution (ex1 or ex2).
int cmd_eoc(const RunConfig& cfg);

/// One simulation per value in cfg.c0_values; writes c0_sweep.csv with the
/// l2(L2) norm of eta per c0 and reports the argmin.
int cmd_sweep_c0(const RunConfig& cfg);

} // namespace swe

#endif
