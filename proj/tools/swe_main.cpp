// Command-line front end: run | eoc | sweep-c0, driven by an INI config.
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "swe/cli.hpp"
#include "swe/errors.hpp"

namespace {

void apply_flags(swe::RunConfig& cfg, const std::string& out_dir, bool deterministic,
                 long long seed) {
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (deterministic) cfg.deterministic = true;
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step Lagrange-Galerkin shallow water solver"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool deterministic = false;
  long long seed = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "INI configuration file")->required();
    cmd->add_option("--out-dir", out_dir, "output directory (overrides config)");
    cmd->add_flag("--deterministic", deterministic, "force serial deterministic execution");
    cmd->add_option("--seed", seed, "mesh jitter seed (overrides config)");
  };

  CLI::App* run = app.add_subcommand("run", "run one simulation");
  CLI::App* eoc = app.add_subcommand("eoc", "convergence study (ex1/ex2)");
  CLI::App* sweep = app.add_subcommand("sweep-c0", "transmission constant sweep");
  add_common(run);
  add_common(eoc);
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    swe::RunConfig cfg = swe::parse_config(config_path);
    apply_flags(cfg, out_dir, deterministic, seed);
    if (run->parsed()) return swe::cmd_run(cfg);
    if (eoc->parsed()) return swe::cmd_eoc(cfg);
    return swe::cmd_sweep_c0(cfg);
  } catch (const swe::Error& e) {
    const nlohmann::json j{{"error", e.code()}, {"detail", e.what()}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    const nlohmann::json j{{"error", "INTERNAL_ERROR"}, {"detail", e.what()}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    return 1;
  }
}
