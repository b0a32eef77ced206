#include "swe/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "swe/diagnostics.hpp"
#include "swe/errors.hpp"
#include "swe/vtk.hpp"

namespace swe {

namespace {

using nlohmann::json;

json params_json(const SweParams& p) {
  return json{{"rho", p.rho},     {"mu", p.mu},       {"g", p.g},
              {"zeta", p.zeta},   {"c0", p.c0},       {"dt", p.dt},
              {"T", p.T},         {"order", p.order}, {"steps", p.n_steps()},
              {"solver_tol", p.solver_tol}};
}

// Design-decision metadata recorded with every run for auditability.
json decisions_json() {
  return json{
      {"mass_matrix", "consistent (no lumping)"},
      {"quadrature_degrees",
       {{"mass", 2}, {"weighted_vector_mass", 4}, {"b_rhs", 4}, {"source", 5}, {"composed", 5}}},
      {"clipping",
       "characteristic feet leaving the domain are clipped to the boundary; the jacobian keeps "
       "the source-element velocity gradient"},
      {"solver", "diagonally preconditioned conjugate gradients"},
      {"bootstrap", "single-step operators at n = 1"},
      {"errors", "measured against the nodal interpolant of the exact solution"},
  };
}

json config_json(const RunConfig& cfg) {
  json j{{"scenario", cfg.scenario},     {"order", cfg.order},
         {"c0", cfg.c0},                 {"out_dir", cfg.out_dir},
         {"deterministic", cfg.deterministic}, {"seed", cfg.seed}};
  if (!cfg.mesh_path.empty()) j["mesh"] = cfg.mesh_path;
  else {
    j["N"] = cfg.N;
    j["perturbation"] = cfg.perturbation;
  }
  if (cfg.tbc_segments) j["tbc_segments"] = std::vector<int>(cfg.tbc_segments->begin(),
                                                             cfg.tbc_segments->end());
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

ParamOverrides overrides_from(const RunConfig& cfg) {
  ParamOverrides over;
  over.rho = cfg.rho;
  over.mu = cfg.mu;
  over.g = cfg.g;
  over.zeta = cfg.zeta;
  over.dt = cfg.dt;
  over.T = cfg.T;
  return over;
}

} // namespace

ScenarioBundle scenario_from_config(const RunConfig& cfg, double c0) {
  const std::string& s = cfg.scenario;
  ScenarioBundle b;
  if (s == "ex1" || s == "ex2") {
    ManufacturedCase c;
    c.variant = (s == "ex1") ? 1 : 2;
    b = build_scenario(c, cfg.N, cfg.order, cfg.perturbation, cfg.seed);
    if (cfg.dt) b.params.dt = *cfg.dt;
    if (cfg.T) b.params.T = *cfg.T;
  } else if (s.size() == 4 && s.rfind("ex3", 0) == 0 && s[3] >= 'a' && s[3] <= 'e') {
    GaussianDropCase c;
    c.selector = s[3];
    b = build_scenario(c, cfg.N, cfg.order, c0, cfg.perturbation, cfg.seed, overrides_from(cfg));
  } else if (s == "bay" || s == "bay_extended" || s == "custom") {
    BayCase c;
    c.mesh_path = cfg.mesh_path;
    if (c.mesh_path.empty())
      throw InputError("scenario '" + s + "' requires a mesh path in the config");
    if (cfg.tbc_segments) c.active_segments = *cfg.tbc_segments;
    if (s == "custom") {
      c.amplitude = cfg.custom_amplitude;
      c.sharpness = cfg.custom_sharpness;
      c.center = {cfg.custom_center_x, cfg.custom_center_y};
    }
    b = build_scenario(c, cfg.order, c0, overrides_from(cfg));
    b.name = s;
  } else {
    throw InputError("unknown scenario '" + s + "'");
  }
  b.params.solver_tol = cfg.solver_tol;
  return b;
}

int cmd_run(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  const ScenarioBundle b = scenario_from_config(cfg, cfg.c0);

  std::vector<Observer> observers;
  if (cfg.snapshot_every > 0) {
    const std::string dir = cfg.out_dir;
    const int every = cfg.snapshot_every;
    observers.push_back([dir, every, &b](const SweState& s, const StepStats*) {
      if (s.n % every != 0) return;
      write_vtk_snapshot(dir + "/snap_" + std::to_string(s.n) + ".vtk", *b.mesh, s.eta, s.u);
    });
  }

  const RunReport report = run(*b.mesh, b.bp, b.params, b.phi0, b.u0, observers);
  write_timeseries_csv(cfg.out_dir + "/timeseries.csv", report.series);

  int clipped_total = 0;
  for (const auto& row : report.series) clipped_total += row.clipped_feet;
  json j{{"command", "run"},
         {"config", config_json(cfg)},
         {"params", params_json(b.params)},
         {"decisions", decisions_json()},
         {"mesh", {{"vertices", b.mesh->n_vertices()}, {"triangles", b.mesh->n_triangles()}}},
         {"initial",
          {{"t", report.initial.t},
           {"l2_eta", report.initial.l2_eta},
           {"mass_eta", report.initial.mass_eta},
           {"kinetic", report.initial.kinetic},
           {"potential", report.initial.potential}}},
         {"clipped_feet_total", clipped_total}};
  write_json(cfg.out_dir + "/run.json", j);
  return 0;
}

int cmd_eoc(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.scenario != "ex1" && cfg.scenario != "ex2")
    throw InputError("cmd_eoc requires scenario ex1 or ex2");
  fs::create_directories(cfg.out_dir);

  struct Row {
    int order, N;
    double dt, e0_eta, e0_u, e1_eta, e1_u;
  };
  std::vector<Row> rows;

  for (int order : cfg.eoc_orders) {
    for (int N : cfg.eoc_n_list) {
      RunConfig rc = cfg;
      rc.order = order;
      rc.N = N;
      rc.dt.reset();
      const ScenarioBundle b = scenario_from_config(rc, cfg.c0);
      const StepWorkspace ws(*b.mesh);
      ErrorTracker tracker(*b.mesh, ws.mass(), b.eta_exact, b.u_exact);
      std::vector<Observer> obs{[&tracker](const SweState& s, const StepStats*) {
        tracker.record(s);
      }};
      run(*b.mesh, b.bp, b.params, b.phi0, b.u0, obs);
      rows.push_back({order, N, b.params.dt, tracker.e0_eta(), tracker.e0_u(), tracker.e1_eta(),
                      tracker.e1_u()});
    }
  }

  std::FILE* f = std::fopen((cfg.out_dir + "/eoc.csv").c_str(), "w");
  if (!f) throw InputError("cannot open for writing: " + cfg.out_dir + "/eoc.csv");
  std::fprintf(f, "scheme,N,dt,E0_eta,EOC_E0_eta,E0_u,EOC_E0_u,E1_eta,EOC_E1_eta,E1_u,EOC_E1_u\n");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const bool first = (i == 0) || rows[i - 1].order != r.order;
    auto col = [&](double e, double e_prev) {
      if (first) return std::string("-");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", eoc(e_prev, e, rows[i - 1].dt, r.dt));
      return std::string(buf);
    };
    const Row& p = first ? r : rows[i - 1];
    std::fprintf(f, "LG%d,%d,%.17g,%.17g,%s,%.17g,%s,%.17g,%s,%.17g,%s\n", r.order, r.N, r.dt,
                 r.e0_eta, col(r.e0_eta, p.e0_eta).c_str(), r.e0_u, col(r.e0_u, p.e0_u).c_str(),
                 r.e1_eta, col(r.e1_eta, p.e1_eta).c_str(), r.e1_u, col(r.e1_u, p.e1_u).c_str());
  }
  std::fclose(f);

  json j{{"command", "eoc"},
         {"config", config_json(cfg)},
         {"decisions", decisions_json()},
         {"n_list", cfg.eoc_n_list},
         {"orders", cfg.eoc_orders}};
  write_json(cfg.out_dir + "/run.json", j);
  return 0;
}

int cmd_sweep_c0(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  const SweepResult result = sweep_c0(
      [&cfg](double c0) { return scenario_from_config(cfg, c0); }, cfg.c0_values);

  std::FILE* f = std::fopen((cfg.out_dir + "/c0_sweep.csv").c_str(), "w");
  if (!f) throw InputError("cannot open for writing: " + cfg.out_dir + "/c0_sweep.csv");
  std::fprintf(f, "c0,eta_l2_l2\n");
  for (const auto& row : result.table) std::fprintf(f, "%.17g,%.17g\n", row.c0, row.eta_l2_l2);
  std::fclose(f);

  std::printf("c0 sweep: argmin = %g\n", result.argmin);
  json j{{"command", "sweep-c0"},
         {"config", config_json(cfg)},
         {"decisions", decisions_json()},
         {"c0_values", cfg.c0_values},
         {"argmin", result.argmin}};
  write_json(cfg.out_dir + "/run.json", j);
  return 0;
}

} // namespace swe
