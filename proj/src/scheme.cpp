#include "swe/scheme.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "swe/characteristics.hpp"
#include "swe/errors.hpp"

namespace swe {

namespace {

// Bitwise post-solve enforcement: the eliminated system already pins these
// dofs, but CG only reproduces them to solver tolerance.
void enforce(std::vector<double>& x, const ConstraintSet& cs) {
  for (const auto& c : cs.items) x[2 * c.node + c.component] = c.value;
}

ConstraintSet trace_constraints(const BoundaryPartition& bp, const TimeVectorFn& trace,
                                const TriMesh& mesh, double t) {
  ConstraintSet cs;
  cs.vector_valued = true;
  for (int v : bp.all_transmission_nodes()) {
    const Vec2 g = trace(mesh.vertices[v], t);
    cs.items.push_back({v, 0, g.x});
    cs.items.push_back({v, 1, g.y});
  }
  for (int v : bp.dirichlet_nodes) {
    cs.items.push_back({v, 0, 0.0});
    cs.items.push_back({v, 1, 0.0});
  }
  return cs;
}

void check_positivity(const ScalarField& phi, int n) {
  const double m = phi.min_value();
  if (!(m > 0.0))
    throw PositivityLost("phi lost positivity at step " + std::to_string(n) +
                         " (min nodal value " + std::to_string(m) + ")");
}

} // namespace

int SweParams::n_steps() const {
  if (!(dt > 0.0)) throw InputError("SweParams: dt must be positive");
  return static_cast<int>(std::floor(T / dt + 1e-9));
}

StepWorkspace::StepWorkspace(const TriMesh& mesh)
    : mass_(assemble_mass(mesh)), lumped_(lumped_mass(mesh)), velocity_(mesh) {}

SweState init_state(const TriMesh& mesh, const SweParams& params, const ScalarFn& phi0,
                    const VectorFn& u0) {
  SweState s;
  s.n = 0;
  s.t = 0.0;
  s.phi = interpolate(mesh, phi0);
  s.u = interpolate(mesh, u0);
  s.zeta_h = interpolate(mesh, [&](const Vec2&) { return params.zeta; });
  check_positivity(s.phi, 0);
  s.eta = ScalarField(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    s.eta.values[v] = s.phi.values[v] - s.zeta_h.values[v];
  return s;
}

StepStats step(SweState& state, const TriMesh& mesh, const BoundaryPartition& bp,
               const SweParams& params, const StepWorkspace& ws) {
  if (!(params.dt > 0.0)) throw InputError("step: dt must be positive");
  if (params.order != 1 && params.order != 2) throw InputError("step: order must be 1 or 2");

  StepStats stats;
  const int n_next = state.n + 1;
  const double t_next = n_next * params.dt;
  const double dt = params.dt;
  // The single-step operators serve both the first-order scheme and the
  // bootstrap step of the two-step scheme.
  const bool single = (params.order == 1) || (n_next == 1);
  if (!single && !state.has_history) throw InputError("step: missing two-level history");

  const VectorField w =
      single ? state.u : extrapolate_velocity(state.u, state.u_prev); // u^{n*}

  const FootTable feet1 = build_foot_table(mesh, w, dt, 1);
  FootTable feet2;
  if (!single) feet2 = build_foot_table(mesh, w, dt, 2);
  stats.clipped_feet = feet1.n_clipped + feet2.n_clipped;

  // Scalar transport: M phi = dt (f, psi) + composed right-hand side,
  // with the 3/2 factor of the two-step operator folded into the load.
  std::vector<double> rhs(mesh.n_vertices(), 0.0);
  if (params.f) rhs = assemble_source(mesh, params.f, t_next);
  for (double& v : rhs) v *= dt;
  {
    const std::vector<double> r1 = rhs_conservative(mesh, state.phi, feet1);
    if (single) {
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += r1[i];
    } else {
      const std::vector<double> r2 = rhs_conservative(mesh, state.phi_prev, feet2);
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += 2.0 * r1[i] - 0.5 * r2[i];
      for (double& v : rhs) v *= 2.0 / 3.0;
    }
  }
  CgStats cg;
  std::vector<double> phi_new = solve_spd(ws.mass(), rhs, params.solver_tol, -1, &cg);
  stats.scalar_iterations = cg.iterations;

  ScalarField phi_field(mesh);
  phi_field.values = std::move(phi_new);
  check_positivity(phi_field, n_next);

  ScalarField eta_field(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    eta_field.values[v] = phi_field.values[v] - state.zeta_h.values[v];

  // Velocity system: (rho theta/dt)(phi u, v) + a(u, v; phi) with theta = 1
  // (single step) or 3/2 (two-step), against the composed momentum load.
  const double theta = single ? 1.0 : 1.5;
  SparseSymMatrix A = ws.velocity().assemble_system(phi_field, params.rho * theta / dt, params.mu);

  std::vector<double> vrhs(2 * mesh.n_vertices(), 0.0);
  if (params.F) vrhs = assemble_source(mesh, params.F, t_next);
  {
    const std::vector<double> b = assemble_b_rhs(mesh, phi_field, eta_field, params.rho, params.g);
    for (std::size_t i = 0; i < vrhs.size(); ++i) vrhs[i] -= b[i];
  }
  {
    const std::vector<double> nc1 = rhs_nonconservative(mesh, state.u, phi_field, feet1);
    const double s = params.rho / dt;
    if (single) {
      for (std::size_t i = 0; i < vrhs.size(); ++i) vrhs[i] += s * nc1[i];
    } else {
      const std::vector<double> nc2 = rhs_nonconservative(mesh, state.u_prev, phi_field, feet2);
      for (std::size_t i = 0; i < vrhs.size(); ++i)
        vrhs[i] += s * (2.0 * nc1[i] - 0.5 * nc2[i]);
    }
  }

  const ConstraintSet cs =
      params.transmission_trace
          ? trace_constraints(bp, params.transmission_trace, mesh, t_next)
          : tbc_values(bp, phi_field, eta_field, params.c0, params.g, params.zeta);
  apply_constraints(A, vrhs, cs);
  std::vector<double> u_new = solve_spd(A, vrhs, params.solver_tol, -1, &cg);
  stats.velocity_iterations = cg.iterations;
  enforce(u_new, cs);

  VectorField u_field(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    u_field.values[v] = {u_new[2 * v + 0], u_new[2 * v + 1]};

  state.phi_prev = std::move(state.phi);
  state.u_prev = std::move(state.u);
  state.phi = std::move(phi_field);
  state.eta = std::move(eta_field);
  state.u = std::move(u_field);
  state.n = n_next;
  state.t = t_next;
  state.has_history = true;
  return stats;
}

SweState step(const SweState& state, const TriMesh& mesh, const BoundaryPartition& bp,
              const SweParams& params) {
  const StepWorkspace ws(mesh);
  SweState next = state;
  step(next, mesh, bp, params, ws);
  return next;
}

RunReport run(const TriMesh& mesh, const BoundaryPartition& bp, const SweParams& params,
              const ScalarFn& phi0, const VectorFn& u0, const std::vector<Observer>& observers) {
  const int n_steps = params.n_steps();
  const StepWorkspace ws(mesh);
  SweState state = init_state(mesh, params, phi0, u0);

  auto diag_row = [&](const SweState& s, int clipped) {
    TimeSeriesRow row;
    row.t = s.t;
    row.l2_eta = l2_norm(s.eta, ws.mass());
    row.mass_eta = 0.0;
    for (int v = 0; v < mesh.n_vertices(); ++v) row.mass_eta += ws.lumped()[v] * s.eta.values[v];
    const EnergyPair e = energies(s, params);
    row.kinetic = e.kinetic;
    row.potential = e.potential;
    row.clipped_feet = clipped;
    return row;
  };

  RunReport report;
  report.initial = diag_row(state, 0);
  for (const auto& obs : observers) obs(state, nullptr);

  report.series.reserve(n_steps);
  for (int n = 1; n <= n_steps; ++n) {
    const StepStats stats = step(state, mesh, bp, params, ws);
    report.series.push_back(diag_row(state, stats.clipped_feet));
    for (const auto& obs : observers) obs(state, &stats);
  }
  return report;
}

} // namespace swe
