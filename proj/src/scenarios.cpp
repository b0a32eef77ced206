#include "swe/scenarios.hpp"

#include <cmath>

#include "swe/errors.hpp"

namespace swe {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Trig {
  double S, C1, C2, C3; // sin*sin, cos*sin, sin*cos, cos*cos
  double tau, dtau;     // 2 + sin(pi t) and its derivative
};

Trig trig(const Vec2& x, double t) {
  const double s1 = std::sin(kPi * x.x), c1 = std::cos(kPi * x.x);
  const double s2 = std::sin(kPi * x.y), c2 = std::cos(kPi * x.y);
  return {s1 * s2, c1 * s2, s1 * c2, c1 * c2, 2.0 + std::sin(kPi * t),
          kPi * std::cos(kPi * t)};
}

} // namespace

double ManufacturedCase::phi_exact(const Vec2& x, double t) const {
  const Trig w = trig(x, t);
  return 1.0 + w.S * w.tau / 8.0;
}

Vec2 ManufacturedCase::u_exact(const Vec2& x, double t) const {
  const Trig w = trig(x, t);
  const double s = w.S * w.tau / 3.0;
  return {s, s};
}

double ManufacturedCase::f_forcing(const Vec2& x, double t) const {
  const Trig w = trig(x, t);
  const double c12 = w.C1 + w.C2;
  return w.S * w.dtau / 8.0 + kPi * w.tau / 3.0 * c12 +
         kPi * w.S * w.tau * w.tau / 12.0 * c12;
}

Vec2 ManufacturedCase::F_forcing(const Vec2& x, double t) const {
  const Trig w = trig(x, t);
  const double phi = 1.0 + w.S * w.tau / 8.0;
  const double c12 = w.C1 + w.C2;
  // material acceleration of each (identical) velocity component
  const double accel = w.S * w.dtau / 3.0 + kPi * w.S * w.tau * w.tau / 9.0 * c12;
  // viscous divergence 2 (div phi D(u))_i; the two components differ only in
  // which squared cosine carries the 1/8 factor
  const double common = phi * (w.C3 - 3.0 * w.S) / 2.0;
  const double v1 = w.tau / 8.0 * w.C1 * w.C1 + w.tau / 16.0 * (w.C1 * w.C2 + w.C2 * w.C2) +
                    common;
  const double v2 = w.tau / 16.0 * (w.C1 * w.C1 + w.C1 * w.C2) + w.tau / 8.0 * w.C2 * w.C2 +
                    common;
  const double visc = 2.0 * mu * kPi * kPi * w.tau / 3.0;
  const double grav = rho * g * phi * kPi * w.tau / 8.0;
  return {rho * phi * accel - visc * v1 + grav * w.C1,
          rho * phi * accel - visc * v2 + grav * w.C2};
}

double GaussianDropCase::eta0(const Vec2& x) const {
  return amplitude * std::exp(-sharpness * norm2(x - center));
}

double BayCase::eta0(const Vec2& x) const {
  return amplitude * std::exp(-sharpness * norm2(x - center));
}

double protocol_dt(int N) {
  if (N < 2) throw InputError("protocol_dt: N must be >= 2");
  return 0.25 * std::sqrt(1.0 / N);
}

ScenarioBundle build_scenario(const ManufacturedCase& c, int N, int order, double perturbation,
                              std::uint64_t seed) {
  if (c.variant != 1 && c.variant != 2) throw InputError("manufactured case variant must be 1 or 2");
  SideLabels labels;
  if (c.variant == 2) labels.bottom = 1;

  ScenarioBundle b;
  b.name = c.variant == 1 ? "ex1" : "ex2";
  b.mesh = std::make_shared<TriMesh>(gen_square_mesh(1.0, N, perturbation, labels, seed));
  b.bp = compute_boundary_normals(*b.mesh);

  b.params.rho = c.rho;
  b.params.mu = c.mu;
  b.params.g = c.g;
  b.params.zeta = c.zeta;
  b.params.order = order;
  b.params.T = c.T;
  b.params.dt = protocol_dt(N);
  b.params.f = [c](const Vec2& x, double t) { return c.f_forcing(x, t); };
  b.params.F = [c](const Vec2& x, double t) { return c.F_forcing(x, t); };
  if (c.variant == 2) {
    // The manufactured solution does not satisfy the transmission relation;
    // constrain the transmission side with the exact velocity trace instead.
    b.params.transmission_trace = [c](const Vec2& x, double t) { return c.u_exact(x, t); };
  }

  b.phi0 = [c](const Vec2& x) { return c.phi_exact(x, 0.0); };
  b.u0 = [c](const Vec2& x) { return c.u_exact(x, 0.0); };
  b.has_exact = true;
  b.eta_exact = [c](const Vec2& x, double t) { return c.eta_exact(x, t); };
  b.u_exact = [c](const Vec2& x, double t) { return c.u_exact(x, t); };
  return b;
}

ScenarioBundle build_scenario(const GaussianDropCase& c, int N, int order, double c0,
                              double perturbation, std::uint64_t seed,
                              const ParamOverrides& over) {
  SideLabels labels; // 0 everywhere = Dirichlet
  switch (c.selector) {
    case 'a': break;
    case 'e': labels = {1, 2, 3, 4}; break;
    case 'b': labels.bottom = 1; break;
    case 'c': labels.bottom = 1; labels.right = 2; break;
    case 'd': labels.bottom = 1; labels.right = 2; labels.top = 3; break;
    default: throw InputError("gaussian drop selector must be one of a..e");
  }

  ScenarioBundle b;
  b.name = std::string("ex3") + c.selector;
  b.mesh = std::make_shared<TriMesh>(gen_square_mesh(c.side, N, perturbation, labels, seed));
  b.bp = compute_boundary_normals(*b.mesh);

  b.params.rho = over.rho.value_or(c.rho);
  b.params.mu = over.mu.value_or(c.mu);
  b.params.g = over.g.value_or(c.g);
  b.params.zeta = over.zeta.value_or(c.zeta);
  b.params.c0 = c0;
  b.params.order = order;
  b.params.T = over.T.value_or(c.T);
  b.params.dt = over.dt.value_or(protocol_dt(N));

  const double zeta = b.params.zeta;
  b.phi0 = [c, zeta](const Vec2& x) { return zeta + c.eta0(x); };
  b.u0 = [](const Vec2&) { return Vec2{0.0, 0.0}; };
  return b;
}

ScenarioBundle build_scenario(const BayCase& c, int order, double c0,
                              const ParamOverrides& over) {
  TriMesh mesh = load_mesh(c.mesh_path);
  bool relabeled = false;
  for (auto& be : mesh.boundary_edges) {
    if (be.label != 0 && !c.active_segments.count(be.label)) {
      be.label = 0; // demoted transmission segment
      relabeled = true;
    }
  }
  if (relabeled) mesh.finalize();

  ScenarioBundle b;
  b.name = "bay";
  b.mesh = std::make_shared<TriMesh>(std::move(mesh));
  b.bp = compute_boundary_normals(*b.mesh);

  b.params.rho = over.rho.value_or(c.rho);
  b.params.mu = over.mu.value_or(c.mu);
  b.params.g = over.g.value_or(c.g);
  b.params.zeta = over.zeta.value_or(c.zeta);
  b.params.c0 = c0;
  b.params.order = order;
  b.params.T = over.T.value_or(c.T);
  b.params.dt = over.dt.value_or(c.dt);

  const double zeta = b.params.zeta;
  b.phi0 = [c, zeta](const Vec2& x) { return zeta + c.eta0(x); };
  b.u0 = [](const Vec2&) { return Vec2{0.0, 0.0}; };
  return b;
}

SweepResult sweep_c0(const std::function<ScenarioBundle(double)>& make_scenario,
                     const std::vector<double>& values) {
  if (values.empty()) throw InputError("sweep_c0: values must be non-empty");
  SweepResult result;
  for (double c0 : values) {
    const ScenarioBundle b = make_scenario(c0);
    const RunReport report = run(*b.mesh, b.bp, b.params, b.phi0, b.u0);
    std::vector<double> l2s;
    l2s.reserve(report.series.size());
    for (const auto& row : report.series) l2s.push_back(row.l2_eta);
    result.table.push_back({c0, l2_l2_norm(l2s, b.params.dt)});
  }
  result.argmin = result.table.front().c0;
  double best = result.table.front().eta_l2_l2;
  for (const auto& row : result.table)
    if (row.eta_l2_l2 < best) {
      best = row.eta_l2_l2;
      result.argmin = row.c0;
    }
  return result;
}

} // namespace swe
