#ifndef SWE_SCENARIOS_HPP
#define SWE_SCENARIOS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swe/mesh.hpp"
#include "swe/scheme.hpp"

namespace swe {

/// Manufactured solution on the unit square: smooth standing pattern whose
/// substituted residuals define the forcing pair (f, F). Variant 1 is all
/// Dirichlet; variant 2 makes the bottom side a transmission segment whose
/// values are taken from the exact velocity trace.
struct ManufacturedCase {
  int variant = 1; // 1 or 2
  double rho = 1.0, mu = 1.0, g = 1.0, zeta = 1.0;
  double T = 1.0;

  double phi_exact(const Vec2& x, double t) const;
  Vec2 u_exact(const Vec2& x, double t) const;
  double eta_exact(const Vec2& x, double t) const { return phi_exact(x, t) - zeta; }

  /// Closed-form residual forcing of the continuity and momentum equations.
  double f_forcing(const Vec2& x, double t) const;
  Vec2 F_forcing(const Vec2& x, double t) const;
};

/// Gaussian free-surface bump released at rest in (0, side)^2; selector
/// a..e picks which sides transmit (a: none ... e: all four).
struct GaussianDropCase {
  char selector = 'a';
  double side = 10.0;
  double amplitude = 1e-3;
  double sharpness = 100.0; // eta0 = amplitude * exp(-sharpness |x-p|^2)
  Vec2 center{5.0, 5.0};
  double T = 100.0;
  double rho = 1.0, mu = 1.0, g = 1.0, zeta = 1.0;

  double eta0(const Vec2& x) const;
};

/// Coastal scenario driven by an SMF mesh file with transmission segments
/// labeled 1..3 on the open-sea boundary. Units: km, s, kg.
struct BayCase {
  std::string mesh_path;
  std::set<int> active_segments{1, 2, 3}; // others are demoted to Dirichlet
  double T = 5000.0;
  double dt = 0.2;
  double zeta = 2.0;
  double amplitude = 0.01;
  double sharpness = 0.04;
  Vec2 center{559.56, 430.02};
  double rho = 1e12, mu = 1.0, g = 9.8e-3;

  double eta0(const Vec2& x) const;
};

/// A ready-to-run bundle: mesh, boundary partition, parameters, initial data
/// and (when available) the exact solution for error tracking.
struct ScenarioBundle {
  std::string name;
  std::shared_ptr<const TriMesh> mesh;
  BoundaryPartition bp;
  SweParams params;
  ScalarFn phi0;
  VectorFn u0;
  bool has_exact = false;
  TimeScalarFn eta_exact;
  TimeVectorFn u_exact;
};

/// Optional physical-constant overrides applied on top of a case's defaults
/// (the c0-calibration square case is the Gaussian drop with ocean-scale
/// gravity and density).
struct ParamOverrides {
  std::optional<double> rho, mu, g, zeta, dt, T;
};

/// Square-mesh discretization protocol: dt = 0.25*sqrt(1/N) with N the
/// division count per side.
double protocol_dt(int N);

ScenarioBundle build_scenario(const ManufacturedCase& c, int N, int order,
                              double perturbation = 0.2, std::uint64_t seed = 1);
ScenarioBundle build_scenario(const GaussianDropCase& c, int N, int order, double c0,
                              double perturbation = 0.2, std::uint64_t seed = 1,
                              const ParamOverrides& over = {});
ScenarioBundle build_scenario(const BayCase& c, int order, double c0,
                              const ParamOverrides& over = {});

struct SweepRow {
  double c0 = 0.0;
  double eta_l2_l2 = 0.0;
};
struct SweepResult {
  std::vector<SweepRow> table;
  double argmin = 0.0;
};

/// One full simulation per c0 value; reports the l2(L2) norm of eta over
/// steps 1..N_T and the minimizing c0.
SweepResult sweep_c0(const std::function<ScenarioBundle(double)>& make_scenario,
                     const std::vector<double>& values);

} // namespace swe

#endif
