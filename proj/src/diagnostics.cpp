#include "swe/diagnostics.hpp"

#include <cmath>
#include <cstdio>

#include "swe/errors.hpp"
#include "swe/quadrature.hpp"
#include "swe/scheme.hpp"

namespace swe {

double l2_norm(const ScalarField& f, const SparseSymMatrix& mass) {
  const auto mz = mass.multiply(f.values);
  double s = 0.0;
  for (std::size_t i = 0; i < mz.size(); ++i) s += f.values[i] * mz[i];
  return std::sqrt(std::max(0.0, s));
}

double l2_norm(const VectorField& f, const SparseSymMatrix& mass) {
  const int n = static_cast<int>(f.values.size());
  std::vector<double> c(n);
  double s = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    for (int i = 0; i < n; ++i) c[i] = comp == 0 ? f.values[i].x : f.values[i].y;
    const auto mc = mass.multiply(c);
    for (int i = 0; i < n; ++i) s += c[i] * mc[i];
  }
  return std::sqrt(std::max(0.0, s));
}

double l2_norm(const ScalarField& f) { return l2_norm(f, assemble_mass(*f.mesh)); }
double l2_norm(const VectorField& f) { return l2_norm(f, assemble_mass(*f.mesh)); }

double h1_semi_norm(const ScalarField& f) {
  double s = 0.0;
  for (int e = 0; e < f.mesh->n_triangles(); ++e)
    s += f.mesh->element_geometry[e].area * norm2(element_gradient(f, e));
  return std::sqrt(s);
}

double h1_semi_norm(const VectorField& f) {
  double s = 0.0;
  for (int e = 0; e < f.mesh->n_triangles(); ++e) {
    const auto J = element_gradient(f, e);
    s += f.mesh->element_geometry[e].area *
         (J[0][0] * J[0][0] + J[0][1] * J[0][1] + J[1][0] * J[1][0] + J[1][1] * J[1][1]);
  }
  return std::sqrt(s);
}

double mass(const ScalarField& f) {
  const auto lump = lumped_mass(*f.mesh);
  double s = 0.0;
  for (std::size_t i = 0; i < lump.size(); ++i) s += lump[i] * f.values[i];
  return s;
}

EnergyPair energies(const SweState& state, const SweParams& params) {
  const TriMesh& mesh = *state.phi.mesh;
  const auto& q = quad_deg5();
  double kin = 0.0, pot = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& tri = mesh.triangles[e];
    const double area = mesh.element_geometry[e].area;
    for (const auto& qp : q.points) {
      double phi = 0.0, eta = 0.0;
      Vec2 u{};
      for (int k = 0; k < 3; ++k) {
        phi += qp.lambda[k] * state.phi.values[tri[k]];
        eta += qp.lambda[k] * state.eta.values[tri[k]];
        u += qp.lambda[k] * state.u.values[tri[k]];
      }
      kin += qp.weight * area * 0.5 * params.rho * phi * norm2(u);
      pot += qp.weight * area * 0.5 * params.rho * params.g * eta * eta;
    }
  }
  return {kin, pot};
}

double eoc(double e_coarse, double e_fine, double dt_coarse, double dt_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw InputError("eoc: errors must be positive");
  if (!(dt_coarse > 0.0) || !(dt_fine > 0.0) || dt_coarse == dt_fine)
    throw InputError("eoc: time increments must be positive and distinct");
  return std::log(e_coarse / e_fine) / std::log(dt_coarse / dt_fine);
}

double l2_l2_norm(const std::vector<double>& l2_values, double dt) {
  if (!(dt > 0.0)) throw InputError("l2_l2_norm: dt must be positive");
  double s = 0.0;
  for (double v : l2_values) s += v * v;
  return std::sqrt(dt * s);
}

ErrorTracker::ErrorTracker(const TriMesh& mesh, const SparseSymMatrix& mass,
                           TimeScalarFn eta_exact, TimeVectorFn u_exact)
    : mesh_(&mesh), mass_(&mass), eta_exact_(std::move(eta_exact)),
      u_exact_(std::move(u_exact)) {}

void ErrorTracker::record(const SweState& state) {
  const double t = state.t;
  const ScalarField eta_ex =
      interpolate(*mesh_, [&](const Vec2& x) { return eta_exact_(x, t); });
  const VectorField u_ex = interpolate(*mesh_, [&](const Vec2& x) { return u_exact_(x, t); });

  ScalarField deta(*mesh_);
  for (std::size_t i = 0; i < deta.values.size(); ++i)
    deta.values[i] = state.eta.values[i] - eta_ex.values[i];
  VectorField du(*mesh_);
  for (std::size_t i = 0; i < du.values.size(); ++i)
    du.values[i] = state.u.values[i] - u_ex.values[i];

  num0_eta_ = std::max(num0_eta_, l2_norm(deta, *mass_));
  den0_eta_ = std::max(den0_eta_, l2_norm(eta_ex, *mass_));
  num0_u_ = std::max(num0_u_, l2_norm(du, *mass_));
  den0_u_ = std::max(den0_u_, l2_norm(u_ex, *mass_));
  num1_eta_ = std::max(num1_eta_, h1_semi_norm(deta));
  den1_eta_ = std::max(den1_eta_, h1_semi_norm(eta_ex));
  num1_u_ = std::max(num1_u_, h1_semi_norm(du));
  den1_u_ = std::max(den1_u_, h1_semi_norm(u_ex));
}

void write_timeseries_csv(const std::string& path, const std::vector<TimeSeriesRow>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot open for writing: " + path);
  std::fprintf(f, "t,l2_eta,mass_eta,kinetic,potential\n");
  for (const auto& r : rows)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.l2_eta, r.mass_eta, r.kinetic,
                 r.potential);
  std::fclose(f);
}

} // namespace swe
