#include "swe/characteristics.hpp"

#include <cmath>
#include <string>

#include "swe/errors.hpp"

namespace swe {

VectorField extrapolate_velocity(const VectorField& u_prev, const VectorField& u_prev2) {
  if (u_prev.mesh != u_prev2.mesh)
    throw InputError("extrapolate_velocity: fields live on different meshes");
  VectorField out(*u_prev.mesh);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = 2.0 * u_prev.values[i] - u_prev2.values[i];
  return out;
}

FootTable build_foot_table(const TriMesh& mesh, const VectorField& v, double dt, int steps,
                           const QuadratureRule& quad) {
  if (!(dt > 0.0)) throw InputError("build_foot_table: dt must be positive");
  if (steps != 1 && steps != 2) throw InputError("build_foot_table: steps must be 1 or 2");

  FootTable table;
  table.mesh = &mesh;
  table.quad = &quad;
  table.steps = steps;
  table.dt = dt;
  const std::size_t nq = quad.points.size();
  const std::size_t total = static_cast<std::size_t>(mesh.n_triangles()) * nq;
  table.feet.resize(total);
  table.gamma.resize(total);
  table.clipped.assign(total, 0);

  const double s_dt = steps * dt;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& tri = mesh.triangles[e];
    const Vec2 p0 = mesh.vertices[tri[0]], p1 = mesh.vertices[tri[1]], p2 = mesh.vertices[tri[2]];
    const Vec2 v0 = v.values[tri[0]], v1 = v.values[tri[1]], v2 = v.values[tri[2]];

    // gamma is constant per element: det(I - steps*dt*grad v).
    const auto J = element_gradient(v, e);
    const double g11 = 1.0 - s_dt * J[0][0];
    const double g12 = -s_dt * J[0][1];
    const double g21 = -s_dt * J[1][0];
    const double g22 = 1.0 - s_dt * J[1][1];
    const double gamma_e = g11 * g22 - g12 * g21;

    for (std::size_t q = 0; q < nq; ++q) {
      const auto& lam = quad.points[q].lambda;
      const Vec2 x = lam[0] * p0 + lam[1] * p1 + lam[2] * p2;
      const Vec2 vx = lam[0] * v0 + lam[1] * v1 + lam[2] * v2;
      Vec2 foot = x - s_dt * vx;

      const std::size_t idx = e * nq + q;
      LocateResult loc = locate_point(mesh, foot, e);
      if (!loc.found) {
        foot = clip_to_boundary(mesh, x, foot);
        loc = locate_point(mesh, foot, e);
        if (!loc.found)
          throw InternalError("foot location failed after clipping (element " +
                              std::to_string(e) + ")");
        table.clipped[idx] = 1;
        ++table.n_clipped;
      }
      table.feet[idx] = loc.bc;
      table.gamma[idx] = gamma_e;
    }
  }
  return table;
}

std::vector<double> rhs_conservative(const TriMesh& mesh, const ScalarField& phi_prev,
                                     const FootTable& feet) {
  if (feet.mesh != &mesh || phi_prev.mesh != &mesh)
    throw InputError("rhs_conservative: mesh mismatch");
  std::vector<double> load(mesh.n_vertices(), 0.0);
  const auto& q = *feet.quad;
  const std::size_t nq = q.points.size();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& tri = mesh.triangles[e];
    const double area = mesh.element_geometry[e].area;
    for (std::size_t k = 0; k < nq; ++k) {
      const std::size_t idx = e * nq + k;
      const double val =
          area * q.points[k].weight * feet.gamma[idx] * eval_field(phi_prev, feet.feet[idx]);
      for (int i = 0; i < 3; ++i) load[tri[i]] += val * q.points[k].lambda[i];
    }
  }
  return load;
}

std::vector<double> rhs_nonconservative(const TriMesh& mesh, const VectorField& u_prev,
                                        const ScalarField& phi_weight, const FootTable& feet) {
  if (feet.mesh != &mesh || u_prev.mesh != &mesh || phi_weight.mesh != &mesh)
    throw InputError("rhs_nonconservative: mesh mismatch");
  const double mn = phi_weight.min_value();
  if (!(mn > 0.0))
    throw PositivityLost("rhs_nonconservative: min nodal phi = " + std::to_string(mn));

  std::vector<double> load(2 * mesh.n_vertices(), 0.0);
  const auto& q = *feet.quad;
  const std::size_t nq = q.points.size();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& tri = mesh.triangles[e];
    const double area = mesh.element_geometry[e].area;
    const double w0 = phi_weight.values[tri[0]], w1 = phi_weight.values[tri[1]],
                 w2 = phi_weight.values[tri[2]];
    for (std::size_t k = 0; k < nq; ++k) {
      const auto& lam = q.points[k].lambda;
      const std::size_t idx = e * nq + k;
      const double phi_src = lam[0] * w0 + lam[1] * w1 + lam[2] * w2;
      const Vec2 u_foot = eval_field(u_prev, feet.feet[idx]);
      const double c = area * q.points[k].weight * phi_src;
      for (int i = 0; i < 3; ++i) {
        load[2 * tri[i] + 0] += c * lam[i] * u_foot.x;
        load[2 * tri[i] + 1] += c * lam[i] * u_foot.y;
      }
    }
  }
  return load;
}

} // namespace swe
