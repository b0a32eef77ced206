#include "swe/field.hpp"

#include <cmath>
#include <limits>

#include "swe/errors.hpp"

namespace swe {

double ScalarField::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values) m = std::min(m, v);
  return m;
}

ScalarField interpolate(const TriMesh& mesh, const ScalarFn& fn) {
  ScalarField f(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    f.values[v] = fn(mesh.vertices[v]);
    if (!std::isfinite(f.values[v]))
      throw InputError("interpolate: non-finite value at vertex " + std::to_string(v));
  }
  return f;
}

VectorField interpolate(const TriMesh& mesh, const VectorFn& fn) {
  VectorField f(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    f.values[v] = fn(mesh.vertices[v]);
    if (!std::isfinite(f.values[v].x) || !std::isfinite(f.values[v].y))
      throw InputError("interpolate: non-finite value at vertex " + std::to_string(v));
  }
  return f;
}

double eval_field(const ScalarField& f, const BaryCoord& bc) {
  const auto& t = f.mesh->triangles[bc.element];
  return bc.lambda[0] * f.values[t[0]] + bc.lambda[1] * f.values[t[1]] +
         bc.lambda[2] * f.values[t[2]];
}

Vec2 eval_field(const VectorField& f, const BaryCoord& bc) {
  const auto& t = f.mesh->triangles[bc.element];
  return bc.lambda[0] * f.values[t[0]] + bc.lambda[1] * f.values[t[1]] +
         bc.lambda[2] * f.values[t[2]];
}

Vec2 element_gradient(const ScalarField& f, int e) {
  const auto& t = f.mesh->triangles[e];
  const auto& g = f.mesh->element_geometry[e].grad;
  return f.values[t[0]] * g[0] + f.values[t[1]] * g[1] + f.values[t[2]] * g[2];
}

std::array<std::array<double, 2>, 2> element_gradient(const VectorField& f, int e) {
  const auto& t = f.mesh->triangles[e];
  const auto& g = f.mesh->element_geometry[e].grad;
  std::array<std::array<double, 2>, 2> J{};
  for (int k = 0; k < 3; ++k) {
    const Vec2 u = f.values[t[k]];
    J[0][0] += u.x * g[k].x;
    J[0][1] += u.x * g[k].y;
    J[1][0] += u.y * g[k].x;
    J[1][1] += u.y * g[k].y;
  }
  return J;
}

} // namespace swe
