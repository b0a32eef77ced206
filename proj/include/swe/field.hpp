#ifndef SWE_FIELD_HPP
#define SWE_FIELD_HPP

#include <functional>
#include <vector>

#include "swe/geometry.hpp"
#include "swe/mesh.hpp"

namespace swe {

/// Nodal coefficients of a continuous piecewise-linear scalar function.
struct ScalarField {
  const TriMesh* mesh = nullptr;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const TriMesh& m, double fill = 0.0)
      : mesh(&m), values(m.n_vertices(), fill) {}

  double min_value() const;
};

/// Nodal coefficients of a continuous piecewise-linear 2-vector function.
struct VectorField {
  const TriMesh* mesh = nullptr;
  std::vector<Vec2> values;

  VectorField() = default;
  explicit VectorField(const TriMesh& m, Vec2 fill = {})
      : mesh(&m), values(m.n_vertices(), fill) {}
};

using ScalarFn = std::function<double(const Vec2&)>;
using VectorFn = std::function<Vec2(const Vec2&)>;

/// Lagrange interpolation: nodal values are fn at the vertices. Throws
/// InputError if fn produces a non-finite value.
ScalarField interpolate(const TriMesh& mesh, const ScalarFn& fn);
VectorField interpolate(const TriMesh& mesh, const VectorFn& fn);

/// Barycentric evaluation at a located point.
double eval_field(const ScalarField& f, const BaryCoord& bc);
Vec2 eval_field(const VectorField& f, const BaryCoord& bc);

/// Elementwise-constant gradient of a P1 scalar field on element e.
Vec2 element_gradient(const ScalarField& f, int e);

/// Elementwise-constant gradient of a P1 vector field on element e;
/// grad[r][c] = d u_r / d x_c.
std::array<std::array<double, 2>, 2> element_gradient(const VectorField& f, int e);

} // namespace swe

#endif
