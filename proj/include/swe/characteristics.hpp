#ifndef SWE_CHARACTERISTICS_HPP
#define SWE_CHARACTERISTICS_HPP

#include <cstdint>
#include <vector>

#include "swe/field.hpp"
#include "swe/mesh.hpp"
#include "swe/quadrature.hpp"

namespace swe {

/// Characteristic feet for every quadrature point of every element under the
/// upwind map x -> x - steps*dt*v(x). Entry q of element e lives at index
/// e*quad->points.size()+q. gamma is det(I - steps*dt*grad v) evaluated with
/// the source element's (constant) velocity gradient, also for clipped feet.
struct FootTable {
  const TriMesh* mesh = nullptr;
  const QuadratureRule* quad = nullptr;
  int steps = 1;
  double dt = 0.0;

  std::vector<BaryCoord> feet;
  std::vector<double> gamma;
  std::vector<std::uint8_t> clipped;
  int n_clipped = 0;
};

/// Second-order velocity extrapolation 2*u_prev - u_prev2.
VectorField extrapolate_velocity(const VectorField& u_prev, const VectorField& u_prev2);

/// Builds the foot table for velocity v, time increment dt and steps in
/// {1, 2}. Feet leaving the domain are clipped to the boundary. The degree-5
/// rule is the default for the composed integrands.
FootTable build_foot_table(const TriMesh& mesh, const VectorField& v, double dt, int steps,
                           const QuadratureRule& quad = quad_deg5());

/// Load vector of (phi_prev o X) * gamma against the scalar P1 basis.
std::vector<double> rhs_conservative(const TriMesh& mesh, const ScalarField& phi_prev,
                                     const FootTable& feet);

/// Load vector of rho-free (phi_weight * (u_prev o X), v): the weight is
/// evaluated at the source quadrature point, the velocity at the foot, and no
/// Jacobian enters. Interleaved components. Requires min phi_weight > 0.
std::vector<double> rhs_nonconservative(const TriMesh& mesh, const VectorField& u_prev,
                                        const ScalarField& phi_weight, const FootTable& feet);

} // namespace swe

#endif
