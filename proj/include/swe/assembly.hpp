#ifndef SWE_ASSEMBLY_HPP
#define SWE_ASSEMBLY_HPP

#include <array>
#include <functional>
#include <vector>

#include "swe/field.hpp"
#include "swe/mesh.hpp"
#include "swe/quadrature.hpp"
#include "swe/sparse.hpp"

namespace swe {

/// Consistent P1 mass matrix (no lumping), dimension = vertex count. SPD.
SparseSymMatrix assemble_mass(const TriMesh& mesh);

/// Row sums of the mass matrix (area/3 accumulated per vertex).
std::vector<double> lumped_mass(const TriMesh& mesh);

/// Velocity-block assembler. Vector degrees of freedom are interleaved,
/// dof(node, comp) = 2*node + comp. The sparsity pattern (full 2x2 blocks per
/// adjacent node pair) and the per-element scatter tables are built once and
/// reused, which keeps per-step reassembly cheap.
class VelocityAssembler {
public:
  explicit VelocityAssembler(const TriMesh& mesh);

  /// mass_coef * (phi u, v) + 2 mu (phi D(u), D(v)). Requires min phi > 0
  /// whenever a term with phi is assembled (throws PositivityLost).
  SparseSymMatrix assemble_system(const ScalarField& phi, double mass_coef, double mu) const;

  const TriMesh& mesh() const { return *mesh_; }

private:
  const TriMesh* mesh_;
  SparseSymMatrix proto_;
  std::vector<std::array<int, 36>> scatter_; // element -> local 6x6 value indices
};

/// (phi u, v) on the vector P1 space: block-diagonal weighted mass matrix,
/// SPD for min phi > 0. Degree-4 quadrature (exact, the integrand is cubic).
SparseSymMatrix assemble_weighted_vector_mass(const TriMesh& mesh, const ScalarField& phi);

/// a(u, v; phi) = 2 mu (phi D(u), D(v)). Symmetric positive-semidefinite;
/// D(u) is elementwise constant so the phi factor integrates exactly.
SparseSymMatrix assemble_a(const TriMesh& mesh, const ScalarField& phi, double mu);

/// b(eta, v; phi) = rho g (phi grad(eta), v) assembled as a load vector
/// (eta is known before the velocity solve).
std::vector<double> assemble_b_rhs(const TriMesh& mesh, const ScalarField& phi,
                                   const ScalarField& eta, double rho, double g);

using TimeScalarFn = std::function<double(const Vec2&, double)>;
using TimeVectorFn = std::function<Vec2(const Vec2&, double)>;

/// (f(., t), psi_i) with the degree-5 rule.
std::vector<double> assemble_source(const TriMesh& mesh, const TimeScalarFn& fn, double t);
/// (F(., t), v_i) with the degree-5 rule, interleaved components.
std::vector<double> assemble_source(const TriMesh& mesh, const TimeVectorFn& fn, double t);

} // namespace swe

#endif
