#ifndef SWE_SOLVER_HPP
#define SWE_SOLVER_HPP

#include <vector>

#include "swe/field.hpp"
#include "swe/mesh.hpp"
#include "swe/sparse.hpp"

namespace swe {

/// One essential constraint: dof (node, component) gets a prescribed value.
/// For scalar systems component must be 0 and vector_valued false.
struct Constraint {
  int node = -1;
  int component = 0;
  double value = 0.0;
};

struct ConstraintSet {
  bool vector_valued = true; // dof = 2*node + component when true, node otherwise
  std::vector<Constraint> items;
};

/// Symmetric elimination: b -= A[:,k]*value, zero row/column k, A[k,k] = 1,
/// b[k] = value. Keeps the matrix SPD. Equal duplicates are tolerated,
/// conflicting duplicates raise InputError.
void apply_constraints(SparseSymMatrix& A, std::vector<double>& b, const ConstraintSet& cs);

struct CgStats {
  int iterations = 0;
  double residual = 0.0;
};

/// Diagonally preconditioned conjugate gradients; relative residual
/// ||Ax-b||/||b|| <= tol. Throws NoConvergence past maxit (default
/// 10*dimension).
std::vector<double> solve_spd(const SparseSymMatrix& A, const std::vector<double>& b,
                              double tol = 1e-12, int maxit = -1, CgStats* stats = nullptr);

/// Dense Cholesky fallback for small systems (oracles, meshes under ~2000
/// nodes). Throws InputError above 2000 unknowns.
std::vector<double> solve_dense(const SparseSymMatrix& A, const std::vector<double>& b);

/// Transmission boundary values c0*sqrt(g*zeta)*(eta/phi)*n at every
/// transmission node plus homogeneous constraints at every Dirichlet node.
/// phi below 1e-8*zeta at a transmission node raises PositivityLost.
ConstraintSet tbc_values(const BoundaryPartition& bp, const ScalarField& phi,
                         const ScalarField& eta, double c0, double g, double zeta);

} // namespace swe

#endif
