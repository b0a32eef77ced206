#include "swe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swe/errors.hpp"

namespace swe {

void apply_constraints(SparseSymMatrix& A, std::vector<double>& b, const ConstraintSet& cs) {
  const int n = A.dimension();
  std::vector<std::pair<int, double>> fixed;
  fixed.reserve(cs.items.size());
  for (const auto& c : cs.items) {
    const int dof = cs.vector_valued ? 2 * c.node + c.component : c.node;
    if (dof < 0 || dof >= n) throw InputError("constraint dof out of range");
    fixed.emplace_back(dof, c.value);
  }
  std::sort(fixed.begin(), fixed.end());
  for (std::size_t i = 1; i < fixed.size(); ++i) {
    if (fixed[i].first == fixed[i - 1].first && fixed[i].second != fixed[i - 1].second)
      throw InputError("conflicting duplicate constraints at dof " +
                       std::to_string(fixed[i].first));
  }
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());

  // Move the known columns to the right-hand side first, then eliminate.
  for (const auto& [k, value] : fixed) {
    if (value != 0.0) {
      const auto row_ptr = A.row_ptr();
      const auto col = A.col_index();
      const auto val = A.values();
      for (int p = row_ptr[k]; p < row_ptr[k + 1]; ++p)
        b[col[p]] -= val[p] * value; // column k == row k by symmetry
    }
  }
  for (const auto& [k, value] : fixed) {
    A.eliminate_symmetric(k);
    b[k] = value;
  }
}

std::vector<double> solve_spd(const SparseSymMatrix& A, const std::vector<double>& b, double tol,
                              int maxit, CgStats* stats) {
  const int n = A.dimension();
  if (static_cast<int>(b.size()) != n) throw InputError("solve_spd: size mismatch");
  if (maxit < 0) maxit = 10 * n;

  std::vector<double> x(n, 0.0);
  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) {
    if (stats) *stats = {0, 0.0};
    return x;
  }

  std::vector<double> inv_diag = A.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw InputError("solve_spd: non-positive diagonal entry");
    d = 1.0 / d;
  }

  std::vector<double> r = b, z(n), p(n), Ap(n);
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0.0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];

  double rnorm = bnorm;
  for (int it = 1; it <= maxit; ++it) {
    A.multiply(p, Ap);
    double pAp = 0.0;
    for (int i = 0; i < n; ++i) pAp += p[i] * Ap[i];
    if (!(pAp > 0.0))
      throw NoConvergence("solve_spd: matrix is not positive definite", it, rnorm / bnorm);
    const double alpha = rz / pAp;
    rnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
      rnorm += r[i] * r[i];
    }
    rnorm = std::sqrt(rnorm);
    if (rnorm <= tol * bnorm) {
      if (stats) *stats = {it, rnorm / bnorm};
      return x;
    }
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) {
      z[i] = inv_diag[i] * r[i];
      rz_new += r[i] * z[i];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw NoConvergence("solve_spd: no convergence after " + std::to_string(maxit) +
                          " iterations (relative residual " + std::to_string(rnorm / bnorm) + ")",
                      maxit, rnorm / bnorm);
}

std::vector<double> solve_dense(const SparseSymMatrix& A, const std::vector<double>& b) {
  const int n = A.dimension();
  if (n > 2000) throw InputError("solve_dense: system too large for the dense fallback");
  std::vector<double> M(static_cast<std::size_t>(n) * n, 0.0);
  const auto row_ptr = A.row_ptr();
  const auto col = A.col_index();
  const auto val = A.values();
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) M[static_cast<std::size_t>(i) * n + col[p]] = val[p];

  // Cholesky M = L L^T in place (lower triangle).
  for (int j = 0; j < n; ++j) {
    double d = M[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) d -= M[static_cast<std::size_t>(j) * n + k] * M[static_cast<std::size_t>(j) * n + k];
    if (!(d > 0.0)) throw InputError("solve_dense: matrix is not positive definite");
    const double L = std::sqrt(d);
    M[static_cast<std::size_t>(j) * n + j] = L;
    for (int i = j + 1; i < n; ++i) {
      double s = M[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) s -= M[static_cast<std::size_t>(i) * n + k] * M[static_cast<std::size_t>(j) * n + k];
      M[static_cast<std::size_t>(i) * n + j] = s / L;
    }
  }
  std::vector<double> x = b;
  for (int i = 0; i < n; ++i) { // L y = b
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= M[static_cast<std::size_t>(i) * n + k] * x[k];
    x[i] = s / M[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) { // L^T x = y
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= M[static_cast<std::size_t>(k) * n + i] * x[k];
    x[i] = s / M[static_cast<std::size_t>(i) * n + i];
  }
  return x;
}

ConstraintSet tbc_values(const BoundaryPartition& bp, const ScalarField& phi,
                         const ScalarField& eta, double c0, double g, double zeta) {
  if (phi.mesh != eta.mesh) throw InputError("tbc_values: fields on different meshes");
  const double phi_floor = 1e-8 * zeta;
  const double speed = c0 * std::sqrt(g * zeta);

  ConstraintSet cs;
  cs.vector_valued = true;
  for (int v : bp.all_transmission_nodes()) {
    const double p = phi.values[v];
    if (p < phi_floor)
      throw PositivityLost("tbc_values: phi = " + std::to_string(p) + " at transmission node " +
                           std::to_string(v));
    const Vec2 n = bp.node_normals.at(v);
    const double mag = speed * eta.values[v] / p;
    cs.items.push_back({v, 0, mag * n.x});
    cs.items.push_back({v, 1, mag * n.y});
  }
  for (int v : bp.dirichlet_nodes) {
    cs.items.push_back({v, 0, 0.0});
    cs.items.push_back({v, 1, 0.0});
  }
  return cs;
}

} // namespace swe
