#ifndef SWE_DIAGNOSTICS_HPP
#define SWE_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "swe/assembly.hpp"
#include "swe/field.hpp"
#include "swe/sparse.hpp"

namespace swe {

struct SweState;
struct SweParams;

/// L2 norm as the mass-matrix quadratic form sqrt(z^T M z).
double l2_norm(const ScalarField& f, const SparseSymMatrix& mass);
double l2_norm(const VectorField& f, const SparseSymMatrix& mass);
/// Convenience overloads that assemble the mass matrix internally.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);

/// H1 seminorm: elementwise-constant gradients integrated exactly.
double h1_semi_norm(const ScalarField& f);
double h1_semi_norm(const VectorField& f);

/// Integral of the field (lumped-mass dot values, exact for P1).
double mass(const ScalarField& f);

/// Kinetic and potential energy: (rho/2) integral phi |u|^2 and
/// (rho g/2) integral eta^2, degree-5 quadrature.
struct EnergyPair {
  double kinetic = 0.0;
  double potential = 0.0;
};
EnergyPair energies(const SweState& state, const SweParams& params);

/// Experimental order of convergence between two (error, dt) pairs.
double eoc(double e_coarse, double e_fine, double dt_coarse, double dt_fine);

/// Discrete l2-in-time of L2 norms: sqrt(dt * sum of squares), the series
/// covering steps n = 1..N_T.
double l2_l2_norm(const std::vector<double>& l2_values, double dt);

/// Relative errors against the nodal interpolant of an exact solution,
/// accumulated over the discrete time grid (the max includes n = 0):
///   E0 = max_n ||z_h - I_h z|| / max_n ||I_h z||,  E1 the gradient version.
class ErrorTracker {
public:
  ErrorTracker(const TriMesh& mesh, const SparseSymMatrix& mass, TimeScalarFn eta_exact,
               TimeVectorFn u_exact);

  void record(const SweState& state);

  double e0_eta() const { return num0_eta_ / den0_eta_; }
  double e0_u() const { return num0_u_ / den0_u_; }
  double e1_eta() const { return num1_eta_ / den1_eta_; }
  double e1_u() const { return num1_u_ / den1_u_; }

private:
  const TriMesh* mesh_;
  const SparseSymMatrix* mass_;
  TimeScalarFn eta_exact_;
  TimeVectorFn u_exact_;
  double num0_eta_ = 0, den0_eta_ = 0, num0_u_ = 0, den0_u_ = 0;
  double num1_eta_ = 0, den1_eta_ = 0, num1_u_ = 0, den1_u_ = 0;
};

/// One diagnostics row per time level.
struct TimeSeriesRow {
  double t = 0.0;
  double l2_eta = 0.0;
  double mass_eta = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  int clipped_feet = 0; // not serialized to the CSV
};

/// Writes rows as "t,l2_eta,mass_eta,kinetic,potential" at full double
/// precision, one row per entry.
void write_timeseries_csv(const std::string& path, const std::vector<TimeSeriesRow>& rows);

} // namespace swe

#endif
