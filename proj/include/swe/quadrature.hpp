#ifndef SWE_QUADRATURE_HPP
#define SWE_QUADRATURE_HPP

#include <array>
#include <vector>

namespace swe {

/// Symmetric quadrature rule on the reference triangle, given in barycentric
/// coordinates with weights summing to one (weights are applied against the
/// physical triangle area). All rules have strictly positive weights.
struct QuadratureRule {
  struct Point {
    std::array<double, 3> lambda;
    double weight;
  };
  int degree = 0; // bivariate polynomials up to this degree integrate exactly
  std::vector<Point> points;
};

/// 3-point rule, exact for degree 2.
const QuadratureRule& quad_deg2();
/// 6-point rule, exact for degree 4.
const QuadratureRule& quad_deg4();
/// 7-point rule, exact for degree 5. Used for composed (semi-Lagrangian)
/// integrands and source terms.
const QuadratureRule& quad_deg5();

/// Checks that `rule` integrates all barycentric monomials up to its stated
/// degree exactly (relative tolerance `tol`). Throws InternalError otherwise.
void validate_rule(const QuadratureRule& rule, double tol = 1e-14);

} // namespace swe

#endif
