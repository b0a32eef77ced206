#include "swe/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "swe/errors.hpp"

namespace swe {

namespace {

QuadratureRule make_deg2() {
  QuadratureRule r;
  r.degree = 2;
  const double w = 1.0 / 3.0;
  r.points = {
      {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}, w},
      {{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}, w},
      {{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}, w},
  };
  return r;
}

void push_sym3(QuadratureRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({{b, a, a}, w});
  r.points.push_back({{a, b, a}, w});
  r.points.push_back({{a, a, b}, w});
}

QuadratureRule make_deg4() {
  // Dunavant degree-4 rule, two symmetric orbits, all weights positive.
  QuadratureRule r;
  r.degree = 4;
  push_sym3(r, 0.44594849091596488631832925388305, 0.22338158967801146569500700843312);
  push_sym3(r, 0.09157621350977074345957146340220, 0.10995174365532186763832632490021);
  return r;
}

QuadratureRule make_deg5() {
  QuadratureRule r;
  r.degree = 5;
  r.points.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 40.0});
  const double s15 = std::sqrt(15.0);
  push_sym3(r, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
  push_sym3(r, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
  return r;
}

// Exact integral of lambda0^p lambda1^q lambda2^r over the reference
// triangle, normalized by the triangle area: p! q! r! 2! / (p+q+r+2)!.
double monomial_integral(int p, int q, int r) {
  auto fact = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  return fact(p) * fact(q) * fact(r) * 2.0 / fact(p + q + r + 2);
}

const QuadratureRule& validated(const QuadratureRule& r) {
  validate_rule(r);
  return r;
}

} // namespace

void validate_rule(const QuadratureRule& rule, double tol) {
  for (const auto& pt : rule.points) {
    if (!(pt.weight > 0.0))
      throw InternalError("quadrature rule has a non-positive weight");
  }
  for (int d = 0; d <= rule.degree; ++d) {
    for (int p = 0; p <= d; ++p) {
      for (int q = 0; q <= d - p; ++q) {
        const int r = d - p - q;
        double s = 0.0;
        for (const auto& pt : rule.points) {
          s += pt.weight * std::pow(pt.lambda[0], p) * std::pow(pt.lambda[1], q) *
               std::pow(pt.lambda[2], r);
        }
        const double exact = monomial_integral(p, q, r);
        if (std::abs(s - exact) > tol * std::max(1.0, std::abs(exact))) {
          std::ostringstream os;
          os << "quadrature rule (degree " << rule.degree << ") misses monomial ("
             << p << "," << q << "," << r << "): got " << s << ", want " << exact;
          throw InternalError(os.str());
        }
      }
    }
  }
}

const QuadratureRule& quad_deg2() {
  static const QuadratureRule r = validated(make_deg2());
  return r;
}

const QuadratureRule& quad_deg4() {
  static const QuadratureRule r = validated(make_deg4());
  return r;
}

const QuadratureRule& quad_deg5() {
  static const QuadratureRule r = validated(make_deg5());
  return r;
}

} // namespace swe
