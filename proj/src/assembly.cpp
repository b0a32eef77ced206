#include "swe/assembly.hpp"

#include <cmath>

#include "swe/errors.hpp"

namespace swe {

namespace {

void require_positive(const ScalarField& phi, const char* where) {
  const double m = phi.min_value();
  if (!(m > 0.0))
    throw PositivityLost(std::string(where) + ": min nodal phi = " + std::to_string(m));
}

// integral over the reference triangle (normalized by area) of
// lambda_a lambda_b lambda_c, computed with the degree-4 rule.
struct CubicTable {
  double t[3][3][3];
  CubicTable() {
    const auto& q = quad_deg4();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = 0.0;
          for (const auto& p : q.points) s += p.weight * p.lambda[a] * p.lambda[b] * p.lambda[c];
          t[a][b][c] = s;
        }
  }
};

const CubicTable& cubic_table() {
  static const CubicTable tbl;
  return tbl;
}

// Same for lambda_a lambda_b.
struct QuadTable {
  double t[3][3];
  QuadTable() {
    const auto& q = quad_deg4();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (const auto& p : q.points) s += p.weight * p.lambda[a] * p.lambda[b];
        t[a][b] = s;
      }
  }
};

const QuadTable& quad_table() {
  static const QuadTable tbl;
  return tbl;
}

// D(basis_{a,c}) : D(basis_{b,d}) for P1 gradients ga, gb.
inline double strain_product(const Vec2& ga, int c, const Vec2& gb, int d) {
  if (c == 0 && d == 0) return ga.x * gb.x + 0.5 * ga.y * gb.y;
  if (c == 1 && d == 1) return ga.y * gb.y + 0.5 * ga.x * gb.x;
  if (c == 0 && d == 1) return 0.5 * ga.y * gb.x;
  return 0.5 * ga.x * gb.y; // c == 1, d == 0
}

} // namespace

SparseSymMatrix assemble_mass(const TriMesh& mesh) {
  std::vector<std::tuple<int, int, double>> trip;
  trip.reserve(static_cast<std::size_t>(mesh.n_triangles()) * 9);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    const double a = mesh.element_geometry[e].area;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trip.emplace_back(t[i], t[j], i == j ? a / 6.0 : a / 12.0);
  }
  return SparseSymMatrix::from_triplets(mesh.n_vertices(), trip);
}

std::vector<double> lumped_mass(const TriMesh& mesh) {
  std::vector<double> m(mesh.n_vertices(), 0.0);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const double third = mesh.element_geometry[e].area / 3.0;
    for (int k = 0; k < 3; ++k) m[mesh.triangles[e][k]] += third;
  }
  return m;
}

VelocityAssembler::VelocityAssembler(const TriMesh& mesh) : mesh_(&mesh) {
  std::vector<std::pair<int, int>> pat;
  pat.reserve(static_cast<std::size_t>(mesh.n_triangles()) * 36);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) pat.emplace_back(2 * t[i] + c, 2 * t[j] + d);
  }
  proto_ = SparseSymMatrix::pattern(2 * mesh.n_vertices(), pat);

  scatter_.resize(mesh.n_triangles());
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 2; ++c)
        for (int j = 0; j < 3; ++j)
          for (int d = 0; d < 2; ++d) {
            const int local = (2 * i + c) * 6 + (2 * j + d);
            scatter_[e][local] = proto_.find(2 * t[i] + c, 2 * t[j] + d);
          }
  }
}

SparseSymMatrix VelocityAssembler::assemble_system(const ScalarField& phi, double mass_coef,
                                                   double mu) const {
  require_positive(phi, "assemble velocity system");
  SparseSymMatrix A = proto_;
  const auto& T = cubic_table();
  for (int e = 0; e < mesh_->n_triangles(); ++e) {
    const auto& t = mesh_->triangles[e];
    const auto& geo = mesh_->element_geometry[e];
    const double p0 = phi.values[t[0]], p1 = phi.values[t[1]], p2 = phi.values[t[2]];
    const double phi_int = geo.area * (p0 + p1 + p2) / 3.0; // exact for linear phi
    double local[36];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double mass =
            mass_coef * geo.area *
            (p0 * T.t[i][j][0] + p1 * T.t[i][j][1] + p2 * T.t[i][j][2]);
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) {
            double v = 2.0 * mu * phi_int * strain_product(geo.grad[i], c, geo.grad[j], d);
            if (c == d) v += mass;
            local[(2 * i + c) * 6 + (2 * j + d)] = v;
          }
      }
    const auto& sc = scatter_[e];
    for (int k = 0; k < 36; ++k) A.value_at(sc[k]) += local[k];
  }
  return A;
}

SparseSymMatrix assemble_weighted_vector_mass(const TriMesh& mesh, const ScalarField& phi) {
  return VelocityAssembler(mesh).assemble_system(phi, 1.0, 0.0);
}

SparseSymMatrix assemble_a(const TriMesh& mesh, const ScalarField& phi, double mu) {
  return VelocityAssembler(mesh).assemble_system(phi, 0.0, mu);
}

std::vector<double> assemble_b_rhs(const TriMesh& mesh, const ScalarField& phi,
                                   const ScalarField& eta, double rho, double g) {
  std::vector<double> load(2 * mesh.n_vertices(), 0.0);
  const auto& S = quad_table();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    const double area = mesh.element_geometry[e].area;
    const Vec2 grad_eta = element_gradient(eta, e);
    for (int i = 0; i < 3; ++i) {
      double w = 0.0;
      for (int c = 0; c < 3; ++c) w += phi.values[t[c]] * S.t[i][c];
      const double f = rho * g * area * w;
      load[2 * t[i] + 0] += f * grad_eta.x;
      load[2 * t[i] + 1] += f * grad_eta.y;
    }
  }
  return load;
}

std::vector<double> assemble_source(const TriMesh& mesh, const TimeScalarFn& fn, double t) {
  std::vector<double> load(mesh.n_vertices(), 0.0);
  const auto& q = quad_deg5();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& tri = mesh.triangles[e];
    const double area = mesh.element_geometry[e].area;
    const Vec2 p0 = mesh.vertices[tri[0]], p1 = mesh.vertices[tri[1]], p2 = mesh.vertices[tri[2]];
    for (const auto& qp : q.points) {
      const Vec2 x = qp.lambda[0] * p0 + qp.lambda[1] * p1 + qp.lambda[2] * p2;
      const double f = fn(x, t) * qp.weight * area;
      for (int i = 0; i < 3; ++i) load[tri[i]] += f * qp.lambda[i];
    }
  }
  return load;
}

std::vector<double> assemble_source(const TriMesh& mesh, const TimeVectorFn& fn, double t) {
  std::vector<double> load(2 * mesh.n_vertices(), 0.0);
  const auto& q = quad_deg5();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& tri = mesh.triangles[e];
    const double area = mesh.element_geometry[e].area;
    const Vec2 p0 = mesh.vertices[tri[0]], p1 = mesh.vertices[tri[1]], p2 = mesh.vertices[tri[2]];
    for (const auto& qp : q.points) {
      const Vec2 x = qp.lambda[0] * p0 + qp.lambda[1] * p1 + qp.lambda[2] * p2;
      const Vec2 F = fn(x, t);
      const double wa = qp.weight * area;
      for (int i = 0; i < 3; ++i) {
        load[2 * tri[i] + 0] += wa * qp.lambda[i] * F.x;
        load[2 * tri[i] + 1] += wa * qp.lambda[i] * F.y;
      }
    }
  }
  return load;
}

} // namespace swe
