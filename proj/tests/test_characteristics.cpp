#include <doctest.h>

#include <cmath>
#include <random>

#include "swe/assembly.hpp"
#include "swe/characteristics.hpp"
#include "swe/errors.hpp"
#include "swe/mesh.hpp"

using namespace swe;

namespace {

std::vector<double> flatten(const VectorField& u) {
  std::vector<double> flat(2 * u.values.size());
  for (std::size_t v = 0; v < u.values.size(); ++v) {
    flat[2 * v] = u.values[v].x;
    flat[2 * v + 1] = u.values[v].y;
  }
  return flat;
}

// elements whose feet were all computed without clipping
std::vector<char> element_untouched(const TriMesh& mesh, const FootTable& feet) {
  const std::size_t nq = feet.quad->points.size();
  std::vector<char> ok(mesh.n_triangles(), 1);
  for (int e = 0; e < mesh.n_triangles(); ++e)
    for (std::size_t q = 0; q < nq; ++q)
      if (feet.clipped[e * nq + q]) ok[e] = 0;
  return ok;
}

} // namespace

TEST_CASE("velocity extrapolation") {
  const TriMesh mesh = gen_square_mesh(1.0, 4, 0.0);
  SUBCASE("steady state is preserved") {
    const VectorField c = interpolate(mesh, [](const Vec2&) { return Vec2{0.4, -0.7}; });
    const VectorField e = extrapolate_velocity(c, c);
    for (const auto& v : e.values) {
      CHECK(v.x == doctest::Approx(0.4));
      CHECK(v.y == doctest::Approx(-0.7));
    }
  }
  SUBCASE("uniform 2 and 1 give 3") {
    const VectorField u1 = interpolate(mesh, [](const Vec2&) { return Vec2{2.0, 2.0}; });
    const VectorField u2 = interpolate(mesh, [](const Vec2&) { return Vec2{1.0, 1.0}; });
    const VectorField e = extrapolate_velocity(u1, u2);
    for (const auto& v : e.values) {
      CHECK(v.x == 3.0);
      CHECK(v.y == 3.0);
    }
  }
  SUBCASE("exact on linear-in-time data") {
    auto u_of_t = [&](double t) {
      return interpolate(mesh, [t](const Vec2& x) { return Vec2{x.x * t, 1.0 - 2.0 * t}; });
    };
    const double dt = 0.25, tn = 1.0;
    const VectorField expect = u_of_t(tn);
    const VectorField e = extrapolate_velocity(u_of_t(tn - dt), u_of_t(tn - 2 * dt));
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      CHECK(e.values[v].x == doctest::Approx(expect.values[v].x).epsilon(1e-14));
      CHECK(e.values[v].y == doctest::Approx(expect.values[v].y).epsilon(1e-14));
    }
  }
}

TEST_CASE("foot table with zero velocity is the identity") {
  const TriMesh mesh = gen_square_mesh(1.0, 8, 0.2, {}, 3);
  const VectorField v0 = interpolate(mesh, [](const Vec2&) { return Vec2{0.0, 0.0}; });
  const FootTable feet = build_foot_table(mesh, v0, 0.1, 1);
  CHECK(feet.n_clipped == 0);
  const auto& q = *feet.quad;
  const std::size_t nq = q.points.size();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    for (std::size_t k = 0; k < nq; ++k) {
      const std::size_t idx = e * nq + k;
      CHECK(feet.gamma[idx] == 1.0);
      const Vec2 src = q.points[k].lambda[0] * mesh.vertices[t[0]] +
                       q.points[k].lambda[1] * mesh.vertices[t[1]] +
                       q.points[k].lambda[2] * mesh.vertices[t[2]];
      CHECK(norm(mesh.point_at(feet.feet[idx]) - src) <= 1e-12);
    }
  }
}

TEST_CASE("jacobian of the linear map x -> x - s dt x") {
  const TriMesh mesh = gen_square_mesh(1.0, 4, 0.2, {}, 5);
  const VectorField v = interpolate(mesh, [](const Vec2& x) { return x; });
  const double dt = 0.125;
  for (int steps : {1, 2}) {
    const FootTable feet = build_foot_table(mesh, v, dt, steps);
    const double expect = (1.0 - steps * dt) * (1.0 - steps * dt);
    for (double g : feet.gamma) CHECK(g == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("uniform translation: feet shift, gamma is one, composition is exact") {
  const TriMesh mesh = gen_square_mesh(1.0, 8, 0.0);
  const double dt = 0.01;
  const VectorField v = interpolate(mesh, [](const Vec2&) { return Vec2{1.0, 0.0}; });
  const FootTable feet = build_foot_table(mesh, v, dt, 1);
  const auto& q = *feet.quad;
  const std::size_t nq = q.points.size();
  for (double g : feet.gamma) CHECK(g == doctest::Approx(1.0).epsilon(1e-14));

  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    for (std::size_t k = 0; k < nq; ++k) {
      const std::size_t idx = e * nq + k;
      if (feet.clipped[idx]) continue;
      const Vec2 src = q.points[k].lambda[0] * mesh.vertices[t[0]] +
                       q.points[k].lambda[1] * mesh.vertices[t[1]] +
                       q.points[k].lambda[2] * mesh.vertices[t[2]];
      const Vec2 foot = mesh.point_at(feet.feet[idx]);
      CHECK(foot.x == doctest::Approx(src.x - dt).epsilon(1e-12));
      CHECK(foot.y == doctest::Approx(src.y).epsilon(1e-12));
    }
  }

  // phi globally linear: phi o X = phi - b*dt exactly, so the composed load
  // is M phi - b dt * lumped (closed-form translation oracle); checked away
  // from clipped elements.
  const double a = 0.7, b = 1.3;
  const ScalarField phi = interpolate(mesh, [&](const Vec2& x) { return a + b * x.x; });
  const auto load = rhs_conservative(mesh, phi, feet);
  const auto Mphi = assemble_mass(mesh).multiply(phi.values);
  const auto lump = lumped_mass(mesh);
  const auto ok = element_untouched(mesh, feet);
  for (int vtx = 0; vtx < mesh.n_vertices(); ++vtx) {
    bool clean = true;
    for (int e : mesh.vertex_star[vtx]) clean &= static_cast<bool>(ok[e]);
    if (!clean) continue;
    CHECK(load[vtx] == doctest::Approx(Mphi[vtx] - b * dt * lump[vtx]).epsilon(1e-12));
  }
}

TEST_CASE("gamma agrees with a finite-difference jacobian of the discrete map") {
  const TriMesh mesh = gen_square_mesh(1.0, 8, 0.2, {}, 11);
  const VectorField v = interpolate(mesh, [](const Vec2& x) {
    return Vec2{0.3 * std::sin(x.x + 2.0 * x.y), 0.2 * std::cos(2.0 * x.x - x.y)};
  });
  const double dt = 0.05;
  for (int steps : {1, 2}) {
    const FootTable feet = build_foot_table(mesh, v, dt, steps);
    const auto& q = *feet.quad;
    const std::size_t nq = q.points.size();
    const double delta = 1e-6 * mesh.max_diameter();
    int tested = 0;
    for (int e = 0; e < mesh.n_triangles(); ++e) {
      bool interior = true;
      for (int k = 0; k < 3; ++k) interior &= mesh.neighbors[e][k] >= 0;
      if (!interior) continue;
      auto discrete_map = [&](const Vec2& x) {
        const auto loc = locate_point(mesh, x, e);
        REQUIRE(loc.found);
        return x - (steps * dt) * eval_field(v, loc.bc);
      };
      for (std::size_t k = 0; k < nq; ++k) {
        const auto& lam = q.points[k].lambda;
        const auto& t = mesh.triangles[e];
        const Vec2 x = lam[0] * mesh.vertices[t[0]] + lam[1] * mesh.vertices[t[1]] +
                       lam[2] * mesh.vertices[t[2]];
        const Vec2 dxp = discrete_map({x.x + delta, x.y});
        const Vec2 dxm = discrete_map({x.x - delta, x.y});
        const Vec2 dyp = discrete_map({x.x, x.y + delta});
        const Vec2 dym = discrete_map({x.x, x.y - delta});
        const double j11 = (dxp.x - dxm.x) / (2 * delta);
        const double j12 = (dyp.x - dym.x) / (2 * delta);
        const double j21 = (dxp.y - dxm.y) / (2 * delta);
        const double j22 = (dyp.y - dym.y) / (2 * delta);
        const double det = j11 * j22 - j12 * j21;
        CHECK(std::abs(det - feet.gamma[e * nq + k]) <= 1e-7);
        ++tested;
      }
    }
    CHECK(tested > 100);
  }
}

TEST_CASE("conservative right-hand side with identity feet is a mass-matrix action") {
  const TriMesh mesh = gen_square_mesh(1.0, 8, 0.2, {}, 13);
  const VectorField v0 = interpolate(mesh, [](const Vec2&) { return Vec2{0.0, 0.0}; });
  const FootTable feet = build_foot_table(mesh, v0, 0.2, 1);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.5, 2.0);
  ScalarField phi(mesh);
  for (double& p : phi.values) p = unit(rng);
  const auto load = rhs_conservative(mesh, phi, feet);
  const auto Mphi = assemble_mass(mesh).multiply(phi.values);
  for (int i = 0; i < mesh.n_vertices(); ++i)
    CHECK(load[i] == doctest::Approx(Mphi[i]).epsilon(1e-13));
}

TEST_CASE("conservative right-hand side total for a constant field") {
  const TriMesh mesh = gen_square_mesh(1.0, 6, 0.2, {}, 15);
  const VectorField v0 = interpolate(mesh, [](const Vec2&) { return Vec2{0.0, 0.0}; });
  const FootTable feet = build_foot_table(mesh, v0, 0.1, 1);
  const ScalarField phi = interpolate(mesh, [](const Vec2&) { return 2.5; });
  const auto load = rhs_conservative(mesh, phi, feet);
  double s = 0.0;
  for (double x : load) s += x;
  CHECK(s == doctest::Approx(2.5).epsilon(1e-13)); // c |Omega|
}

TEST_CASE("discrete mass-transfer identity under uniform translation of a bump") {
  // interior bump, no clipping: the total of the composed load equals the
  // total of M phi to quadrature accuracy (change-of-variables oracle)
  const TriMesh mesh = gen_square_mesh(1.0, 16, 0.2, {}, 17);
  // displacement below the smallest quadrature-point-to-boundary distance,
  // so no foot is clipped and the change-of-variables identity is clean
  const double dt = 0.001;
  const VectorField v = interpolate(mesh, [](const Vec2&) { return Vec2{1.0, 0.0}; });
  const FootTable feet = build_foot_table(mesh, v, dt, 1);
  REQUIRE(feet.n_clipped == 0);
  const ScalarField bump = interpolate(mesh, [](const Vec2& x) {
    return std::exp(-50.0 * norm2(x - Vec2{0.55, 0.5}));
  });
  const auto load = rhs_conservative(mesh, bump, feet);
  double total = 0.0;
  for (double x : load) total += x;
  const auto Mphi = assemble_mass(mesh).multiply(bump.values);
  double total_mass = 0.0;
  for (double x : Mphi) total_mass += x;
  CHECK(std::abs(total - total_mass) <= 1e-6 * std::abs(total_mass));

  // consistency against psi = 1: the load total equals the quadrature of
  // gamma * (phi o X) computed directly from the foot table
  const auto& q = *feet.quad;
  const std::size_t nq = q.points.size();
  double direct = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e)
    for (std::size_t k = 0; k < nq; ++k) {
      const std::size_t idx = e * nq + k;
      direct += mesh.element_geometry[e].area * q.points[k].weight * feet.gamma[idx] *
                eval_field(bump, feet.feet[idx]);
    }
  CHECK(total == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("nonconservative right-hand side") {
  const TriMesh mesh = gen_square_mesh(1.0, 8, 0.2, {}, 19);
  const VectorField v0 = interpolate(mesh, [](const Vec2&) { return Vec2{0.0, 0.0}; });
  const FootTable feet = build_foot_table(mesh, v0, 0.1, 1);
  const ScalarField one = interpolate(mesh, [](const Vec2&) { return 1.0; });

  SUBCASE("identity feet with unit weight reproduce the vector mass action") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    VectorField u(mesh);
    for (auto& w : u.values) w = {unit(rng), unit(rng)};
    const auto load = rhs_nonconservative(mesh, u, one, feet);
    const auto Wu = assemble_weighted_vector_mass(mesh, one).multiply(flatten(u));
    for (std::size_t i = 0; i < load.size(); ++i)
      CHECK(load[i] == doctest::Approx(Wu[i]).epsilon(1e-13));
  }
  SUBCASE("zero velocity history gives the zero vector") {
    const VectorField zero = interpolate(mesh, [](const Vec2&) { return Vec2{0.0, 0.0}; });
    const auto load = rhs_nonconservative(mesh, zero, one, feet);
    for (double x : load) CHECK(x == 0.0);
  }
  SUBCASE("weight must be positive") {
    const ScalarField bad = interpolate(mesh, [](const Vec2& x) { return x.x - 0.5; });
    CHECK_THROWS_AS(rhs_nonconservative(mesh, interpolate(mesh, [](const Vec2&) {
                      return Vec2{1.0, 0.0};
                    }),
                                        bad, feet),
                    PositivityLost);
  }
}

TEST_CASE("nonconservative load under uniform translation matches the closed form") {
  // u linear and v uniform: u o X = u - dt * (grad u) v exactly, so the load
  // equals the weighted mass action on the shifted field (away from clipping)
  const TriMesh mesh = gen_square_mesh(1.0, 8, 0.0);
  const double dt = 0.01;
  const VectorField v = interpolate(mesh, [](const Vec2&) { return Vec2{1.0, 0.5}; });
  const FootTable feet = build_foot_table(mesh, v, dt, 1);
  const ScalarField w = interpolate(mesh, [](const Vec2& x) { return 1.0 + 0.5 * x.y; });
  const VectorField u = interpolate(mesh, [](const Vec2& x) {
    return Vec2{0.3 + 2.0 * x.x - x.y, -1.0 + x.x + 0.5 * x.y};
  });
  // u o X nodal values: u(x - dt v) is again linear
  const VectorField u_shift = interpolate(mesh, [&](const Vec2& x) {
    const Vec2 y{x.x - dt * 1.0, x.y - dt * 0.5};
    return Vec2{0.3 + 2.0 * y.x - y.y, -1.0 + y.x + 0.5 * y.y};
  });
  const auto load = rhs_nonconservative(mesh, u, w, feet);
  const auto expect = assemble_weighted_vector_mass(mesh, w).multiply(flatten(u_shift));
  const auto ok = element_untouched(mesh, feet);
  for (int vtx = 0; vtx < mesh.n_vertices(); ++vtx) {
    bool clean = true;
    for (int e : mesh.vertex_star[vtx]) clean &= static_cast<bool>(ok[e]);
    if (!clean) continue;
    for (int c = 0; c < 2; ++c)
      CHECK(load[2 * vtx + c] == doctest::Approx(expect[2 * vtx + c]).epsilon(1e-10));
  }
}

TEST_CASE("foot table input validation") {
  const TriMesh mesh = gen_square_mesh(1.0, 4, 0.0);
  const VectorField v0 = interpolate(mesh, [](const Vec2&) { return Vec2{0.0, 0.0}; });
  CHECK_THROWS_AS(build_foot_table(mesh, v0, 0.0, 1), InputError);
  CHECK_THROWS_AS(build_foot_table(mesh, v0, 0.1, 3), InputError);
}
