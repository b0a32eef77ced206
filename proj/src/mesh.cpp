#include "swe/mesh.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "swe/errors.hpp"

namespace swe {

namespace {

constexpr double kInsideTol = 1e-12; // containment: every lambda >= -kInsideTol
constexpr double kEdgeBand = 1e-9;   // below this, resolve ties toward lower element index

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

} // namespace

void TriMesh::finalize() {
  const int nv = n_vertices();
  const int nt = n_triangles();
  element_geometry.assign(nt, {});
  neighbors.assign(nt, {-1, -1, -1});
  vertex_star.assign(nv, {});
  h_max_ = 0.0;
  total_area_ = 0.0;

  for (int e = 0; e < nt; ++e) {
    const auto& t = triangles[e];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= nv)
        throw GeometryError("triangle " + std::to_string(e) + " references vertex " +
                            std::to_string(t[k]) + " out of range");
    }
    const Vec2 p0 = vertices[t[0]], p1 = vertices[t[1]], p2 = vertices[t[2]];
    const double twice_area = cross(p1 - p0, p2 - p0);
    if (!(twice_area > 0.0))
      throw GeometryError("triangle " + std::to_string(e) +
                          " has non-positive area (vertices must be CCW)");
    auto& g = element_geometry[e];
    g.area = 0.5 * twice_area;
    // grad of the basis at vertex k is the inward normal of the opposite edge
    // scaled by 1/(2A).
    g.grad[0] = (1.0 / twice_area) * Vec2{p1.y - p2.y, p2.x - p1.x};
    g.grad[1] = (1.0 / twice_area) * Vec2{p2.y - p0.y, p0.x - p2.x};
    g.grad[2] = (1.0 / twice_area) * Vec2{p0.y - p1.y, p1.x - p0.x};
    total_area_ += g.area;
    h_max_ = std::max({h_max_, norm(p1 - p0), norm(p2 - p1), norm(p0 - p2)});
    for (int k = 0; k < 3; ++k) vertex_star[t[k]].push_back(e);
  }

  // Edge-to-element map; also used to validate the stored boundary.
  struct EdgeInfo {
    int elem[2] = {-1, -1};
    int local[2] = {-1, -1};
  };
  std::unordered_map<std::uint64_t, EdgeInfo> edges;
  edges.reserve(static_cast<std::size_t>(nt) * 3 / 2 + 8);
  for (int e = 0; e < nt; ++e) {
    const auto& t = triangles[e];
    for (int k = 0; k < 3; ++k) {
      const int a = t[(k + 1) % 3], b = t[(k + 2) % 3];
      auto& info = edges[edge_key(a, b)];
      if (info.elem[0] < 0) {
        info.elem[0] = e;
        info.local[0] = k;
      } else if (info.elem[1] < 0) {
        info.elem[1] = e;
        info.local[1] = k;
      } else {
        throw GeometryError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") is shared by more than two triangles");
      }
    }
  }
  for (const auto& [key, info] : edges) {
    (void)key;
    if (info.elem[1] >= 0) {
      neighbors[info.elem[0]][info.local[0]] = info.elem[1];
      neighbors[info.elem[1]][info.local[1]] = info.elem[0];
    }
  }

  std::unordered_map<std::uint64_t, int> boundary_seen;
  boundary_seen.reserve(boundary_edges.size() * 2);
  for (const auto& be : boundary_edges) {
    if (be.a < 0 || be.a >= nv || be.b < 0 || be.b >= nv || be.a == be.b)
      throw GeometryError("boundary edge (" + std::to_string(be.a) + "," +
                          std::to_string(be.b) + ") is invalid");
    if (be.label < 0 || be.label > 255)
      throw GeometryError("boundary edge label " + std::to_string(be.label) +
                          " out of range 0..255");
    const auto key = edge_key(be.a, be.b);
    auto it = edges.find(key);
    if (it == edges.end() || it->second.elem[1] >= 0)
      throw GeometryError("boundary edge (" + std::to_string(be.a) + "," +
                          std::to_string(be.b) + ") is not a topological boundary edge");
    if (++boundary_seen[key] > 1)
      throw GeometryError("boundary edge (" + std::to_string(be.a) + "," +
                          std::to_string(be.b) + ") listed more than once");
  }
  for (const auto& [key, info] : edges) {
    if (info.elem[1] < 0 && boundary_seen.find(key) == boundary_seen.end()) {
      const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
      throw GeometryError("topological boundary edge (" + std::to_string(a) + "," +
                          std::to_string(b) + ") is missing from boundary_edges");
    }
  }

  for (auto& star : vertex_star) std::sort(star.begin(), star.end());
}

std::array<double, 3> TriMesh::barycentric(int e, const Vec2& x) const {
  const auto& t = triangles[e];
  const Vec2 p0 = vertices[t[0]], p1 = vertices[t[1]], p2 = vertices[t[2]];
  const double inv2a = 0.5 / element_geometry[e].area;
  const double l0 = cross(p1 - x, p2 - x) * inv2a;
  const double l1 = cross(p2 - x, p0 - x) * inv2a;
  return {l0, l1, 1.0 - l0 - l1};
}

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file: " + path);

  // Token stream that skips '#' comment lines.
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw ParseError(path + ": unexpected end of file");
    return tokens[pos++];
  };
  auto next_int = [&](const char* what) {
    const std::string& t = next();
    try {
      std::size_t used = 0;
      const long v = std::stol(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return static_cast<int>(v);
    } catch (const std::exception&) {
      throw ParseError(path + ": expected integer for " + what + ", got '" + t + "'");
    }
  };
  auto next_double = [&](const char* what) {
    const std::string& t = next();
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw ParseError(path + ": expected number for " + what + ", got '" + t + "'");
    }
  };
  auto expect = [&](const char* kw) {
    const std::string& t = next();
    if (t != kw) throw ParseError(path + ": expected '" + kw + "', got '" + t + "'");
  };

  expect("smf");
  if (next_int("format version") != 1) throw ParseError(path + ": unsupported smf version");

  TriMesh mesh;
  expect("vertices");
  const int nv = next_int("vertex count");
  if (nv < 3) throw ParseError(path + ": vertex count must be at least 3");
  mesh.vertices.resize(nv);
  for (auto& v : mesh.vertices) {
    v.x = next_double("vertex x");
    v.y = next_double("vertex y");
  }
  expect("triangles");
  const int nt = next_int("triangle count");
  if (nt < 1) throw ParseError(path + ": triangle count must be at least 1");
  mesh.triangles.resize(nt);
  for (auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) t[k] = next_int("triangle vertex");
  expect("boundary_edges");
  const int nb = next_int("boundary edge count");
  if (nb < 3) throw ParseError(path + ": boundary edge count must be at least 3");
  mesh.boundary_edges.resize(nb);
  for (auto& be : mesh.boundary_edges) {
    be.a = next_int("boundary edge vertex");
    be.b = next_int("boundary edge vertex");
    be.label = next_int("boundary edge label");
  }
  if (pos != tokens.size()) throw ParseError(path + ": trailing content after boundary_edges");

  mesh.finalize();
  return mesh;
}

void save_mesh(const TriMesh& mesh, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot open for writing: " + path);
  std::fprintf(f, "smf 1\n");
  std::fprintf(f, "vertices %d\n", mesh.n_vertices());
  for (const auto& v : mesh.vertices) std::fprintf(f, "%.17g %.17g\n", v.x, v.y);
  std::fprintf(f, "triangles %d\n", mesh.n_triangles());
  for (const auto& t : mesh.triangles) std::fprintf(f, "%d %d %d\n", t[0], t[1], t[2]);
  std::fprintf(f, "boundary_edges %zu\n", mesh.boundary_edges.size());
  for (const auto& be : mesh.boundary_edges)
    std::fprintf(f, "%d %d %d\n", be.a, be.b, be.label);
  std::fclose(f);
}

TriMesh gen_square_mesh(double side_length, int N, double perturbation,
                        const SideLabels& labels, std::uint64_t seed) {
  if (N < 2) throw InputError("gen_square_mesh: N must be >= 2");
  if (!(side_length > 0.0)) throw InputError("gen_square_mesh: side_length must be positive");
  if (perturbation < 0.0 || perturbation > 0.3)
    throw InputError("gen_square_mesh: perturbation must lie in [0, 0.3]");

  const double h = side_length / N;
  TriMesh mesh;
  mesh.vertices.resize(static_cast<std::size_t>(N + 1) * (N + 1));
  auto vid = [N](int i, int j) { return j * (N + 1) + i; };
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i) mesh.vertices[vid(i, j)] = {i * h, j * h};

  if (perturbation > 0.0) {
    std::mt19937_64 rng(seed);
    // Portable uniform in [-1, 1): derived from raw 64-bit draws so the mesh
    // is bit-identical across standard libraries.
    auto uniform_pm1 = [&rng]() {
      return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    };
    const double amp = 0.5 * perturbation * h;
    for (int j = 1; j < N; ++j)
      for (int i = 1; i < N; ++i) {
        const double dx = amp * uniform_pm1();
        const double dy = amp * uniform_pm1();
        mesh.vertices[vid(i, j)] += {dx, dy};
      }
  }

  mesh.triangles.reserve(static_cast<std::size_t>(2) * N * N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }

  mesh.boundary_edges.reserve(static_cast<std::size_t>(4) * N);
  for (int i = 0; i < N; ++i)
    mesh.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), labels.bottom});
  for (int j = 0; j < N; ++j)
    mesh.boundary_edges.push_back({vid(N, j), vid(N, j + 1), labels.right});
  for (int i = N; i > 0; --i)
    mesh.boundary_edges.push_back({vid(i, N), vid(i - 1, N), labels.top});
  for (int j = N; j > 0; --j)
    mesh.boundary_edges.push_back({vid(0, j), vid(0, j - 1), labels.left});

  mesh.finalize();
  return mesh;
}

namespace {

// First element in ascending index order that contains x, or -1.
int full_scan(const TriMesh& mesh, const Vec2& x) {
  const int nt = mesh.n_triangles();
  for (int e = 0; e < nt; ++e) {
    const auto lam = mesh.barycentric(e, x);
    if (lam[0] >= -kInsideTol && lam[1] >= -kInsideTol && lam[2] >= -kInsideTol) return e;
  }
  return -1;
}

// The walk lands on *a* containing element; points within the edge band may
// be contained in several elements and must resolve to the lowest index to
// match the brute-force scan.
int resolve_ties(const TriMesh& mesh, const Vec2& x, int e,
                 const std::array<double, 3>& lam) {
  const double lmin = std::min({lam[0], lam[1], lam[2]});
  if (lmin > kEdgeBand) return e;
  int best = e;
  const auto& t = mesh.triangles[e];
  for (int k = 0; k < 3; ++k) {
    for (int c : mesh.vertex_star[t[k]]) {
      if (c >= best) continue;
      const auto lc = mesh.barycentric(c, x);
      if (lc[0] >= -kInsideTol && lc[1] >= -kInsideTol && lc[2] >= -kInsideTol) best = c;
    }
  }
  return best;
}

} // namespace

LocateResult locate_point(const TriMesh& mesh, const Vec2& x, int hint) {
  const int nt = mesh.n_triangles();
  int cur = (hint >= 0 && hint < nt) ? hint : 0;
  bool walk_ok = false;
  std::array<double, 3> lam{};
  const int max_steps = nt + 16;
  for (int step = 0; step < max_steps; ++step) {
    lam = mesh.barycentric(cur, x);
    int k_min = 0;
    if (lam[1] < lam[k_min]) k_min = 1;
    if (lam[2] < lam[k_min]) k_min = 2;
    if (lam[k_min] >= -kInsideTol) {
      walk_ok = true;
      break;
    }
    const int nb = mesh.neighbors[cur][k_min];
    if (nb < 0) break; // left the mesh through a boundary edge (or non-convexity)
    cur = nb;
  }

  LocateResult res;
  if (walk_ok) {
    res.found = true;
    res.bc.element = resolve_ties(mesh, x, cur, lam);
    res.bc.lambda = mesh.barycentric(res.bc.element, x);
    res.bc.lambda[2] = 1.0 - res.bc.lambda[0] - res.bc.lambda[1];
    return res;
  }
  const int e = full_scan(mesh, x);
  if (e < 0) return res;
  res.found = true;
  res.bc.element = e;
  res.bc.lambda = mesh.barycentric(e, x);
  res.bc.lambda[2] = 1.0 - res.bc.lambda[0] - res.bc.lambda[1];
  return res;
}

Vec2 clip_to_boundary(const TriMesh& mesh, const Vec2& x_from, const Vec2& x_to) {
  if (locate_point(mesh, x_to).found) return x_to;

  const Vec2 d = x_to - x_from;
  const double dlen = norm(d);
  if (dlen == 0.0) return x_from;

  double s_min = std::numeric_limits<double>::infinity();
  for (const auto& be : mesh.boundary_edges) {
    const Vec2 a = mesh.vertices[be.a];
    const Vec2 ab = mesh.vertices[be.b] - a;
    const double denom = cross(d, ab);
    if (std::abs(denom) < 1e-30) continue; // parallel; exit happens through another edge
    const double s = cross(a - x_from, ab) / denom;
    const double r = cross(a - x_from, d) / denom;
    if (s >= -1e-12 && s <= 1.0 + 1e-12 && r >= -1e-12 && r <= 1.0 + 1e-12)
      s_min = std::min(s_min, std::max(s, 0.0));
  }
  if (!std::isfinite(s_min)) return x_from; // grazing start on the boundary

  const double nudge = 1e-12 * mesh.max_diameter() / dlen;
  const double s = std::max(0.0, s_min - nudge);
  return x_from + s * d;
}

std::vector<int> BoundaryPartition::all_transmission_nodes() const {
  std::vector<int> out;
  for (const auto& [label, nodes] : transmission_nodes) {
    (void)label;
    out.insert(out.end(), nodes.begin(), nodes.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundaryPartition compute_boundary_normals(const TriMesh& mesh) {
  // Outward normal per boundary edge, oriented away from the (unique)
  // adjacent element.
  std::unordered_map<std::uint64_t, int> edge_elem;
  edge_elem.reserve(mesh.boundary_edges.size() * 2);
  for (int e = 0; e < mesh.n_triangles(); ++e)
    for (int k = 0; k < 3; ++k)
      if (mesh.neighbors[e][k] < 0) {
        const auto& t = mesh.triangles[e];
        edge_elem[edge_key(t[(k + 1) % 3], t[(k + 2) % 3])] = e;
      }

  std::vector<char> is_dirichlet(mesh.n_vertices(), 0);
  std::map<int, std::vector<int>> trans_by_label;
  std::map<int, Vec2> accum; // length-weighted normal sums at transmission nodes

  for (const auto& be : mesh.boundary_edges) {
    if (be.label == 0) {
      is_dirichlet[be.a] = 1;
      is_dirichlet[be.b] = 1;
      continue;
    }
    const auto it = edge_elem.find(edge_key(be.a, be.b));
    if (it == edge_elem.end())
      throw GeometryError("boundary edge without adjacent element"); // finalize() prevents this
    const Vec2 a = mesh.vertices[be.a], b = mesh.vertices[be.b];
    Vec2 n{b.y - a.y, a.x - b.x}; // |n| = edge length, orientation fixed below
    const Vec2 mid = 0.5 * (a + b);
    if (dot(n, mesh.centroid(it->second) - mid) > 0.0) n = -1.0 * n;
    trans_by_label[be.label].push_back(be.a);
    trans_by_label[be.label].push_back(be.b);
    accum[be.a] += n;
    accum[be.b] += n;
  }

  BoundaryPartition bp;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (is_dirichlet[v]) bp.dirichlet_nodes.push_back(v);

  for (auto& [label, nodes] : trans_by_label) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<int> pure;
    for (int v : nodes)
      if (!is_dirichlet[v]) pure.push_back(v); // mixed nodes are Dirichlet
    if (!pure.empty()) bp.transmission_nodes[label] = std::move(pure);
  }

  for (const auto& [label, nodes] : bp.transmission_nodes) {
    (void)label;
    for (int v : nodes) {
      if (bp.node_normals.count(v)) continue;
      const Vec2 sum = accum.at(v);
      const double len = norm(sum);
      if (len < 1e-12 * mesh.max_diameter())
        throw GeometryError("degenerate normal at transmission node " + std::to_string(v) +
                            ": adjacent edge normals cancel");
      bp.node_normals[v] = (1.0 / len) * sum;
    }
  }
  return bp;
}

} // namespace swe
