#include "swe/vtk.hpp"

#include <cstdio>

#include "swe/errors.hpp"

namespace swe {

void write_vtk_snapshot(const std::string& path, const TriMesh& mesh, const ScalarField& eta,
                        const VectorField& u, const std::string& title) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot open for writing: " + path);
  std::fprintf(f, "# vtk DataFile Version 3.0\n%s\nASCII\nDATASET UNSTRUCTURED_GRID\n",
               title.c_str());
  std::fprintf(f, "POINTS %d double\n", mesh.n_vertices());
  for (const auto& v : mesh.vertices) std::fprintf(f, "%.17g %.17g 0\n", v.x, v.y);
  std::fprintf(f, "CELLS %d %d\n", mesh.n_triangles(), 4 * mesh.n_triangles());
  for (const auto& t : mesh.triangles) std::fprintf(f, "3 %d %d %d\n", t[0], t[1], t[2]);
  std::fprintf(f, "CELL_TYPES %d\n", mesh.n_triangles());
  for (int e = 0; e < mesh.n_triangles(); ++e) std::fprintf(f, "5\n");
  std::fprintf(f, "POINT_DATA %d\n", mesh.n_vertices());
  std::fprintf(f, "SCALARS eta double 1\nLOOKUP_TABLE default\n");
  for (double v : eta.values) std::fprintf(f, "%.17g\n", v);
  std::fprintf(f, "VECTORS u double\n");
  for (const auto& v : u.values) std::fprintf(f, "%.17g %.17g 0\n", v.x, v.y);
  std::fclose(f);
}

} // namespace swe
