#ifndef SWE_VTK_HPP
#define SWE_VTK_HPP

#include <string>

#include "swe/field.hpp"
#include "swe/mesh.hpp"

namespace swe {

/// Legacy ASCII VTK unstructured-grid snapshot with point scalars `eta` and
/// point vectors `u`.
void write_vtk_snapshot(const std::string& path, const TriMesh& mesh, const ScalarField& eta,
                        const VectorField& u, const std::string& title = "swelg snapshot");

} // namespace swe

#endif
