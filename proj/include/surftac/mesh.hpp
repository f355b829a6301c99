#pragma once

#include <array>
#include <string>
#include <vector>

#include "surftac/vec3.hpp"

namespace surftac {

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<Vec3> face_normals;  // unit, one per face
    std::vector<double> face_areas;

    double total_area() const;
    double bbox_diagonal() const;

    // Recomputes normals/areas, dropping zero-area faces. Throws if every
    // face is degenerate or there are no faces at all.
    void finalize(int* dropped_faces = nullptr);
};

// OBJ (v/f) or PLY (ascii / binary little endian), chosen by extension.
// Non-triangular faces are fan-triangulated.
TriangleMesh load_mesh(const std::string& path);

void save_mesh_obj(const TriangleMesh& mesh, const std::string& path);
void save_mesh_ply(const TriangleMesh& mesh, const std::string& path, bool binary);

}  // namespace surftac
