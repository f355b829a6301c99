#pragma once

#include "surftac/mesh.hpp"

namespace surftac {

// Axis-aligned box centered at the origin, 12 triangles, outward normals.
TriangleMesh make_box(double sx, double sy, double sz);

// Icosphere: subdivided icosahedron projected onto a sphere of the given
// radius. subdivisions = 0 gives the bare icosahedron (20 faces).
TriangleMesh make_icosphere(double radius, int subdivisions);

// Closed cylinder along z, centered at the origin: side strip plus two cap
// fans, `segments` slices around the circumference.
TriangleMesh make_cylinder(double radius, double height, int segments);

// Single square in the z = 0 plane (two triangles, +z normal).
TriangleMesh make_plane(double size);

}  // namespace surftac
