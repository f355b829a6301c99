#include "surftac/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "surftac/errors.hpp"

namespace surftac {

double TriangleMesh::total_area() const {
    double a = 0.0;
    for (double fa : face_areas) a += fa;
    return a;
}

double TriangleMesh::bbox_diagonal() const {
    if (vertices.empty()) return 0.0;
    Vec3 lo = vertices[0], hi = vertices[0];
    for (const Vec3& v : vertices) {
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    }
    return distance(lo, hi);
}

void TriangleMesh::finalize(int* dropped_faces) {
    if (faces.empty()) throw IoError("mesh has no faces");
    const int nv = static_cast<int>(vertices.size());
    std::vector<std::array<int, 3>> kept;
    face_normals.clear();
    face_areas.clear();
    int dropped = 0;
    for (const auto& f : faces) {
        for (int idx : f) {
            if (idx < 0 || idx >= nv)
                throw IoError("face index " + std::to_string(idx) + " out of range");
        }
        Vec3 e1 = vertices[f[1]] - vertices[f[0]];
        Vec3 e2 = vertices[f[2]] - vertices[f[0]];
        Vec3 c = cross(e1, e2);
        double area2 = norm(c);
        if (area2 <= 0.0) {
            ++dropped;
            continue;
        }
        kept.push_back(f);
        face_normals.push_back(c / area2);
        face_areas.push_back(0.5 * area2);
    }
    if (kept.empty()) throw IoError("all faces are degenerate");
    if (dropped > 0)
        std::cerr << "warning: dropped " << dropped << " degenerate face(s)\n";
    if (dropped_faces) *dropped_faces = dropped;
    faces = std::move(kept);
}

namespace {

void fan_triangulate(const std::vector<int>& poly, std::vector<std::array<int, 3>>& out) {
    for (std::size_t i = 1; i + 1 < poly.size(); ++i)
        out.push_back({poly[0], poly[static_cast<int>(i)], poly[i + 1]});
}

TriangleMesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    TriangleMesh mesh;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            Vec3 v;
            ss >> v.x >> v.y >> v.z;
            if (!ss) throw IoError("bad vertex record in " + path);
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> poly;
            std::string tok;
            while (ss >> tok) {
                // "idx", "idx/uv", "idx//n", "idx/uv/n"; negatives count from the end
                int idx = std::stoi(tok.substr(0, tok.find('/')));
                if (idx < 0) idx = static_cast<int>(mesh.vertices.size()) + idx;
                else idx -= 1;
                poly.push_back(idx);
            }
            if (poly.size() < 3) throw IoError("face with fewer than 3 vertices in " + path);
            fan_triangulate(poly, mesh.faces);
        }
        // other records (vn, vt, usemtl, ...) ignored
    }
    return mesh;
}

struct PlyProperty {
    std::string type;  // scalar type, or list count/value types joined for lists
    std::string name;
    bool is_list = false;
    std::string count_type, value_type;
};

std::size_t ply_type_size(const std::string& t) {
    if (t == "char" || t == "uchar" || t == "int8" || t == "uint8") return 1;
    if (t == "short" || t == "ushort" || t == "int16" || t == "uint16") return 2;
    if (t == "int" || t == "uint" || t == "int32" || t == "uint32" || t == "float" ||
        t == "float32")
        return 4;
    if (t == "double" || t == "float64") return 8;
    throw IoError("unknown ply type " + t);
}

double read_binary_scalar(std::istream& in, const std::string& type) {
    unsigned char buf[8];
    std::size_t sz = ply_type_size(type);
    in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(sz));
    if (!in) throw IoError("unexpected end of ply payload");
    auto as = [&](auto v) {
        std::memcpy(&v, buf, sizeof(v));
        return static_cast<double>(v);
    };
    if (type == "char" || type == "int8") return as(std::int8_t{});
    if (type == "uchar" || type == "uint8") return as(std::uint8_t{});
    if (type == "short" || type == "int16") return as(std::int16_t{});
    if (type == "ushort" || type == "uint16") return as(std::uint16_t{});
    if (type == "int" || type == "int32") return as(std::int32_t{});
    if (type == "uint" || type == "uint32") return as(std::uint32_t{});
    if (type == "float" || type == "float32") return as(float{});
    return as(double{});
}

TriangleMesh load_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("ply", 0) != 0) throw IoError(path + " is not a ply file");

    bool binary = false;
    struct Element {
        std::string name;
        std::size_t count = 0;
        std::vector<PlyProperty> props;
    };
    std::vector<Element> elements;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "comment" || tag == "obj_info") continue;
        if (tag == "format") {
            std::string fmt;
            ss >> fmt;
            if (fmt == "ascii") binary = false;
            else if (fmt == "binary_little_endian") binary = true;
            else throw IoError("unsupported ply format " + fmt);
        } else if (tag == "element") {
            Element e;
            ss >> e.name >> e.count;
            elements.push_back(e);
        } else if (tag == "property") {
            if (elements.empty()) throw IoError("property before element in " + path);
            PlyProperty p;
            std::string t;
            ss >> t;
            if (t == "list") {
                p.is_list = true;
                ss >> p.count_type >> p.value_type;
            } else {
                p.type = t;
            }
            ss >> p.name;
            elements.back().props.push_back(p);
        } else if (tag == "end_header") {
            break;
        }
    }

    TriangleMesh mesh;
    for (const Element& e : elements) {
        for (std::size_t i = 0; i < e.count; ++i) {
            double x = 0, y = 0, z = 0;
            std::vector<int> poly;
            if (!binary) {
                std::getline(in, line);
                if (!in) throw IoError("unexpected end of ply payload");
                std::istringstream ss(line);
                for (const PlyProperty& p : e.props) {
                    if (p.is_list) {
                        std::size_t n;
                        ss >> n;
                        poly.resize(n);
                        for (auto& v : poly) ss >> v;
                    } else {
                        double v;
                        ss >> v;
                        if (p.name == "x") x = v;
                        else if (p.name == "y") y = v;
                        else if (p.name == "z") z = v;
                    }
                }
            } else {
                for (const PlyProperty& p : e.props) {
                    if (p.is_list) {
                        auto n = static_cast<std::size_t>(read_binary_scalar(in, p.count_type));
                        poly.resize(n);
                        for (auto& v : poly)
                            v = static_cast<int>(read_binary_scalar(in, p.value_type));
                    } else {
                        double v = read_binary_scalar(in, p.type);
                        if (p.name == "x") x = v;
                        else if (p.name == "y") y = v;
                        else if (p.name == "z") z = v;
                    }
                }
            }
            if (e.name == "vertex") {
                mesh.vertices.push_back({x, y, z});
            } else if (e.name == "face" && !poly.empty()) {
                if (poly.size() < 3) throw IoError("face with fewer than 3 vertices in " + path);
                fan_triangulate(poly, mesh.faces);
            }
        }
    }
    return mesh;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    std::string tail = s.substr(s.size() - suffix.size());
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return tail == suffix;
}

}  // namespace

TriangleMesh load_mesh(const std::string& path) {
    TriangleMesh mesh;
    if (has_suffix(path, ".obj")) mesh = load_obj(path);
    else if (has_suffix(path, ".ply")) mesh = load_ply(path);
    else throw IoError("unsupported mesh format: " + path + " (expected .obj or .ply)");
    if (mesh.faces.empty()) throw IoError(path + " contains no faces");
    mesh.finalize();
    return mesh;
}

void save_mesh_obj(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out.precision(17);
    for (const Vec3& v : mesh.vertices) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void save_mesh_ply(const TriangleMesh& mesh, const std::string& path, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "ply\nformat " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n"
        << "element vertex " << mesh.vertices.size() << "\n"
        << "property float x\nproperty float y\nproperty float z\n"
        << "element face " << mesh.faces.size() << "\n"
        << "property list uchar int vertex_indices\nend_header\n";
    if (binary) {
        for (const Vec3& v : mesh.vertices) {
            float xyz[3] = {static_cast<float>(v.x), static_cast<float>(v.y),
                            static_cast<float>(v.z)};
            out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
        }
        for (const auto& f : mesh.faces) {
            unsigned char n = 3;
            std::int32_t idx[3] = {f[0], f[1], f[2]};
            out.write(reinterpret_cast<const char*>(&n), 1);
            out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
        }
    } else {
        out.precision(9);
        for (const Vec3& v : mesh.vertices) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
        for (const auto& f : mesh.faces)
            out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    }
}

}  // namespace surftac
