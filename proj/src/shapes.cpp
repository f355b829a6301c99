#include "surftac/shapes.hpp"

#include <cmath>
#include <map>

namespace surftac {

TriangleMesh make_box(double sx, double sy, double sz) {
    TriangleMesh m;
    double hx = sx / 2, hy = sy / 2, hz = sz / 2;
    for (int i = 0; i < 8; ++i)
        m.vertices.push_back({(i & 1) ? hx : -hx, (i & 2) ? hy : -hy, (i & 4) ? hz : -hz});
    auto quad = [&](int a, int b, int c, int d) {
        m.faces.push_back({a, b, c});
        m.faces.push_back({a, c, d});
    };
    quad(0, 2, 3, 1);  // -z
    quad(4, 5, 7, 6);  // +z
    quad(0, 1, 5, 4);  // -y
    quad(2, 6, 7, 3);  // +y
    quad(0, 4, 6, 2);  // -x
    quad(1, 3, 7, 5);  // +x
    m.finalize();
    return m;
}

TriangleMesh make_icosphere(double radius, int subdivisions) {
    TriangleMesh m;
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    m.vertices = {{-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                  {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (Vec3& v : m.vertices) v = normalized(v) * radius;
    m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 p = normalized(m.vertices[a] + m.vertices[b]) * radius;
            int idx = static_cast<int>(m.vertices.size());
            m.vertices.push_back(p);
            midpoint[key] = idx;
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(m.faces.size() * 4);
        for (const auto& f : m.faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.faces = std::move(next);
    }
    m.finalize();
    return m;
}

TriangleMesh make_cylinder(double radius, double height, int segments) {
    TriangleMesh m;
    double hz = height / 2;
    for (int i = 0; i < segments; ++i) {
        double a = 2.0 * M_PI * i / segments;
        double x = radius * std::cos(a), y = radius * std::sin(a);
        m.vertices.push_back({x, y, -hz});
        m.vertices.push_back({x, y, hz});
    }
    int bottom_center = static_cast<int>(m.vertices.size());
    m.vertices.push_back({0, 0, -hz});
    int top_center = bottom_center + 1;
    m.vertices.push_back({0, 0, hz});
    for (int i = 0; i < segments; ++i) {
        int j = (i + 1) % segments;
        int b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
        m.faces.push_back({b0, b1, t1});
        m.faces.push_back({b0, t1, t0});
        m.faces.push_back({bottom_center, b1, b0});
        m.faces.push_back({top_center, t0, t1});
    }
    m.finalize();
    return m;
}

TriangleMesh make_plane(double size) {
    TriangleMesh m;
    double h = size / 2;
    m.vertices = {{-h, -h, 0}, {h, -h, 0}, {h, h, 0}, {-h, h, 0}};
    m.faces = {{0, 1, 2}, {0, 2, 3}};
    m.finalize();
    return m;
}

}  // namespace surftac
