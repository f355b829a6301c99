#include "surftac/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "surftac/errors.hpp"
#include "surftac/rng.hpp"

namespace surftac {

namespace {

// Dart accepted iff no prior sample within min_distance; grid cell size
// equals min_distance, so a violating pair is at most one cell apart.
class DartGrid {
public:
    explicit DartGrid(double cell) : cell_(cell) {}

    bool conflicts(const Vec3& p) const {
        std::int64_t cx = coord(p.x), cy = coord(p.y), cz = coord(p.z);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = cells_.find({cx + dx, cy + dy, cz + dz});
                    if (it == cells_.end()) continue;
                    for (const Vec3& q : it->second)
                        if (distance_sq(p, q) < cell_ * cell_) return true;
                }
        return false;
    }

    void insert(const Vec3& p) { cells_[{coord(p.x), coord(p.y), coord(p.z)}].push_back(p); }

private:
    struct Key {
        std::int64_t x, y, z;
        bool operator==(const Key& o) const { return x == o.x && y == o.y && z == o.z; }
    };
    struct Hash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = 1469598103934665603ULL;
            for (std::int64_t v : {k.x, k.y, k.z}) {
                h ^= static_cast<std::uint64_t>(v);
                h *= 1099511628211ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };

    std::int64_t coord(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }

    double cell_;
    std::unordered_map<Key, std::vector<Vec3>, Hash> cells_;
};

}  // namespace

SampleCloud poisson_disk_sample(const TriangleMesh& mesh, double min_distance,
                                std::uint64_t seed) {
    if (!(min_distance > 0.0) || !std::isfinite(min_distance))
        throw std::invalid_argument("min_distance must be positive and finite");
    if (mesh.faces.empty()) throw std::invalid_argument("mesh has no faces");

    // Cumulative face areas for area-weighted face selection.
    std::vector<double> cum(mesh.faces.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
        acc += mesh.face_areas[i];
        cum[i] = acc;
    }

    const double hex_bound = mesh.total_area() / (min_distance * min_distance * 0.8660254037844386);
    const std::uint64_t budget =
        30 * std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(hex_bound)));

    Rng rng(seed);
    DartGrid grid(min_distance);
    SampleCloud cloud;
    cloud.min_distance = min_distance;
    for (std::uint64_t it = 0; it < budget; ++it) {
        double pick = rng.uniform() * acc;
        std::size_t fi = static_cast<std::size_t>(
            std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin());
        if (fi >= mesh.faces.size()) fi = mesh.faces.size() - 1;
        const auto& f = mesh.faces[fi];
        double u = rng.uniform(), v = rng.uniform();
        if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        Vec3 p = mesh.vertices[f[0]] * (1.0 - u - v) + mesh.vertices[f[1]] * u +
                 mesh.vertices[f[2]] * v;
        if (grid.conflicts(p)) continue;
        grid.insert(p);
        cloud.samples.push_back({p, mesh.face_normals[fi]});
    }
    if (cloud.samples.empty()) throw NumericalError("poisson disk sampling produced no samples");
    return cloud;
}

std::vector<std::size_t> radius_neighbors(const SampleCloud& cloud, std::size_t center_index,
                                          double radius) {
    if (center_index >= cloud.size()) throw std::out_of_range("center index out of range");
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    const Vec3& c = cloud.samples[center_index].position;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (distance_sq(c, cloud.samples[i].position) <= radius * radius) out.push_back(i);
    return out;
}

NeighborIndex::NeighborIndex(const SampleCloud& cloud, double cell_size)
    : cloud_(cloud), cell_(cell_size) {
    for (std::size_t i = 0; i < cloud.size(); ++i)
        cells_[key_of(cloud.samples[i].position)].push_back(i);
}

NeighborIndex::CellKey NeighborIndex::key_of(const Vec3& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
            static_cast<std::int64_t>(std::floor(p.y / cell_)),
            static_cast<std::int64_t>(std::floor(p.z / cell_))};
}

std::vector<std::size_t> NeighborIndex::query(const Vec3& center, double radius) const {
    std::vector<std::size_t> out;
    std::int64_t span = static_cast<std::int64_t>(std::ceil(radius / cell_));
    CellKey c = key_of(center);
    for (std::int64_t dx = -span; dx <= span; ++dx)
        for (std::int64_t dy = -span; dy <= span; ++dy)
            for (std::int64_t dz = -span; dz <= span; ++dz) {
                auto it = cells_.find({c.x + dx, c.y + dy, c.z + dz});
                if (it == cells_.end()) continue;
                for (std::size_t i : it->second)
                    if (distance_sq(center, cloud_.samples[i].position) <= radius * radius)
                        out.push_back(i);
            }
    std::sort(out.begin(), out.end());
    return out;
}

void save_cloud_ply(const SampleCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out.precision(17);
    out << "ply\nformat ascii 1.0\n"
        << "comment min_distance " << cloud.min_distance << "\n"
        << "element vertex " << cloud.size() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "property double nx\nproperty double ny\nproperty double nz\n"
        << "end_header\n";
    for (const SurfaceSample& s : cloud.samples)
        out << s.position.x << ' ' << s.position.y << ' ' << s.position.z << ' ' << s.normal.x
            << ' ' << s.normal.y << ' ' << s.normal.z << '\n';
}

SampleCloud load_cloud_ply(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("ply", 0) != 0) throw IoError(path + " is not a ply file");
    SampleCloud cloud;
    std::size_t count = 0;
    std::vector<std::string> props;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "comment") {
            std::string key;
            ss >> key;
            if (key == "min_distance") ss >> cloud.min_distance;
        } else if (tag == "element") {
            std::string name;
            ss >> name >> count;
            if (name != "vertex") throw IoError("unexpected element in cloud ply: " + name);
        } else if (tag == "property") {
            std::string type, name;
            ss >> type >> name;
            props.push_back(name);
        } else if (tag == "end_header") {
            break;
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        std::getline(in, line);
        if (!in) throw IoError("truncated cloud ply " + path);
        std::istringstream ss(line);
        SurfaceSample s;
        for (const std::string& name : props) {
            double v;
            ss >> v;
            if (name == "x") s.position.x = v;
            else if (name == "y") s.position.y = v;
            else if (name == "z") s.position.z = v;
            else if (name == "nx") s.normal.x = v;
            else if (name == "ny") s.normal.y = v;
            else if (name == "nz") s.normal.z = v;
        }
        cloud.samples.push_back(s);
    }
    return cloud;
}

}  // namespace surftac
