#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "surftac/mesh.hpp"

namespace surftac {

struct SurfaceSample {
    Vec3 position;
    Vec3 normal;  // unit, outward (taken from the source face)
};

struct SampleCloud {
    std::vector<SurfaceSample> samples;
    double min_distance = 0.0;

    std::size_t size() const { return samples.size(); }
};

// Blue-noise surface sampling by dart throwing: candidates drawn from
// area-weighted faces with uniform barycentric coordinates, accepted when no
// earlier sample lies closer than min_distance. Pure function of the seed.
SampleCloud poisson_disk_sample(const TriangleMesh& mesh, double min_distance,
                                std::uint64_t seed);

// All indices i (center included) with |p_i - p_center| <= radius, ascending.
std::vector<std::size_t> radius_neighbors(const SampleCloud& cloud, std::size_t center_index,
                                          double radius);

// Uniform-grid index over sample positions for repeated range queries.
// Queries return exactly the same set as the brute-force radius_neighbors.
class NeighborIndex {
public:
    NeighborIndex(const SampleCloud& cloud, double cell_size);

    std::vector<std::size_t> query(const Vec3& center, double radius) const;

private:
    struct CellKey {
        std::int64_t x, y, z;
        bool operator==(const CellKey& o) const { return x == o.x && y == o.y && z == o.z; }
    };
    struct CellHash {
        std::size_t operator()(const CellKey& k) const {
            std::uint64_t h = 1469598103934665603ULL;
            for (std::int64_t v : {k.x, k.y, k.z}) {
                h ^= static_cast<std::uint64_t>(v);
                h *= 1099511628211ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };

    CellKey key_of(const Vec3& p) const;

    const SampleCloud& cloud_;
    double cell_;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells_;
};

// Ascii PLY with per-vertex x,y,z,nx,ny,nz; min_distance kept in a comment
// so the cloud round-trips.
void save_cloud_ply(const SampleCloud& cloud, const std::string& path);
SampleCloud load_cloud_ply(const std::string& path);

}  // namespace surftac
