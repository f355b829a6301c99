#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "surftac/sampling.hpp"

namespace surftac {

// Codes are stable (0..3) and used in every serialized artifact.
enum class SurfaceLabel : int { flat = 0, curve = 1, edge = 2, corner = 3 };

const char* label_name(SurfaceLabel l);
SurfaceLabel label_from_code(int code);

struct LabelerConfig {
    double radius = 0.0;  // neighborhood radius; pipeline default is 4 * min_distance
    double t1 = 1e-4;     // flat/curve curvature threshold
    double t2 = 0.02;     // curve/hard-curve curvature threshold
    double delta23_threshold = 0.05;
    int kmeans_restarts = 3;
    int kmeans_max_iters = 50;
    int min_neighborhood = 6;

    void validate() const;  // enforces 0 < t1 < t2 < 1/3 and positive counts
};

struct CurvatureResult {
    double sigma1 = 0.0, sigma2 = 0.0, sigma3 = 0.0;  // descending, >= 0
    double curvature = 0.0;                           // sigma3 / (sigma1+sigma2+sigma3), in [0, 1/3]
};

struct LabeledCloud {
    SampleCloud cloud;
    std::vector<SurfaceLabel> labels;
    std::vector<CurvatureResult> curvatures;
};

struct LabelReport {
    std::vector<std::size_t> fallback_indices;  // labeled by nearest neighbor
    std::array<std::size_t, 4> histogram = {0, 0, 0, 0};
};

// Covariance (1/(n-1), mean-centered) of the neighborhood positions,
// eigenvalues in descending order, and their smallest-to-total ratio.
// Requires at least 4 points; all-identical points give zero curvature.
CurvatureResult local_curvature(const std::vector<Vec3>& neighborhood_positions);

struct KMeansResult {
    std::vector<int> assignments;
    double loss = 0.0;  // mean squared distance to assigned centroid
};

// Lloyd's algorithm with kmeans++ seeding, best of `restarts` runs.
KMeansResult kmeans(const std::vector<Vec3>& vectors, int k, int restarts, int max_iters,
                    std::uint64_t seed);

// loss(K=2) - loss(K=3) over the normals, clamped at zero.
double delta_loss_23(const std::vector<Vec3>& normals, const LabelerConfig& config,
                     std::uint64_t seed);

SurfaceLabel classify_point(const CurvatureResult& curvature,
                            const std::vector<Vec3>& normals_in_neighborhood,
                            const LabelerConfig& config, std::uint64_t seed);

// Labels every sample: neighborhood query, curvature, threshold partition,
// K-means split of hard-curve into edge/corner. Points whose neighborhood is
// thinner than config.min_neighborhood inherit the nearest labeled point's
// label and are listed in the report.
LabeledCloud label_cloud(const SampleCloud& cloud, const LabelerConfig& config,
                         std::uint64_t seed, LabelReport* report = nullptr);

// Ascii PLY with label codes and an inspection colormap
// (flat gray, curve green, edge blue, corner red).
void save_labeled_ply(const LabeledCloud& labeled, const std::string& path);

// CSV: index,x,y,z,curvature,label
void save_labeled_csv(const LabeledCloud& labeled, const std::string& path);

LabeledCloud load_labeled_csv(const SampleCloud& cloud, const std::string& path);

}  // namespace surftac
