#include "surftac/labeler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "surftac/errors.hpp"
#include "surftac/parallel.hpp"
#include "surftac/rng.hpp"

namespace surftac {

const char* label_name(SurfaceLabel l) {
    switch (l) {
        case SurfaceLabel::flat: return "flat";
        case SurfaceLabel::curve: return "curve";
        case SurfaceLabel::edge: return "edge";
        case SurfaceLabel::corner: return "corner";
    }
    return "?";
}

SurfaceLabel label_from_code(int code) {
    if (code < 0 || code > 3) throw std::invalid_argument("label code out of range: " + std::to_string(code));
    return static_cast<SurfaceLabel>(code);
}

void LabelerConfig::validate() const {
    if (!(radius > 0.0)) throw ConfigError("labeler.radius must be positive");
    if (!(0.0 < t1 && t1 < t2 && t2 < 1.0 / 3.0))
        throw ConfigError("labeler thresholds must satisfy 0 < t1 < t2 < 1/3");
    if (delta23_threshold < 0.0) throw ConfigError("labeler.delta23_threshold must be >= 0");
    if (kmeans_restarts < 1) throw ConfigError("labeler.kmeans_restarts must be >= 1");
    if (kmeans_max_iters < 1) throw ConfigError("labeler.kmeans_max_iters must be >= 1");
    if (min_neighborhood < 4) throw ConfigError("labeler.min_neighborhood must be >= 4");
}

CurvatureResult local_curvature(const std::vector<Vec3>& pts) {
    if (pts.size() < 4)
        throw NumericalError("insufficient neighborhood: " + std::to_string(pts.size()) +
                             " points (need >= 4)");
    const double n = static_cast<double>(pts.size());
    Vec3 mean{0, 0, 0};
    for (const Vec3& p : pts) mean += p;
    mean *= 1.0 / n;

    SymMat3 cov = {0, 0, 0, 0, 0, 0};
    for (const Vec3& p : pts) {
        Vec3 d = p - mean;
        cov[0] += d.x * d.x;
        cov[1] += d.y * d.y;
        cov[2] += d.z * d.z;
        cov[3] += d.x * d.y;
        cov[4] += d.x * d.z;
        cov[5] += d.y * d.z;
    }
    for (double& c : cov) c /= (n - 1.0);

    auto ev = sym3_eigenvalues(cov);
    CurvatureResult r;
    // Covariance is PSD; tiny negative eigenvalues are rounding noise.
    r.sigma1 = std::max(0.0, ev[0]);
    r.sigma2 = std::max(0.0, ev[1]);
    r.sigma3 = std::max(0.0, ev[2]);
    double total = r.sigma1 + r.sigma2 + r.sigma3;
    r.curvature = total > 0.0 ? std::min(r.sigma3 / total, 1.0 / 3.0) : 0.0;
    return r;
}

namespace {

KMeansResult kmeans_single(const std::vector<Vec3>& vs, int k, int max_iters, std::uint64_t seed) {
    const std::size_t n = vs.size();
    Rng rng(seed);

    // kmeans++ seeding
    std::vector<Vec3> centroids;
    centroids.reserve(k);
    centroids.push_back(vs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1))]);
    std::vector<double> d2(n);
    for (int c = 1; c < k; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const Vec3& ctr : centroids) best = std::min(best, distance_sq(vs[i], ctr));
            d2[i] = best;
            sum += best;
        }
        std::size_t pick = 0;
        if (sum > 0.0) {
            double r = rng.uniform() * sum, acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        }
        centroids.push_back(vs[pick]);
    }

    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double bestd = distance_sq(vs[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                double d = distance_sq(vs[i], centroids[c]);
                if (d < bestd) {
                    bestd = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        std::vector<Vec3> sums(k, Vec3{0, 0, 0});
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[assign[i]] += vs[i];
            counts[assign[i]]++;
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centroids[c] = sums[c] * (1.0 / static_cast<double>(counts[c]));
            } else {
                // re-seed an empty cluster at the point farthest from its centroid
                std::size_t far_i = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double d = distance_sq(vs[i], centroids[assign[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far_i = i;
                    }
                }
                centroids[c] = vs[far_i];
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
    }

    KMeansResult res;
    res.assignments = std::move(assign);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        loss += distance_sq(vs[i], centroids[res.assignments[i]]);
    res.loss = loss / static_cast<double>(n);
    return res;
}

}  // namespace

KMeansResult kmeans(const std::vector<Vec3>& vectors, int k, int restarts, int max_iters,
                    std::uint64_t seed) {
    if (vectors.empty()) throw std::invalid_argument("kmeans: empty input");
    if (k < 1 || static_cast<std::size_t>(k) > vectors.size())
        throw std::invalid_argument("kmeans: need 1 <= K <= vector count");
    KMeansResult best;
    best.loss = std::numeric_limits<double>::max();
    for (int r = 0; r < restarts; ++r) {
        KMeansResult run = kmeans_single(vectors, k, max_iters, derive_seed(seed, r));
        if (run.loss < best.loss) best = std::move(run);
    }
    return best;
}

double delta_loss_23(const std::vector<Vec3>& normals, const LabelerConfig& config,
                     std::uint64_t seed) {
    if (normals.size() < 3) throw std::invalid_argument("delta_loss_23: need >= 3 vectors");
    double l2 = kmeans(normals, 2, config.kmeans_restarts, config.kmeans_max_iters,
                       derive_seed(seed, 2)).loss;
    double l3 = kmeans(normals, 3, config.kmeans_restarts, config.kmeans_max_iters,
                       derive_seed(seed, 3)).loss;
    return std::max(0.0, l2 - l3);
}

SurfaceLabel classify_point(const CurvatureResult& curvature,
                            const std::vector<Vec3>& normals_in_neighborhood,
                            const LabelerConfig& config, std::uint64_t seed) {
    if (curvature.curvature < config.t1) return SurfaceLabel::flat;
    if (curvature.curvature < config.t2) return SurfaceLabel::curve;
    double d = delta_loss_23(normals_in_neighborhood, config, seed);
    return d <= config.delta23_threshold ? SurfaceLabel::edge : SurfaceLabel::corner;
}

LabeledCloud label_cloud(const SampleCloud& cloud, const LabelerConfig& config,
                         std::uint64_t seed, LabelReport* report) {
    config.validate();
    if (cloud.samples.empty()) throw std::invalid_argument("label_cloud: empty cloud");

    const std::size_t n = cloud.size();
    NeighborIndex index(cloud, config.radius);

    LabeledCloud out;
    out.cloud = cloud;
    out.labels.assign(n, SurfaceLabel::flat);
    out.curvatures.assign(n, CurvatureResult{});
    std::vector<char> insufficient(n, 0);

    parallel_for(n, [&](std::size_t j) {
        auto neigh = index.query(cloud.samples[j].position, config.radius);
        std::vector<Vec3> positions;
        std::vector<Vec3> normals;
        positions.reserve(neigh.size());
        normals.reserve(neigh.size());
        for (std::size_t i : neigh) {
            positions.push_back(cloud.samples[i].position);
            normals.push_back(cloud.samples[i].normal);
        }
        if (positions.size() >= 4) out.curvatures[j] = local_curvature(positions);
        if (neigh.size() < static_cast<std::size_t>(config.min_neighborhood)) {
            insufficient[j] = 1;
            return;
        }
        out.labels[j] = classify_point(out.curvatures[j], normals, config, derive_seed(seed, j));
    });

    std::vector<std::size_t> fallback;
    for (std::size_t j = 0; j < n; ++j)
        if (insufficient[j]) fallback.push_back(j);
    if (fallback.size() == n)
        throw NumericalError("label_cloud: every point has an insufficient neighborhood");

    // Thin spots inherit the nearest labeled point's label.
    for (std::size_t j : fallback) {
        std::size_t best = n;
        double bestd = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < n; ++i) {
            if (insufficient[i]) continue;
            double d = distance_sq(cloud.samples[j].position, cloud.samples[i].position);
            if (d < bestd) {
                bestd = d;
                best = i;
            }
        }
        out.labels[j] = out.labels[best];
    }

    if (report) {
        report->fallback_indices = std::move(fallback);
        report->histogram = {0, 0, 0, 0};
        for (SurfaceLabel l : out.labels) report->histogram[static_cast<int>(l)]++;
    }
    return out;
}

void save_labeled_ply(const LabeledCloud& labeled, const std::string& path) {
    static const int colormap[4][3] = {{128, 128, 128}, {0, 200, 0}, {0, 64, 255}, {255, 32, 32}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out.precision(17);
    out << "ply\nformat ascii 1.0\n"
        << "comment min_distance " << labeled.cloud.min_distance << "\n"
        << "element vertex " << labeled.cloud.size() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "property double nx\nproperty double ny\nproperty double nz\n"
        << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
        << "property uchar label\n"
        << "end_header\n";
    for (std::size_t i = 0; i < labeled.cloud.size(); ++i) {
        const SurfaceSample& s = labeled.cloud.samples[i];
        int code = static_cast<int>(labeled.labels[i]);
        out << s.position.x << ' ' << s.position.y << ' ' << s.position.z << ' ' << s.normal.x
            << ' ' << s.normal.y << ' ' << s.normal.z << ' ' << colormap[code][0] << ' '
            << colormap[code][1] << ' ' << colormap[code][2] << ' ' << code << '\n';
    }
}

void save_labeled_csv(const LabeledCloud& labeled, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out.precision(17);
    out << "index,x,y,z,curvature,label\n";
    for (std::size_t i = 0; i < labeled.cloud.size(); ++i) {
        const Vec3& p = labeled.cloud.samples[i].position;
        out << i << ',' << p.x << ',' << p.y << ',' << p.z << ',' << labeled.curvatures[i].curvature
            << ',' << static_cast<int>(labeled.labels[i]) << '\n';
    }
}

LabeledCloud load_labeled_csv(const SampleCloud& cloud, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    LabeledCloud out;
    out.cloud = cloud;
    out.labels.assign(cloud.size(), SurfaceLabel::flat);
    out.curvatures.assign(cloud.size(), CurvatureResult{});
    std::string line;
    std::getline(in, line);  // header
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::size_t idx;
        double x, y, z, curv;
        int code;
        ss >> idx >> x >> y >> z >> curv >> code;
        if (!ss || idx >= cloud.size()) throw IoError("bad row in " + path);
        out.labels[idx] = label_from_code(code);
        out.curvatures[idx].curvature = curv;
        ++rows;
    }
    if (rows != cloud.size()) throw IoError("label csv rows do not match cloud size in " + path);
    return out;
}

}  // namespace surftac
