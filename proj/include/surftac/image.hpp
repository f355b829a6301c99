#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace surftac {

// Planar RGB image (channel, row, col), doubles. Raw renders live in [0,1];
// background-subtracted images in [-1,1].
struct Image {
    int width = 0, height = 0;
    std::vector<double> data;  // 3 * height * width, planar

    Image() = default;
    Image(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(3) * w * h, 0.0) {}

    double& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
    bool same_shape(const Image& o) const { return width == o.width && height == o.height; }
};

// 8-bit binary PPM; values mapped from [-1,1] so that a write/read round
// trip of a file's contents is byte-exact.
void save_ppm(const Image& img, const std::string& path);
Image load_ppm(const std::string& path);

// Quantize to the PPM grid without touching disk.
Image quantize_like_ppm(const Image& img);

bool all_finite(const Image& img);

// Per-channel means over all pixels.
std::array<double, 3> channel_means(const Image& img);

// Pearson correlation between two images' flattened values.
// Returns 1 when both are (numerically) constant, 0 when only one is.
double pearson_correlation(const Image& a, const Image& b);

}  // namespace surftac
