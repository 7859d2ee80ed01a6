#pragma once

// Grayscale image container with subpixel access. Intensities are kept as
// doubles in [0,1]; all geometry downstream assumes that normalization.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deftrack {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // row-major, data[y * width + x]

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0) : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: dimensions must be >= 1");
    }

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    bool contains(double x, double y) const {
        return x >= 0.0 && y >= 0.0 && x <= width - 1.0 && y <= height - 1.0;
    }
};

/// Convert 8-bit samples to normalized intensities.
inline GrayImage from_bytes(const std::vector<std::uint8_t>& bytes, int width, int height) {
    if (static_cast<size_t>(width) * height != bytes.size())
        throw std::invalid_argument("from_bytes: size mismatch");
    GrayImage img(width, height);
    for (size_t i = 0; i < bytes.size(); ++i) img.data[i] = bytes[i] / 255.0;
    return img;
}

inline std::vector<std::uint8_t> to_bytes(const GrayImage& img) {
    std::vector<std::uint8_t> out(img.data.size());
    for (size_t i = 0; i < out.size(); ++i) {
        double v = std::clamp(img.data[i], 0.0, 1.0);
        out[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    return out;
}

/// Rec.601 luma from interleaved RGB bytes.
inline GrayImage gray_from_rgb(const std::vector<std::uint8_t>& rgb, int width, int height) {
    if (static_cast<size_t>(width) * height * 3 != rgb.size())
        throw std::invalid_argument("gray_from_rgb: size mismatch");
    GrayImage img(width, height);
    for (size_t i = 0; i < img.data.size(); ++i) {
        const std::uint8_t* p = &rgb[i * 3];
        img.data[i] = (0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]) / 255.0;
    }
    return img;
}

namespace detail {

// Cell-local bilinear setup shared by the samplers. Clamps the base index so
// that a query exactly on the right/bottom edge stays addressable.
struct BilinearCell {
    int ix, iy;
    double fx, fy;
    double v00, v10, v01, v11;
};

inline BilinearCell bilinear_cell(const GrayImage& img, double x, double y) {
    int ix = static_cast<int>(std::floor(x));
    int iy = static_cast<int>(std::floor(y));
    ix = std::min(std::max(ix, 0), img.width - 2 >= 0 ? img.width - 2 : 0);
    iy = std::min(std::max(iy, 0), img.height - 2 >= 0 ? img.height - 2 : 0);
    BilinearCell c;
    c.ix = ix;
    c.iy = iy;
    c.fx = x - ix;
    c.fy = y - iy;
    const int x1 = std::min(ix + 1, img.width - 1);
    const int y1 = std::min(iy + 1, img.height - 1);
    c.v00 = img.at(ix, iy);
    c.v10 = img.at(x1, iy);
    c.v01 = img.at(ix, y1);
    c.v11 = img.at(x1, y1);
    return c;
}

}  // namespace detail

/// Bilinear sample at subpixel position. Exact at integer coordinates.
/// Throws std::out_of_range outside [0,w-1]x[0,h-1].
inline double sample_bilinear(const GrayImage& img, double x, double y) {
    if (!img.contains(x, y)) throw std::out_of_range("sample_bilinear: point outside image");
    const auto c = detail::bilinear_cell(img, x, y);
    const double top = c.v00 + c.fx * (c.v10 - c.v00);
    const double bot = c.v01 + c.fx * (c.v11 - c.v01);
    return top + c.fy * (bot - top);
}

/// Derivative of the bilinear interpolant itself, evaluated inside the cell
/// containing (x,y). This is the exact Jacobian of sample_bilinear and the
/// one the photometric solvers differentiate through.
inline std::pair<double, double> sample_bilinear_grad(const GrayImage& img, double x, double y) {
    if (!img.contains(x, y)) throw std::out_of_range("sample_bilinear_grad: point outside image");
    const auto c = detail::bilinear_cell(img, x, y);
    const double gx = (1.0 - c.fy) * (c.v10 - c.v00) + c.fy * (c.v11 - c.v01);
    const double gy = (1.0 - c.fx) * (c.v01 - c.v00) + c.fx * (c.v11 - c.v10);
    return {gx, gy};
}

/// Central-difference gradient at unit spacing: smoother than the raw
/// interpolant derivative, exact on affine images. Requires the point to be
/// at least one pixel from the border.
inline std::pair<double, double> image_gradient(const GrayImage& img, double x, double y) {
    if (x < 1.0 || y < 1.0 || x > img.width - 2.0 || y > img.height - 2.0)
        throw std::out_of_range("image_gradient: point too close to border");
    const double gx = 0.5 * (sample_bilinear(img, x + 1.0, y) - sample_bilinear(img, x - 1.0, y));
    const double gy = 0.5 * (sample_bilinear(img, x, y + 1.0) - sample_bilinear(img, x, y - 1.0));
    return {gx, gy};
}

}  // namespace deftrack
