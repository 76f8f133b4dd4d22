#pragma once

#include "curvseg/geometry.hpp"

#include <cstdint>
#include <vector>

namespace curvseg {

/// Grayscale image on a rectangular grid.  Values in [0,1], row-major
/// with row 0 at the BOTTOM (mathematical orientation); PGM I/O flips.
/// `origin` is the physical position of the lower-left corner of pixel
/// (0,0); pixel (x,y) has its center at origin + pixel_size*(x+0.5, y+0.5).
struct RasterImage {
    int width = 0;
    int height = 0;
    double pixel_size = 1.0;
    Point2 origin{0.0, 0.0};
    std::vector<double> values;

    double at(int x, int y) const { return values[(std::size_t)y * width + x]; }
    double& at(int x, int y) { return values[(std::size_t)y * width + x]; }
    Point2 pixel_center(int x, int y) const {
        return {origin.x + pixel_size * (x + 0.5), origin.y + pixel_size * (y + 0.5)};
    }
    std::size_t pixel_count() const { return (std::size_t)width * height; }
    bool valid() const { return width >= 1 && height >= 1 && pixel_size > 0.0; }
};

RasterImage make_image(int width, int height, double pixel_size, Point2 origin,
                       double fill = 0.0);

/// Binary mask sharing the RasterImage grid convention.
struct BinaryMask {
    int width = 0;
    int height = 0;
    double pixel_size = 1.0;
    Point2 origin{0.0, 0.0};
    std::vector<std::uint8_t> values;

    std::uint8_t at(int x, int y) const { return values[(std::size_t)y * width + x]; }
    std::uint8_t& at(int x, int y) { return values[(std::size_t)y * width + x]; }
    Point2 pixel_center(int x, int y) const {
        return {origin.x + pixel_size * (x + 0.5), origin.y + pixel_size * (y + 0.5)};
    }
};

BinaryMask make_mask(int width, int height, double pixel_size, Point2 origin);
BinaryMask threshold_image(const RasterImage& img, double threshold);

/// Even-odd scanline rasterization of a region over the frame grid:
/// out[y*W+x] = 1 iff the pixel center is inside.  `out` must be sized
/// to the frame and is OR-combined when accumulate is set.
void rasterize_region(const Region& region, const RasterImage& frame,
                      std::vector<std::uint8_t>& out, bool accumulate = false);

/// Restricted rasterization used by incremental updates: fills only rows
/// [y0,y1) and columns [x0,x1); `out` has (x1-x0)*(y1-y0) entries.
void rasterize_region_window(const Region& region, const RasterImage& frame,
                             int x0, int y0, int x1, int y1,
                             std::vector<std::uint8_t>& out);

std::vector<std::uint8_t> rasterize_set(const RegionSet& set, const RasterImage& frame);

/// Exact squared Euclidean distance transform (two-pass 1D lower
/// envelope).  Input: site flags; output: squared distance in pixels
/// from each cell to the nearest site cell (site cells get 0).
std::vector<double> squared_distance_transform(const std::vector<std::uint8_t>& sites,
                                               int width, int height);

/// Binary morphology with a Euclidean disk of radius_px pixels.
BinaryMask erode(const BinaryMask& mask, double radius_px);
BinaryMask dilate(const BinaryMask& mask, double radius_px);
BinaryMask open_mask(const BinaryMask& mask, double radius_px);
BinaryMask close_mask(const BinaryMask& mask, double radius_px);

/// Otsu's threshold over a 256-bin histogram of values in [0,1].
double otsu_threshold(const RasterImage& img);

/// 8-connected foreground labeling; labels start at 1, 0 = background.
int connected_components(const BinaryMask& mask, std::vector<int>& labels);

/// Traces the exact boundary of the pixel-square union as closed
/// polygons in physical coordinates.  Loops are oriented with the
/// foreground on the left: outer boundaries CCW, hole boundaries CW.
std::vector<ClosedCurve> trace_boundaries(const BinaryMask& mask);

/// Circular Gaussian smoothing of vertex positions, sigma in the same
/// units as the (approximately uniform) vertex spacing.
ClosedCurve smooth_closed(const ClosedCurve& curve, double sigma, double spacing);

/// Pairwise (tree) summation; fixed reduction order independent of
/// any parallel decomposition.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_sum(const std::vector<double>& data);

}  // namespace curvseg
