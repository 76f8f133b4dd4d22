#include "curvseg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace curvseg {

RasterImage make_image(int width, int height, double pixel_size, Point2 origin,
                       double fill) {
    if (width < 1 || height < 1 || pixel_size <= 0.0)
        throw std::invalid_argument("make_image: bad frame");
    RasterImage img;
    img.width = width;
    img.height = height;
    img.pixel_size = pixel_size;
    img.origin = origin;
    img.values.assign((std::size_t)width * height, fill);
    return img;
}

BinaryMask make_mask(int width, int height, double pixel_size, Point2 origin) {
    BinaryMask m;
    m.width = width;
    m.height = height;
    m.pixel_size = pixel_size;
    m.origin = origin;
    m.values.assign((std::size_t)width * height, 0);
    return m;
}

BinaryMask threshold_image(const RasterImage& img, double threshold) {
    BinaryMask m = make_mask(img.width, img.height, img.pixel_size, img.origin);
    for (std::size_t i = 0; i < img.values.size(); ++i)
        m.values[i] = img.values[i] > threshold ? 1 : 0;
    return m;
}

namespace {

// Gathers the x positions where boundary edges cross the horizontal line
// y = yc, using half-open vertical intervals so each crossing counts once.
void row_crossings(const Region& region, double yc, std::vector<double>& xs) {
    xs.clear();
    for (const ClosedCurve* curve : region.boundary_curves()) {
        const std::size_t n = curve->size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 a = (*curve)[i];
            const Point2 b = (*curve)[(i + 1) % n];
            if ((a.y <= yc && yc < b.y) || (b.y <= yc && yc < a.y))
                xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
        }
    }
    std::sort(xs.begin(), xs.end());
}

}  // namespace

void rasterize_region_window(const Region& region, const RasterImage& frame,
                             int x0, int y0, int x1, int y1,
                             std::vector<std::uint8_t>& out) {
    const int w = x1 - x0;
    out.assign((std::size_t)w * (y1 - y0), 0);
    std::vector<double> xs;
    for (int y = y0; y < y1; ++y) {
        const double yc = frame.origin.y + frame.pixel_size * (y + 0.5);
        row_crossings(region, yc, xs);
        // fill between alternating crossing pairs
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const double xa = xs[k], xb = xs[k + 1];
            int ia = (int)std::ceil((xa - frame.origin.x) / frame.pixel_size - 0.5);
            int ib = (int)std::floor((xb - frame.origin.x) / frame.pixel_size - 0.5);
            ia = std::max(ia, x0);
            ib = std::min(ib, x1 - 1);
            for (int x = ia; x <= ib; ++x) out[(std::size_t)(y - y0) * w + (x - x0)] = 1;
        }
    }
}

void rasterize_region(const Region& region, const RasterImage& frame,
                      std::vector<std::uint8_t>& out, bool accumulate) {
    if (!accumulate) out.assign(frame.pixel_count(), 0);
    if (out.size() != frame.pixel_count())
        throw std::invalid_argument("rasterize_region: output size mismatch");
    std::vector<std::uint8_t> win;
    rasterize_region_window(region, frame, 0, 0, frame.width, frame.height, win);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] | win[i];
}

std::vector<std::uint8_t> rasterize_set(const RegionSet& set, const RasterImage& frame) {
    std::vector<std::uint8_t> out(frame.pixel_count(), 0);
    for (const Region& r : set) rasterize_region(r, frame, out, /*accumulate=*/true);
    return out;
}

namespace {

// 1D squared-distance lower envelope (Felzenszwalb & Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
            std::vector<double>& z) {
    const int n = (int)f.size();
    d.assign(n, 0.0);
    v.assign(n, 0);
    z.assign(n + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double dq = q - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

}  // namespace

std::vector<double> squared_distance_transform(const std::vector<std::uint8_t>& sites,
                                               int width, int height) {
    constexpr double kInf = 1e18;
    std::vector<double> dist((std::size_t)width * height);
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = sites[i] ? 0.0 : kInf;

    std::vector<double> f, d, z;
    std::vector<int> v;
    // columns
    f.resize(height);
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y) f[y] = dist[(std::size_t)y * width + x];
        edt_1d(f, d, v, z);
        for (int y = 0; y < height; ++y) dist[(std::size_t)y * width + x] = d[y];
    }
    // rows
    f.resize(width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) f[x] = dist[(std::size_t)y * width + x];
        edt_1d(f, d, v, z);
        for (int x = 0; x < width; ++x) dist[(std::size_t)y * width + x] = d[x];
    }
    return dist;
}

BinaryMask erode(const BinaryMask& mask, double radius_px) {
    std::vector<std::uint8_t> bg(mask.values.size());
    for (std::size_t i = 0; i < bg.size(); ++i) bg[i] = mask.values[i] ? 0 : 1;
    const std::vector<double> d2 = squared_distance_transform(bg, mask.width, mask.height);
    BinaryMask out = mask;
    const double r2 = radius_px * radius_px;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (mask.values[i] && d2[i] > r2) ? 1 : 0;
    return out;
}

BinaryMask dilate(const BinaryMask& mask, double radius_px) {
    const std::vector<double> d2 =
        squared_distance_transform(mask.values, mask.width, mask.height);
    BinaryMask out = mask;
    const double r2 = radius_px * radius_px;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = d2[i] <= r2 ? 1 : 0;
    return out;
}

BinaryMask open_mask(const BinaryMask& mask, double radius_px) {
    return dilate(erode(mask, radius_px), radius_px);
}

BinaryMask close_mask(const BinaryMask& mask, double radius_px) {
    return erode(dilate(mask, radius_px), radius_px);
}

double otsu_threshold(const RasterImage& img) {
    constexpr int kBins = 256;
    std::vector<double> hist(kBins, 0.0);
    for (double v : img.values) {
        int b = (int)(v * (kBins - 1) + 0.5);
        b = std::clamp(b, 0, kBins - 1);
        hist[b] += 1.0;
    }
    const double total = (double)img.values.size();
    double sum_all = 0.0;
    for (int b = 0; b < kBins; ++b) sum_all += b * hist[b];
    double sum_bg = 0.0, w_bg = 0.0, best_sigma = -1.0;
    int best_t = kBins / 2;
    for (int t = 0; t < kBins - 1; ++t) {
        w_bg += hist[t];
        if (w_bg == 0.0) continue;
        const double w_fg = total - w_bg;
        if (w_fg == 0.0) break;
        sum_bg += t * hist[t];
        const double mu_bg = sum_bg / w_bg;
        const double mu_fg = (sum_all - sum_bg) / w_fg;
        const double sigma = w_bg * w_fg * (mu_bg - mu_fg) * (mu_bg - mu_fg);
        if (sigma > best_sigma) {
            best_sigma = sigma;
            best_t = t;
        }
    }
    return (best_t + 0.5) / (kBins - 1);
}

int connected_components(const BinaryMask& mask, std::vector<int>& labels) {
    const int w = mask.width, h = mask.height;
    labels.assign((std::size_t)w * h, 0);
    int next = 0;
    std::vector<std::size_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = (std::size_t)y * w + x;
            if (!mask.values[idx] || labels[idx]) continue;
            ++next;
            labels[idx] = next;
            stack.assign(1, idx);
            while (!stack.empty()) {
                const std::size_t cur = stack.back();
                stack.pop_back();
                const int cx = (int)(cur % w), cy = (int)(cur / w);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        const std::size_t nidx = (std::size_t)ny * w + nx;
                        if (mask.values[nidx] && !labels[nidx]) {
                            labels[nidx] = next;
                            stack.push_back(nidx);
                        }
                    }
                }
            }
        }
    }
    return next;
}

namespace {

// Directed boundary edges between pixel corners, foreground on the left.
// Corners are indexed on the (w+1) x (h+1) lattice.
struct EdgeKey {
    int x, y, dir;  // dir: 0=+x, 1=+y, 2=-x, 3=-y, from corner (x,y)
    bool operator<(const EdgeKey& o) const {
        if (y != o.y) return y < o.y;
        if (x != o.x) return x < o.x;
        return dir < o.dir;
    }
};

}  // namespace

std::vector<ClosedCurve> trace_boundaries(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    auto fg = [&](int x, int y) -> bool {
        if (x < 0 || y < 0 || x >= w || y >= h) return false;
        return mask.at(x, y) != 0;
    };
    // outgoing[corner] = list of directions with a boundary edge leaving it
    std::map<std::pair<int, int>, std::vector<int>> outgoing;
    auto add_edge = [&](int x, int y, int dir) { outgoing[{x, y}].push_back(dir); };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!fg(x, y)) continue;
            if (!fg(x, y - 1)) add_edge(x, y, 0);          // bottom: (x,y) -> (x+1,y)
            if (!fg(x + 1, y)) add_edge(x + 1, y, 1);      // right: (x+1,y) -> (x+1,y+1)
            if (!fg(x, y + 1)) add_edge(x + 1, y + 1, 2);  // top: (x+1,y+1) -> (x,y+1)
            if (!fg(x - 1, y)) add_edge(x, y + 1, 3);      // left: (x,y+1) -> (x,y)
        }
    }
    static const int kDx[4] = {1, 0, -1, 0};
    static const int kDy[4] = {0, 1, 0, -1};

    std::vector<ClosedCurve> loops;
    std::map<EdgeKey, bool> used;
    for (auto& [corner, dirs] : outgoing)
        for (int d : dirs) used[{corner.first, corner.second, d}] = false;

    for (auto& [start_corner, start_dirs] : outgoing) {
        for (int start_dir : start_dirs) {
            if (used[{start_corner.first, start_corner.second, start_dir}]) continue;
            ClosedCurve loop;
            int cx = start_corner.first, cy = start_corner.second, dir = start_dir;
            while (true) {
                used[{cx, cy, dir}] = true;
                loop.vertices.push_back({mask.origin.x + mask.pixel_size * cx,
                                         mask.origin.y + mask.pixel_size * cy});
                cx += kDx[dir];
                cy += kDy[dir];
                // pick the sharpest left turn among unused outgoing edges;
                // this keeps each loop simple at diagonal pinch corners
                const auto it = outgoing.find({cx, cy});
                if (it == outgoing.end()) throw std::logic_error("trace_boundaries: open chain");
                int next_dir = -1;
                for (int turn = 1; turn >= -1; --turn) {  // left, straight, right
                    const int cand = ((dir + turn) % 4 + 4) % 4;
                    bool available = false;
                    for (int d : it->second)
                        if (d == cand && !used[{cx, cy, cand}]) available = true;
                    if (available) {
                        next_dir = cand;
                        break;
                    }
                }
                if (next_dir == -1) break;  // back at the start edge: loop closed
                dir = next_dir;
            }
            // drop collinear midpoints of straight runs
            ClosedCurve compact;
            const std::size_t n = loop.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Point2 prev = loop[(i + n - 1) % n];
                const Point2 here = loop[i];
                const Point2 next = loop[(i + 1) % n];
                if (std::abs(cross(here - prev, next - here)) > 1e-12)
                    compact.vertices.push_back(here);
            }
            if (compact.size() >= 4) loops.push_back(std::move(compact));
        }
    }
    return loops;
}

ClosedCurve smooth_closed(const ClosedCurve& curve, double sigma, double spacing) {
    if (sigma <= 0.0) return curve;
    const int half = std::max(1, (int)std::ceil(3.0 * sigma / spacing));
    std::vector<double> kernel(2 * half + 1);
    double ksum = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double t = j * spacing / sigma;
        kernel[j + half] = std::exp(-0.5 * t * t);
        ksum += kernel[j + half];
    }
    for (double& k : kernel) k /= ksum;
    const std::size_t n = curve.size();
    ClosedCurve out;
    out.vertices.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point2 acc{0.0, 0.0};
        for (int j = -half; j <= half; ++j) {
            int idx = ((int)i + j) % (int)n;
            if (idx < 0) idx += (int)n;
            acc = acc + kernel[j + half] * curve[(std::size_t)idx];
        }
        out.vertices[i] = acc;
    }
    return out;
}

double pairwise_sum(const double* data, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_sum(const std::vector<double>& data) {
    return pairwise_sum(data.data(), data.size());
}

}  // namespace curvseg
