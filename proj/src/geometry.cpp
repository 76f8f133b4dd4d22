#include "curvseg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace curvseg {

namespace {

constexpr double kSimplicitySlack = 1e-12;
constexpr double kCornerAngle = 0.2;  // rad; resampling keeps sharper vertices

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_basic(const ClosedCurve& c, const char* who) {
    require(c.size() >= 3, std::string(who) + ": curve needs at least 3 vertices");
    for (const Point2& p : c.vertices)
        require(std::isfinite(p.x) && std::isfinite(p.y),
                std::string(who) + ": non-finite vertex coordinate");
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
        require(distance(c[i], c[(i + 1) % n]) > 0.0,
                std::string(who) + ": coincident consecutive vertices at index " +
                    std::to_string(i));
}

}  // namespace

std::vector<const ClosedCurve*> Region::boundary_curves() const {
    std::vector<const ClosedCurve*> out;
    out.reserve(1 + holes.size());
    out.push_back(&outer);
    for (const ClosedCurve& h : holes) out.push_back(&h);
    return out;
}

BoundingBox bounding_box(const ClosedCurve& curve) {
    BoundingBox b;
    b.lo = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    b.hi = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Point2& p : curve.vertices) {
        b.lo.x = std::min(b.lo.x, p.x);
        b.lo.y = std::min(b.lo.y, p.y);
        b.hi.x = std::max(b.hi.x, p.x);
        b.hi.y = std::max(b.hi.y, p.y);
    }
    return b;
}

BoundingBox merge(const BoundingBox& a, const BoundingBox& b) {
    BoundingBox m;
    m.lo = {std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y)};
    m.hi = {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y)};
    return m;
}

BoundingBox bounding_box(const Region& region) {
    BoundingBox b = bounding_box(region.outer);
    for (const ClosedCurve& h : region.holes) b = merge(b, bounding_box(h));
    return b;
}

BoundingBox bounding_box(const RegionSet& set) {
    require(!set.empty(), "bounding_box: empty region set");
    BoundingBox b = bounding_box(set.front());
    for (std::size_t i = 1; i < set.size(); ++i) b = merge(b, bounding_box(set[i]));
    return b;
}

double signed_area(const ClosedCurve& curve) {
    check_basic(curve, "signed_area");
    const std::size_t n = curve.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = curve[i];
        const Point2& b = curve[(i + 1) % n];
        twice += cross(a, b);
    }
    return 0.5 * twice;
}

double perimeter(const ClosedCurve& curve) {
    check_basic(curve, "perimeter");
    const std::size_t n = curve.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += distance(curve[i], curve[(i + 1) % n]);
    return sum;
}

double max_edge_length(const ClosedCurve& curve) {
    check_basic(curve, "max_edge_length");
    const std::size_t n = curve.size();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        m = std::max(m, distance(curve[i], curve[(i + 1) % n]));
    return m;
}

ClosedCurve reversed(const ClosedCurve& curve) {
    ClosedCurve r = curve;
    std::reverse(r.vertices.begin(), r.vertices.end());
    return r;
}

std::vector<double> turning_angles(const ClosedCurve& curve) {
    check_basic(curve, "turning_angles");
    const std::size_t n = curve.size();
    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = curve[(i + n - 1) % n];
        const Point2 here = curve[i];
        const Point2 next = curve[(i + 1) % n];
        const Point2 ein = here - prev;
        const Point2 eout = next - here;
        angles[i] = std::atan2(cross(ein, eout), dot(ein, eout));
    }
    return angles;
}

std::vector<CurvatureSample> curvature_profile(const ClosedCurve& curve) {
    const std::vector<double> angles = turning_angles(curve);
    const std::size_t n = curve.size();
    std::vector<CurvatureSample> prof(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lin = distance(curve[(i + n - 1) % n], curve[i]);
        const double lout = distance(curve[i], curve[(i + 1) % n]);
        prof[i].kappa = 2.0 * angles[i] / (lin + lout);
        prof[i].weight = 0.5 * (lin + lout);
    }
    return prof;
}

double total_absolute_curvature(const ClosedCurve& curve) {
    double sum = 0.0;
    for (double a : turning_angles(curve)) sum += std::abs(a);
    return sum;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

namespace {

int orient_sign(Point2 a, Point2 b, Point2 c, double slack_area) {
    const double v = cross(b - a, c - a);
    if (v > slack_area) return 1;
    if (v < -slack_area) return -1;
    return 0;
}

}  // namespace

double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d) {
    const int d1 = orient_sign(c, d, a, 0.0);
    const int d2 = orient_sign(c, d, b, 0.0);
    const int d3 = orient_sign(a, b, c, 0.0);
    const int d4 = orient_sign(a, b, d, 0.0);
    if (d1 * d2 < 0 && d3 * d4 < 0) return 0.0;  // proper crossing
    return std::min(std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
                    std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
}

double distance_to_curve(const ClosedCurve& curve, Point2 p) {
    const std::size_t n = curve.size();
    double best = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_distance(p, curve[i], curve[(i + 1) % n]));
    return best;
}

double distance_to_boundary(const Region& region, Point2 p) {
    double best = distance_to_curve(region.outer, p);
    for (const ClosedCurve& h : region.holes) best = std::min(best, distance_to_curve(h, p));
    return best;
}

double distance_to_boundary(const RegionSet& set, Point2 p) {
    double best = std::numeric_limits<double>::max();
    for (const Region& r : set) best = std::min(best, distance_to_boundary(r, p));
    return best;
}

namespace {

bool parity_inside(const ClosedCurve& curve, Point2 p) {
    const std::size_t n = curve.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = curve[i];
        const Point2 b = curve[(i + 1) % n];
        if ((a.y <= p.y && p.y < b.y) || (b.y <= p.y && p.y < a.y)) {
            const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (xint > p.x) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

bool contains_point(const ClosedCurve& curve, Point2 p) {
    const double eps = kSimplicitySlack * std::max(1.0, bounding_box(curve).diagonal());
    if (distance_to_curve(curve, p) <= eps) return true;
    return parity_inside(curve, p);
}

bool contains_point(const Region& region, Point2 p) {
    const double eps =
        kSimplicitySlack * std::max(1.0, bounding_box(region).diagonal());
    if (distance_to_boundary(region, p) <= eps) return true;
    bool inside = parity_inside(region.outer, p);
    for (const ClosedCurve& h : region.holes)
        if (parity_inside(h, p)) inside = !inside;
    return inside;
}

bool contains_point(const RegionSet& set, Point2 p) {
    for (const Region& r : set)
        if (contains_point(r, p)) return true;
    return false;
}

ClosedCurve resample_uniform(const ClosedCurve& curve, double target_spacing,
                             bool preserve_corners) {
    check_basic(curve, "resample_uniform");
    require(target_spacing > 0.0, "resample_uniform: spacing must be positive");
    const double P = perimeter(curve);
    require(target_spacing <= P / 3.0,
            "resample_uniform: spacing " + std::to_string(target_spacing) +
                " exceeds perimeter/3 = " + std::to_string(P / 3.0));

    const std::size_t n = curve.size();
    std::vector<std::size_t> anchors;
    if (preserve_corners) {
        const std::vector<double> angles = turning_angles(curve);
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(angles[i]) > kCornerAngle) anchors.push_back(i);
    }

    // Walks the polyline from vertex `from` to vertex `to` (cyclic) and
    // emits m evenly spaced points, including the start, excluding the end.
    auto emit_arc = [&](std::size_t from, std::size_t to, std::vector<Point2>& out) {
        std::vector<double> cum{0.0};
        std::vector<Point2> pts{curve[from]};
        std::size_t i = from;
        do {
            const std::size_t j = (i + 1) % n;
            cum.push_back(cum.back() + distance(curve[i], curve[j]));
            pts.push_back(curve[j]);
            i = j;
        } while (i != to);
        const double L = cum.back();
        const std::size_t m = std::max<std::size_t>(1, (std::size_t)std::ceil(L / target_spacing));
        std::size_t seg = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const double s = L * (double)k / (double)m;
            while (seg + 1 < cum.size() && cum[seg + 1] < s) ++seg;
            const double span = cum[seg + 1] - cum[seg];
            const double t = span > 0.0 ? (s - cum[seg]) / span : 0.0;
            out.push_back(pts[seg] + t * (pts[seg + 1] - pts[seg]));
        }
    };

    ClosedCurve result;
    if (anchors.empty()) {
        emit_arc(0, 0, result.vertices);
    } else {
        for (std::size_t a = 0; a < anchors.size(); ++a)
            emit_arc(anchors[a], anchors[(a + 1) % anchors.size()], result.vertices);
    }
    if (result.size() < 3) result = curve;  // degenerate target; keep input
    return result;
}

double diameter(const Region& region) {
    check_basic(region.outer, "diameter");
    const std::vector<Point2>& v = region.outer.vertices;
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            best = std::max(best, distance(v[i], v[j]));
    return best;
}

double area(const Region& region) {
    double a = signed_area(region.outer);
    for (const ClosedCurve& h : region.holes) a -= std::abs(signed_area(h));
    return a;
}

double area(const RegionSet& set) {
    double a = 0.0;
    for (const Region& r : set) a += area(r);
    return a;
}

bool is_simple(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    if (n < 3) return false;
    const double eps = kSimplicitySlack * std::max(1.0, bounding_box(curve).diagonal());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (shared vertex), including the wrap pair
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segment_segment_distance(curve[i], curve[(i + 1) % n], curve[j],
                                         curve[(j + 1) % n]) <= eps)
                return false;
        }
    }
    return true;
}

void validate_curve(const ClosedCurve& curve) {
    check_basic(curve, "validate_curve");
    require(signed_area(curve) != 0.0, "validate_curve: degenerate curve, zero signed area");
    require(is_simple(curve), "validate_curve: curve is self-intersecting");
}

void validate_region(const Region& region) {
    validate_curve(region.outer);
    require(signed_area(region.outer) > 0.0,
            "validate_region: outer curve must be counterclockwise");
    for (std::size_t h = 0; h < region.holes.size(); ++h) {
        const ClosedCurve& hole = region.holes[h];
        validate_curve(hole);
        require(signed_area(hole) < 0.0,
                "validate_region: hole " + std::to_string(h) + " must be clockwise");
        for (const Point2& p : hole.vertices)
            require(parity_inside(region.outer, p),
                    "validate_region: hole " + std::to_string(h) +
                        " is not strictly inside the outer curve");
    }
    for (std::size_t a = 0; a < region.holes.size(); ++a)
        for (std::size_t b = a + 1; b < region.holes.size(); ++b) {
            const ClosedCurve& ha = region.holes[a];
            const ClosedCurve& hb = region.holes[b];
            bool disjoint = !parity_inside(ha, hb[0]) && !parity_inside(hb, ha[0]);
            if (disjoint) {
                const std::size_t na = ha.size(), nb = hb.size();
                for (std::size_t i = 0; i < na && disjoint; ++i)
                    for (std::size_t j = 0; j < nb && disjoint; ++j)
                        if (segment_segment_distance(ha[i], ha[(i + 1) % na], hb[j],
                                                     hb[(j + 1) % nb]) == 0.0)
                            disjoint = false;
            }
            require(disjoint, "validate_region: holes " + std::to_string(a) + " and " +
                                  std::to_string(b) + " overlap");
        }
    require(area(region) > 0.0, "validate_region: non-positive area");
}

ClosedCurve translated(const ClosedCurve& curve, Point2 offset) {
    ClosedCurve out = curve;
    for (Point2& p : out.vertices) p = p + offset;
    return out;
}

Region translated(const Region& region, Point2 offset) {
    Region out;
    out.outer = translated(region.outer, offset);
    for (const ClosedCurve& h : region.holes) out.holes.push_back(translated(h, offset));
    return out;
}

ClosedCurve scaled(const ClosedCurve& curve, double factor) {
    ClosedCurve out = curve;
    for (Point2& p : out.vertices) p = factor * p;
    return out;
}

Region scaled(const Region& region, double factor) {
    Region out;
    out.outer = scaled(region.outer, factor);
    for (const ClosedCurve& h : region.holes) out.holes.push_back(scaled(h, factor));
    return out;
}

}  // namespace curvseg
