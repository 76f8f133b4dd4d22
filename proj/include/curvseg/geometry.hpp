#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace curvseg {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Oriented simple polygon; the edge from the last vertex back to the
/// first is implicit.
struct ClosedCurve {
    std::vector<Point2> vertices;

    std::size_t size() const { return vertices.size(); }
    const Point2& operator[](std::size_t i) const { return vertices[i]; }
    Point2& operator[](std::size_t i) { return vertices[i]; }
};

/// Connected region bounded by one counterclockwise outer curve and any
/// number of clockwise hole curves strictly inside it.
struct Region {
    ClosedCurve outer;
    std::vector<ClosedCurve> holes;

    /// All boundary curves, outer first.
    std::vector<const ClosedCurve*> boundary_curves() const;
};

/// A finite union of regions treated as one closed set.
using RegionSet = std::vector<Region>;

struct BoundingBox {
    Point2 lo{0.0, 0.0};
    Point2 hi{0.0, 0.0};
    double diagonal() const { return distance(lo, hi); }
};

BoundingBox bounding_box(const ClosedCurve& curve);
BoundingBox bounding_box(const Region& region);
BoundingBox bounding_box(const RegionSet& set);
BoundingBox merge(const BoundingBox& a, const BoundingBox& b);

/// Shoelace area; positive iff the curve is counterclockwise.
double signed_area(const ClosedCurve& curve);

double perimeter(const ClosedCurve& curve);

/// Longest edge, including the closing edge.
double max_edge_length(const ClosedCurve& curve);

ClosedCurve reversed(const ClosedCurve& curve);

/// Signed exterior angle at each vertex, in (-pi, pi).  The sum is
/// 2*pi times the winding number, so +/-2*pi for a simple curve.
std::vector<double> turning_angles(const ClosedCurve& curve);

struct CurvatureSample {
    double kappa = 0.0;   // signed discrete curvature [1/length]
    double weight = 0.0;  // arclength weight; weights sum to the perimeter
};

/// Per-vertex curvature kappa_i = 2*theta_i / (|e_{i-1}| + |e_i|) with
/// weight w_i = (|e_{i-1}| + |e_i|) / 2.  For a polygon inscribed in a
/// smooth curve, sum |kappa_i| w_i equals the total turning exactly.
std::vector<CurvatureSample> curvature_profile(const ClosedCurve& curve);

/// Sum of |turning angle|; >= 2*pi for simple closed polygons with
/// equality exactly on convex ones.
double total_absolute_curvature(const ClosedCurve& curve);

/// Even-odd containment; points on the boundary count as inside.
bool contains_point(const ClosedCurve& curve, Point2 p);
bool contains_point(const Region& region, Point2 p);
bool contains_point(const RegionSet& set, Point2 p);

/// Arclength resampling with spacing <= target_spacing.  Vertices whose
/// turning angle exceeds 0.2 rad are kept as corners when
/// preserve_corners is set.  Throws if target_spacing > perimeter / 3.
ClosedCurve resample_uniform(const ClosedCurve& curve, double target_spacing,
                             bool preserve_corners = true);

/// Max pairwise distance over outer-curve vertices.
double diameter(const Region& region);

/// Outer area minus hole areas.
double area(const Region& region);
double area(const RegionSet& set);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d);

/// Min distance from p to the polyline of the curve (all edges).
double distance_to_curve(const ClosedCurve& curve, Point2 p);
double distance_to_boundary(const Region& region, Point2 p);
double distance_to_boundary(const RegionSet& set, Point2 p);

/// O(n^2) pairwise test of non-adjacent edges, with a slack of
/// 1e-12 * bounding-box diagonal.
bool is_simple(const ClosedCurve& curve);

/// Throws std::invalid_argument naming the first violated invariant:
/// >= 3 vertices, no coincident consecutive vertices, finite
/// coordinates, nonzero signed area, simplicity.
void validate_curve(const ClosedCurve& curve);

/// Curve invariants plus: outer CCW, holes CW and strictly inside the
/// outer curve, holes pairwise disjoint, positive total area.
void validate_region(const Region& region);

ClosedCurve translated(const ClosedCurve& curve, Point2 offset);
Region translated(const Region& region, Point2 offset);
ClosedCurve scaled(const ClosedCurve& curve, double factor);
Region scaled(const Region& region, double factor);

}  // namespace curvseg
