#pragma once

#include "curvseg/geometry.hpp"
#include "curvseg/raster.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace curvseg {

/// Default relative tolerance for the sphere-condition checker; one
/// order above the discretization error at vertex spacing R/8.
inline constexpr double kDefaultSphereTol = 0.02;

struct VertexCheck {
    int region = 0;  // index within the checked set (0 for single regions)
    int curve = 0;   // 0 = outer, 1.. = holes
    int vertex = 0;
    bool interior_ok = false;
    bool exterior_ok = false;
    double interior_margin = 0.0;  // (min boundary distance - R) / R, signed
    double exterior_margin = 0.0;
};

struct SphereReport {
    double radius = 0.0;
    double tol = kDefaultSphereTol;
    std::vector<VertexCheck> per_vertex;
    bool pass = false;
    double worst_violation = 0.0;  // max over vertices of max(0, -margin)
};

/// Per-vertex unit outward normal: the normalized angle bisector of the
/// two incident edge normals, pointing out of the enclosed region.
/// Requires a simple CCW curve; throws on a 180-degree edge reversal.
std::vector<Point2> outward_normals(const ClosedCurve& curve);

/// Candidate ball centers at vertex i: interior p' = p - R*nu and
/// exterior p'' = p + R*nu.
std::pair<Point2, Point2> ball_centers(const ClosedCurve& curve, std::size_t i, double R);

/// Interior/exterior sphere-condition check at every boundary vertex.
/// Requires vertex spacing <= R/8 on every boundary curve.  A vertex
/// passes the interior test when its interior candidate lies inside the
/// set and clears every boundary curve by at least R*(1-tol); the
/// exterior test is symmetric and runs against all components of the
/// set, which is what makes the condition nonlocal.
SphereReport check_region(const Region& region, double R, double tol = kDefaultSphereTol);
SphereReport check_region(const RegionSet& set, double R, double tol = kDefaultSphereTol);

/// Necessary-condition prefilter: max |kappa| <= (1/R)*(1 + 8*spacing/R).
bool curvature_bound_check(const Region& region, double R);

/// Local-graph slope bound at vertex `flat_index` (outer vertices first,
/// then holes): in the frame with the vertex at the origin and its
/// outward normal along +z, every boundary vertex q on the same
/// contiguous branch with |q_x| < sqrt(3)R/2 and |q_z| < R must have
/// tangent slope |dz/dx| <= |q_x|/sqrt(R^2-q_x^2) + 0.05.  The circle of
/// radius R attains the bound.  Requires the region to pass check_region;
/// pass a precomputed report to skip rechecking.
bool verify_graph_bound(const Region& region, double R, std::size_t flat_index,
                        const SphereReport* prechecked = nullptr);

/// verify_graph_bound over every boundary vertex.
bool verify_graph_bound_all(const Region& region, double R,
                            const SphereReport* prechecked = nullptr);

struct PackingBound {
    long long m = 0;  // floor(diameter / 4R) disjoint interior balls
    bool satisfied = false;  // area >= m * pi * R^2
};

PackingBound packing_lower_bound(const Region& region, double R);
/// Throws for multi-component sets; apply per component instead.
PackingBound packing_lower_bound(const RegionSet& set, double R);

/// Morphological opening then closing with a disk of radius R, contour
/// extraction, smoothing, and resampling to spacing R/8.  Every emitted
/// region passes check_region at tol 0.05, and the emitted list passes
/// as a set; failing candidates are discarded.  Requires R >= 2 pixels.
std::vector<Region> regularize_raster(const BinaryMask& mask, double R);

}  // namespace curvseg
