#include "curvseg/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curvseg {

namespace {

constexpr double kPi = std::numbers::pi;

// Right-of-travel edge normals averaged at the vertex.  For a CCW outer
// curve this points out of the region; for a CW hole curve it points
// into the hole, i.e. still out of the region.
std::vector<Point2> travel_normals(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    std::vector<Point2> normals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = curve[(i + n - 1) % n];
        const Point2 here = curve[i];
        const Point2 next = curve[(i + 1) % n];
        Point2 din = here - prev;
        Point2 dout = next - here;
        const double lin = norm(din), lout = norm(dout);
        if (lin == 0.0 || lout == 0.0)
            throw std::invalid_argument("normals: zero-length edge");
        din = (1.0 / lin) * din;
        dout = (1.0 / lout) * dout;
        const Point2 nin{din.y, -din.x};
        const Point2 nout{dout.y, -dout.x};
        Point2 bis = nin + nout;
        const double lb = norm(bis);
        if (lb < 1e-14)
            throw std::invalid_argument(
                "normals: 180-degree reversal at vertex " + std::to_string(i));
        normals[i] = (1.0 / lb) * bis;
    }
    return normals;
}

double min_distance_to_set_boundary(const RegionSet& set, Point2 p) {
    return distance_to_boundary(set, p);
}

void check_spacing(const RegionSet& set, double R) {
    const double required = R / 8.0;
    for (std::size_t r = 0; r < set.size(); ++r) {
        for (const ClosedCurve* c : set[r].boundary_curves()) {
            const double spacing = max_edge_length(*c);
            if (spacing > required * 1.0001)
                throw std::invalid_argument(
                    "check_region: vertex spacing " + std::to_string(spacing) +
                    " exceeds R/8 = " + std::to_string(required) +
                    "; resample the boundary first");
        }
    }
}

}  // namespace

std::vector<Point2> outward_normals(const ClosedCurve& curve) {
    if (signed_area(curve) <= 0.0)
        throw std::invalid_argument("outward_normals: curve must be counterclockwise");
    return travel_normals(curve);
}

std::pair<Point2, Point2> ball_centers(const ClosedCurve& curve, std::size_t i, double R) {
    const std::vector<Point2> normals = travel_normals(curve);
    const Point2 nu = normals.at(i);
    const Point2 p = curve[i];
    return {p - R * nu, p + R * nu};
}

SphereReport check_region(const RegionSet& set, double R, double tol) {
    if (R <= 0.0) throw std::invalid_argument("check_region: R must be positive");
    if (tol < 0.0) throw std::invalid_argument("check_region: tol must be >= 0");
    check_spacing(set, R);

    SphereReport report;
    report.radius = R;
    report.tol = tol;
    report.pass = true;
    report.worst_violation = 0.0;

    for (std::size_t ri = 0; ri < set.size(); ++ri) {
        const Region& region = set[ri];
        const std::vector<const ClosedCurve*> curves = region.boundary_curves();
        for (std::size_t ci = 0; ci < curves.size(); ++ci) {
            const ClosedCurve& curve = *curves[ci];
            const std::vector<Point2> normals = travel_normals(curve);
            for (std::size_t vi = 0; vi < curve.size(); ++vi) {
                const Point2 p = curve[vi];
                const Point2 nu = normals[vi];
                const Point2 p_in = p - R * nu;
                const Point2 p_out = p + R * nu;

                VertexCheck vc;
                vc.region = (int)ri;
                vc.curve = (int)ci;
                vc.vertex = (int)vi;
                vc.interior_margin = (min_distance_to_set_boundary(set, p_in) - R) / R;
                vc.exterior_margin = (min_distance_to_set_boundary(set, p_out) - R) / R;
                vc.interior_ok =
                    vc.interior_margin >= -tol && contains_point(region, p_in);
                vc.exterior_ok =
                    vc.exterior_margin >= -tol && !contains_point(set, p_out);
                report.pass = report.pass && vc.interior_ok && vc.exterior_ok;
                report.worst_violation =
                    std::max(report.worst_violation,
                             std::max(0.0, -std::min(vc.interior_margin, vc.exterior_margin)));
                report.per_vertex.push_back(vc);
            }
        }
    }
    return report;
}

SphereReport check_region(const Region& region, double R, double tol) {
    return check_region(RegionSet{region}, R, tol);
}

bool curvature_bound_check(const Region& region, double R) {
    if (R <= 0.0) throw std::invalid_argument("curvature_bound_check: R must be positive");
    for (const ClosedCurve* curve : region.boundary_curves()) {
        const double spacing = max_edge_length(*curve);
        const double bound = (1.0 / R) * (1.0 + 8.0 * spacing / R);
        for (const CurvatureSample& s : curvature_profile(*curve))
            if (std::abs(s.kappa) > bound) return false;
    }
    return true;
}

namespace {

struct FlatVertex {
    const ClosedCurve* curve;
    std::size_t index;
};

FlatVertex locate_vertex(const Region& region, std::size_t flat_index) {
    std::size_t offset = 0;
    for (const ClosedCurve* c : region.boundary_curves()) {
        if (flat_index < offset + c->size()) return {c, flat_index - offset};
        offset += c->size();
    }
    throw std::invalid_argument("verify_graph_bound: vertex index out of range");
}

// Slope test on the contiguous branch through vertex i of one curve.
bool graph_bound_at(const ClosedCurve& curve, std::size_t i, double R) {
    const std::vector<Point2> normals = travel_normals(curve);
    const Point2 p = curve[i];
    const Point2 nu = normals[i];           // local +z axis
    const Point2 tx{-nu.y, nu.x};           // local +x axis
    const double rho = std::sqrt(3.0) * R / 2.0;
    const std::size_t n = curve.size();

    auto local = [&](Point2 q) -> Point2 {
        const Point2 d = q - p;
        return {dot(d, tx), dot(d, nu)};
    };
    auto in_cylinder = [&](Point2 lq) {
        return std::abs(lq.x) < rho && std::abs(lq.y) < R;
    };
    auto slope_ok = [&](std::size_t j) {
        const Point2 lq = local(curve[j]);
        if (!in_cylinder(lq)) return true;
        // vertex tangent = bisector direction (normal rotated -90 deg)
        const Point2 tq{normals[j].y, -normals[j].x};
        const double txl = dot(tq, tx);
        const double tzl = dot(tq, nu);
        if (std::abs(txl) < 1e-12) return false;  // vertical tangent inside cylinder
        const double slope = std::abs(tzl / txl);
        const double xq = std::abs(lq.x);
        const double denom2 = R * R - xq * xq;
        if (denom2 <= 0.0) return true;
        return slope <= xq / std::sqrt(denom2) + 0.05;
    };

    if (!slope_ok(i)) return false;
    // walk the branch forward and backward while inside the cylinder
    for (int dir = -1; dir <= 1; dir += 2) {
        std::size_t j = i;
        for (std::size_t step = 1; step < n; ++step) {
            j = (j + n + (std::size_t)dir) % n;
            if (!in_cylinder(local(curve[j]))) break;
            if (!slope_ok(j)) return false;
        }
    }
    return true;
}

}  // namespace

bool verify_graph_bound(const Region& region, double R, std::size_t flat_index,
                        const SphereReport* prechecked) {
    if (prechecked != nullptr) {
        if (!prechecked->pass)
            throw std::invalid_argument("verify_graph_bound: region fails check_region");
    } else {
        const SphereReport rep = check_region(region, R);
        if (!rep.pass)
            throw std::invalid_argument("verify_graph_bound: region fails check_region");
    }
    const FlatVertex fv = locate_vertex(region, flat_index);
    return graph_bound_at(*fv.curve, fv.index, R);
}

bool verify_graph_bound_all(const Region& region, double R,
                            const SphereReport* prechecked) {
    SphereReport local_report;
    if (prechecked == nullptr) {
        local_report = check_region(region, R);
        prechecked = &local_report;
    }
    if (!prechecked->pass)
        throw std::invalid_argument("verify_graph_bound: region fails check_region");
    for (const ClosedCurve* curve : region.boundary_curves())
        for (std::size_t i = 0; i < curve->size(); ++i)
            if (!graph_bound_at(*curve, i, R)) return false;
    return true;
}

PackingBound packing_lower_bound(const Region& region, double R) {
    if (R <= 0.0) throw std::invalid_argument("packing_lower_bound: R must be positive");
    PackingBound pb;
    pb.m = (long long)std::floor(diameter(region) / (4.0 * R));
    pb.satisfied = area(region) >= (double)pb.m * kPi * R * R;
    return pb;
}

PackingBound packing_lower_bound(const RegionSet& set, double R) {
    if (set.size() != 1)
        throw std::invalid_argument(
            "packing_lower_bound: set has " + std::to_string(set.size()) +
            " components; apply per connected component");
    return packing_lower_bound(set.front(), R);
}

std::vector<Region> regularize_raster(const BinaryMask& mask, double R) {
    const double r_px = R / mask.pixel_size;
    if (r_px < 2.0)
        throw std::invalid_argument("regularize_raster: R must be at least 2 pixels");

    const BinaryMask cleaned = close_mask(open_mask(mask, r_px), r_px);
    std::vector<ClosedCurve> loops = trace_boundaries(cleaned);

    // Pixel staircase -> smooth curve: dense resample, arclength Gaussian,
    // resample to the mandated spacing R/8.
    const double dense = 0.75 * mask.pixel_size;
    const double sigma = std::max(R / 3.0, 0.8 * mask.pixel_size);
    const double target = R / 8.0;

    struct Candidate {
        ClosedCurve curve;
        double area;
    };
    std::vector<Candidate> outers, holes;
    for (const ClosedCurve& loop : loops) {
        if (perimeter(loop) < 1.8 * kPi * R) continue;  // cannot bound a U_R component
        ClosedCurve c = resample_uniform(loop, dense, /*preserve_corners=*/false);
        c = smooth_closed(c, sigma, dense);
        c = resample_uniform(c, target, /*preserve_corners=*/false);
        if (c.size() < 8 || !is_simple(c)) continue;
        const double a = signed_area(c);
        if (a > 0.0)
            outers.push_back({std::move(c), a});
        else
            holes.push_back({std::move(c), a});
    }

    std::vector<Region> candidates;
    for (Candidate& o : outers) {
        Region r;
        r.outer = std::move(o.curve);
        candidates.push_back(std::move(r));
    }
    // attach each hole to the smallest containing outer
    for (Candidate& h : holes) {
        int best = -1;
        double best_area = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (contains_point(candidates[i].outer, h.curve[0])) {
                const double a = signed_area(candidates[i].outer);
                if (best == -1 || a < best_area) {
                    best = (int)i;
                    best_area = a;
                }
            }
        }
        if (best >= 0) candidates[(std::size_t)best].holes.push_back(std::move(h.curve));
    }

    // keep only candidates that are valid and individually in the class
    std::vector<Region> kept;
    for (Region& r : candidates) {
        try {
            validate_region(r);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (check_region(r, R, 0.05).pass) kept.push_back(std::move(r));
    }

    // enforce the set-level exterior condition; drop smallest offenders
    while (kept.size() > 1) {
        const SphereReport rep = check_region(kept, R, 0.05);
        if (rep.pass) break;
        std::vector<char> offending(kept.size(), 0);
        for (const VertexCheck& vc : rep.per_vertex)
            if (!vc.interior_ok || !vc.exterior_ok) offending[(std::size_t)vc.region] = 1;
        std::size_t drop = kept.size();
        double drop_area = 0.0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (!offending[i]) continue;
            const double a = area(kept[i]);
            if (drop == kept.size() || a < drop_area) {
                drop = i;
                drop_area = a;
            }
        }
        if (drop == kept.size()) break;
        kept.erase(kept.begin() + (long)drop);
    }
    return kept;
}

}  // namespace curvseg
