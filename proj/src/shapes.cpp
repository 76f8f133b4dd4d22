#include "curvseg/shapes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curvseg {

namespace {
constexpr double kPi = std::numbers::pi;
}

ClosedCurve make_circle(Point2 center, double radius, std::size_t n, double phase) {
    if (radius <= 0.0 || n < 3) throw std::invalid_argument("make_circle: bad parameters");
    ClosedCurve c;
    c.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = phase + 2.0 * kPi * (double)i / (double)n;
        c.vertices.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    }
    return c;
}

Region make_disk(Point2 center, double radius, std::size_t n, double phase) {
    Region r;
    r.outer = make_circle(center, radius, n, phase);
    return r;
}

Region make_capsule(Point2 center, double length, double cap_radius, double spacing) {
    if (length < 0.0 || cap_radius <= 0.0 || spacing <= 0.0)
        throw std::invalid_argument("make_capsule: bad parameters");
    const double hx = 0.5 * length;
    ClosedCurve c;
    auto arc = [&](Point2 apex_center, double t0, double t1) {
        const double arclen = cap_radius * std::abs(t1 - t0);
        const std::size_t m = std::max<std::size_t>(2, (std::size_t)std::ceil(arclen / spacing));
        for (std::size_t i = 0; i < m; ++i) {  // excludes t1
            const double t = t0 + (t1 - t0) * (double)i / (double)m;
            c.vertices.push_back({apex_center.x + cap_radius * std::cos(t),
                                  apex_center.y + cap_radius * std::sin(t)});
        }
    };
    auto straight = [&](Point2 a, Point2 b) {
        const double len = distance(a, b);
        const std::size_t m = std::max<std::size_t>(1, (std::size_t)std::ceil(len / spacing));
        for (std::size_t i = 0; i < m; ++i)  // excludes b
            c.vertices.push_back(a + ((double)i / (double)m) * (b - a));
    };
    const Point2 cr{center.x + hx, center.y};
    const Point2 cl{center.x - hx, center.y};
    straight({cl.x, center.y - cap_radius}, {cr.x, center.y - cap_radius});
    arc(cr, -kPi / 2.0, kPi / 2.0);
    straight({cr.x, center.y + cap_radius}, {cl.x, center.y + cap_radius});
    arc(cl, kPi / 2.0, 3.0 * kPi / 2.0);
    Region r;
    r.outer = c;
    return r;
}

Region make_perturbed_disk(Point2 center, double base_radius, double amplitude,
                           int frequency, std::size_t n) {
    if (base_radius <= std::abs(amplitude))
        throw std::invalid_argument("make_perturbed_disk: amplitude exceeds base radius");
    ClosedCurve c;
    c.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * (double)i / (double)n;
        const double r = base_radius + amplitude * std::sin(frequency * t);
        c.vertices.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
    }
    Region reg;
    reg.outer = c;
    return reg;
}

Region make_rounded_rect(Point2 center, double width, double height,
                         double corner_radius, double spacing) {
    const double rc = corner_radius;
    if (width <= 2.0 * rc || height <= 2.0 * rc || rc <= 0.0 || spacing <= 0.0)
        throw std::invalid_argument("make_rounded_rect: bad parameters");
    const double hx = 0.5 * width - rc;
    const double hy = 0.5 * height - rc;
    ClosedCurve c;
    auto arc = [&](Point2 ac, double t0, double t1) {
        const double arclen = rc * std::abs(t1 - t0);
        const std::size_t m = std::max<std::size_t>(2, (std::size_t)std::ceil(arclen / spacing));
        for (std::size_t i = 0; i < m; ++i) {
            const double t = t0 + (t1 - t0) * (double)i / (double)m;
            c.vertices.push_back({ac.x + rc * std::cos(t), ac.y + rc * std::sin(t)});
        }
    };
    auto straight = [&](Point2 a, Point2 b) {
        const double len = distance(a, b);
        const std::size_t m = std::max<std::size_t>(1, (std::size_t)std::ceil(len / spacing));
        for (std::size_t i = 0; i < m; ++i)
            c.vertices.push_back(a + ((double)i / (double)m) * (b - a));
    };
    const double cx = center.x, cy = center.y;
    straight({cx - hx, cy - hy - rc}, {cx + hx, cy - hy - rc});
    arc({cx + hx, cy - hy}, -kPi / 2.0, 0.0);
    straight({cx + hx + rc, cy - hy}, {cx + hx + rc, cy + hy});
    arc({cx + hx, cy + hy}, 0.0, kPi / 2.0);
    straight({cx + hx, cy + hy + rc}, {cx - hx, cy + hy + rc});
    arc({cx - hx, cy + hy}, kPi / 2.0, kPi);
    straight({cx - hx - rc, cy + hy}, {cx - hx - rc, cy - hy});
    arc({cx - hx, cy - hy}, kPi, 3.0 * kPi / 2.0);
    Region r;
    r.outer = c;
    return r;
}

Region make_ellipse(Point2 center, double a, double b, std::size_t n) {
    if (a < b || b <= 0.0) throw std::invalid_argument("make_ellipse: need a >= b > 0");
    ClosedCurve c;
    c.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * (double)i / (double)n;
        c.vertices.push_back({center.x + a * std::cos(t), center.y + b * std::sin(t)});
    }
    Region r;
    r.outer = c;
    return r;
}

Region make_annulus(Point2 center, double outer_radius, double inner_radius,
                    std::size_t n) {
    if (inner_radius <= 0.0 || outer_radius <= inner_radius)
        throw std::invalid_argument("make_annulus: need 0 < inner < outer");
    Region r;
    r.outer = make_circle(center, outer_radius, n);
    r.holes.push_back(reversed(make_circle(center, inner_radius, n)));
    return r;
}

ClosedCurve make_l_hexagon() {
    ClosedCurve c;
    c.vertices = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    return c;
}

ClosedCurve make_unit_square_ccw() {
    ClosedCurve c;
    c.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return c;
}

}  // namespace curvseg
