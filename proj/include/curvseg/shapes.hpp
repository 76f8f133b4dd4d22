#pragma once

#include "curvseg/geometry.hpp"

#include <cstddef>

namespace curvseg {

/// Regular n-gon inscribed in the circle of the given radius, CCW,
/// first vertex at angle phase.
ClosedCurve make_circle(Point2 center, double radius, std::size_t n, double phase = 0.0);

Region make_disk(Point2 center, double radius, std::size_t n, double phase = 0.0);

/// Stadium (capsule): straight segment of length `length` along the
/// x axis through `center`, capped by semicircles of radius cap_radius.
/// Vertex spacing approximately `spacing`.
Region make_capsule(Point2 center, double length, double cap_radius, double spacing);

/// Polar graph r(t) = base_radius + amplitude * sin(frequency * t), CCW.
Region make_perturbed_disk(Point2 center, double base_radius, double amplitude,
                           int frequency, std::size_t n);

/// Axis-aligned rectangle with circular corner fillets of radius
/// corner_radius; width/height are the full outer dimensions.
Region make_rounded_rect(Point2 center, double width, double height,
                         double corner_radius, double spacing);

/// Axis-aligned ellipse with semi-axes a >= b > 0.
Region make_ellipse(Point2 center, double a, double b, std::size_t n);

/// Annulus: disk of outer_radius with a concentric hole of inner_radius.
Region make_annulus(Point2 center, double outer_radius, double inner_radius,
                    std::size_t n);

/// Counterclockwise L-shaped hexagon with one reflex corner, for
/// turning-angle tests (total absolute curvature 3*pi).
ClosedCurve make_l_hexagon();

ClosedCurve make_unit_square_ccw();

}  // namespace curvseg
