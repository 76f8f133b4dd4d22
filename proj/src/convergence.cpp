#include "curvseg/convergence.hpp"

#include "curvseg/shapes.hpp"
#include "curvseg/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curvseg {

namespace {

constexpr double kPi = std::numbers::pi;

double min_perimeter(const RegionSet& set) {
    double m = std::numeric_limits<double>::max();
    for (const Region& r : set)
        for (const ClosedCurve* c : r.boundary_curves()) m = std::min(m, perimeter(*c));
    return m;
}

// max over dense samples of `from` of the distance to the boundary of `to`
double directed_hausdorff(const RegionSet& from, const RegionSet& to, double spacing) {
    double worst = 0.0;
    for (const Region& r : from) {
        for (const ClosedCurve* c : r.boundary_curves()) {
            ClosedCurve dense = *c;
            if (max_edge_length(dense) > spacing && spacing >= perimeter(dense) / 1e6)
                dense = resample_uniform(dense, spacing, /*preserve_corners=*/true);
            for (const Point2& p : dense.vertices)
                worst = std::max(worst, distance_to_boundary(to, p));
        }
    }
    return worst;
}

}  // namespace

double hausdorff_distance(const RegionSet& a, const RegionSet& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff_distance: empty region set");
    const double spacing = std::min(min_perimeter(a), min_perimeter(b)) / 256.0;
    return std::max(directed_hausdorff(a, b, spacing), directed_hausdorff(b, a, spacing));
}

double l1_distance(const RegionSet& a, const RegionSet& b, const RasterImage& frame) {
    if (!frame.valid()) throw std::invalid_argument("l1_distance: invalid frame");
    const std::vector<std::uint8_t> ra = rasterize_set(a, frame);
    const std::vector<std::uint8_t> rb = rasterize_set(b, frame);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (ra[i] != rb[i]) ++diff;
    return (double)diff * frame.pixel_size * frame.pixel_size;
}

namespace {

RasterImage metric_frame(const RegionSet& a, const RegionSet& b, int max_dim = 512) {
    BoundingBox bb = merge(bounding_box(a), bounding_box(b));
    const double pad = 0.05 * std::max(1e-9, bb.diagonal());
    bb.lo = bb.lo - Point2{pad, pad};
    bb.hi = bb.hi + Point2{pad, pad};
    const double w = bb.hi.x - bb.lo.x, h = bb.hi.y - bb.lo.y;
    const double px = std::max(w, h) / max_dim;
    const int nx = std::max(1, (int)std::ceil(w / px));
    const int ny = std::max(1, (int)std::ceil(h / px));
    return make_image(nx, ny, px, bb.lo);
}

}  // namespace

SequenceReport analyze_sequence(const std::vector<RegionSet>& seq, const RegionSet& limit,
                                double R, const PhiModel& phi, double perimeter_tol,
                                double semicont_tol) {
    if (seq.empty()) throw std::invalid_argument("analyze_sequence: empty sequence");
    for (std::size_t h = 0; h < seq.size(); ++h)
        if (!check_region(seq[h], R).pass)
            throw std::invalid_argument("analyze_sequence: term " + std::to_string(h) +
                                        " fails the R-sphere check");

    SequenceReport rep;
    rep.limit_feasible = check_region(limit, R).pass;

    auto total_perimeter = [](const RegionSet& set) {
        double p = 0.0;
        for (const Region& r : set)
            for (const ClosedCurve* c : r.boundary_curves()) p += perimeter(*c);
        return p;
    };
    auto total_F = [&phi](const RegionSet& set) {
        double f = 0.0;
        for (const Region& r : set) f += curvature_energy(r, phi);
        return f;
    };

    RegionSet all_union = limit;
    for (const RegionSet& s : seq) all_union.insert(all_union.end(), s.begin(), s.end());
    const RasterImage frame = metric_frame(all_union, limit);

    for (const RegionSet& term : seq) {
        rep.hausdorff_to_limit.push_back(hausdorff_distance(term, limit));
        rep.l1_to_limit.push_back(l1_distance(term, limit, frame));
        rep.perimeter.push_back(total_perimeter(term));
        rep.F_value.push_back(total_F(term));
    }

    const double P_limit = total_perimeter(limit);
    const double F_limit = total_F(limit);

    const double last_dev = std::abs(rep.perimeter.back() - P_limit);
    bool eventually_decreasing = true;
    const std::size_t start = seq.size() / 2;
    for (std::size_t h = start; h + 1 < seq.size(); ++h) {
        const double d0 = std::abs(rep.perimeter[h] - P_limit);
        const double d1 = std::abs(rep.perimeter[h + 1] - P_limit);
        if (d1 > d0 + 1e-9 * (1.0 + P_limit)) eventually_decreasing = false;
    }
    rep.perimeter_converges =
        last_dev <= perimeter_tol * P_limit && eventually_decreasing;

    double min_tail = std::numeric_limits<double>::max();
    const std::size_t tail_start = (3 * seq.size()) / 4;
    for (std::size_t h = tail_start; h < seq.size(); ++h)
        min_tail = std::min(min_tail, rep.F_value[h]);
    rep.semicontinuity_ok = F_limit <= min_tail + semicont_tol * F_limit;
    return rep;
}

EquivalenceReport equivalence_probe(
    const std::vector<std::pair<RegionSet, RegionSet>>& pairs, double R) {
    EquivalenceReport rep;
    for (const auto& [a, b] : pairs) {
        EquivalencePair ep;
        ep.hausdorff = hausdorff_distance(a, b);
        const RasterImage frame = metric_frame(a, b);
        ep.l1 = l1_distance(a, b, frame);
        bool ok = true;
        try {
            ok = check_region(a, R).pass && check_region(b, R).pass;
        } catch (const std::invalid_argument&) {
            ok = false;
        }
        ep.in_class = ok;
        rep.pairs.push_back(ep);
    }

    // deciles of l1 over in-class pairs, with the worst hausdorff below each
    std::vector<const EquivalencePair*> in_class;
    for (const EquivalencePair& p : rep.pairs)
        if (p.in_class) in_class.push_back(&p);
    if (!in_class.empty()) {
        std::vector<double> l1s;
        for (const EquivalencePair* p : in_class) l1s.push_back(p->l1);
        std::sort(l1s.begin(), l1s.end());
        for (int d = 1; d <= 10; ++d) {
            std::size_t pos = (std::size_t)d * l1s.size() / 10;
            if (pos > 0) --pos;
            pos = std::min(pos, l1s.size() - 1);
            const double thr = l1s[pos];
            double worst_h = 0.0;
            for (const EquivalencePair* p : in_class)
                if (p->l1 <= thr) worst_h = std::max(worst_h, p->hausdorff);
            rep.deciles.emplace_back(thr, worst_h);
        }
    }

    // outside the class, small l1 does not control hausdorff: attach a
    // far speck of radius R/4 (its curvature 4/R violates the bound)
    const RegionSet base{make_disk({0.0, 0.0}, 3.0 * R, 512)};
    RegionSet spiked = base;
    spiked.push_back(make_disk({10.0 * R, 0.0}, R / 4.0, 64));
    rep.counterexample.hausdorff = hausdorff_distance(base, spiked);
    const RasterImage frame = metric_frame(base, spiked);
    rep.counterexample.l1 = l1_distance(base, spiked, frame);
    rep.counterexample.in_class = false;
    return rep;
}

std::vector<RegionSet> family_shrinking_radial(double R, int terms) {
    std::vector<RegionSet> seq;
    for (int h = 1; h <= terms; ++h) {
        const double amp = R / (10.0 * h);
        seq.push_back({make_perturbed_disk({0.0, 0.0}, 3.0 * R, amp, 6, 1024)});
    }
    return seq;
}

RegionSet family_shrinking_radial_limit(double R) {
    return {make_disk({0.0, 0.0}, 3.0 * R, 1024)};
}

std::vector<RegionSet> family_translation_decay(double R, int terms) {
    const Region base = family_translation_decay_limit(R).front();
    std::vector<RegionSet> seq;
    const Point2 dir{std::cos(1.0), std::sin(1.0)};
    for (int h = 1; h <= terms; ++h)
        seq.push_back({translated(base, (R / h) * dir)});
    return seq;
}

RegionSet family_translation_decay_limit(double R) {
    return {make_capsule({0.0, 0.0}, 4.0 * R, 1.5 * R, R / 10.0)};
}

std::vector<RegionSet> family_radius_decay(double R, int terms) {
    std::vector<RegionSet> seq;
    for (int h = 1; h <= terms; ++h)
        seq.push_back({make_disk({0.0, 0.0}, 2.0 * R * (1.0 + 0.1 / h), 1024)});
    return seq;
}

RegionSet family_radius_decay_limit(double R) {
    return {make_disk({0.0, 0.0}, 2.0 * R, 1024)};
}

}  // namespace curvseg
