#include "curvseg/example_ball.hpp"

#include "curvseg/convergence.hpp"
#include "curvseg/rng.hpp"
#include "curvseg/shapes.hpp"
#include "curvseg/sphere.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace curvseg {

namespace {
constexpr double kPi = std::numbers::pi;
}

RasterImage example_ball_image(double R, int grid) {
    const double half = 2.5 * R;
    RasterImage img = make_image(grid, grid, 2.0 * half / grid, {-half, -half});
    for (int y = 0; y < grid; ++y) {
        for (int x = 0; x < grid; ++x) {
            const Point2 c = img.pixel_center(x, y);
            img.at(x, y) = (c.x * c.x + c.y * c.y < R * R) ? 1.0 : 0.0;
        }
    }
    return img;
}

ExampleBallReport example_ball(double R, int grid, bool run_optimizer,
                               std::uint64_t seed, double alpha, double beta,
                               double gamma, int iterations) {
    if (R <= 1.0)
        throw std::invalid_argument("example_ball: requires R > 1");
    if (grid < 32) throw std::invalid_argument("example_ball: grid too small");

    ExampleBallReport rep;
    rep.R = R;
    rep.grid = grid;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.gamma = gamma;
    rep.analytic_disk_energy = beta * kPi * R * R + gamma * (2.0 * kPi * R + 2.0 * kPi / R);
    const double frame_area = 25.0 * R * R;
    rep.analytic_empty_G = alpha * (kPi * R * R - kPi * kPi * R * R * R * R / frame_area);

    const RasterImage img = example_ball_image(R, grid);
    EnergyParams params;
    params.alpha = alpha;
    params.beta = beta;
    params.gamma = gamma;
    params.R = R;
    params.phi = PhiModel::power(2.0);

    rep.g_empty = total_energy(LayeredSegmentation{}, img, params).G;
    rep.inequality_ok = rep.g_empty >= rep.analytic_disk_energy;
    if (!rep.inequality_ok) {
        std::ostringstream msg;
        msg << "example_ball: empty-set energy " << rep.g_empty
            << " does not dominate the disk bound " << rep.analytic_disk_energy
            << "; enlarge alpha or the frame";
        throw std::invalid_argument(msg.str());
    }

    const double spacing = R / 8.0;
    auto as_layer = [&](Region r) {
        LayeredSegmentation seg;
        r.outer = resample_uniform(r.outer, spacing);
        for (ClosedCurve& h : r.holes) h = resample_uniform(h, spacing);
        seg.layers.push_back(std::move(r));
        return seg;
    };

    const Region analytic_disk = make_disk({0.0, 0.0}, R, 512);
    rep.g_disk = total_energy(as_layer(analytic_disk), img, params).G;

    // 20 feasible competitors; several have perimeter well above 2*pi*R + R
    std::vector<std::pair<std::string, Region>> competitors;
    for (double f : {1.05, 1.1, 1.25, 1.5, 2.0})
        competitors.emplace_back("disk_x" + std::to_string(f),
                                 make_disk({0.0, 0.0}, f * R, 512));
    competitors.emplace_back("disk_shift_a", make_disk({0.2 * R, 0.0}, R, 512));
    competitors.emplace_back("disk_shift_b", make_disk({0.0, 0.35 * R}, R, 512));
    competitors.emplace_back("disk_shift_c", make_disk({-0.5 * R, 0.25 * R}, R, 512));
    competitors.emplace_back("ellipse_a", make_ellipse({0.0, 0.0}, 1.5 * R, 1.3 * R, 512));
    competitors.emplace_back("ellipse_b", make_ellipse({0.0, 0.0}, 1.8 * R, 1.5 * R, 512));
    for (double l : {1.0, 2.0, 3.0})
        competitors.emplace_back("capsule_l" + std::to_string(l),
                                 make_capsule({0.0, 0.0}, l * R, R, spacing / 2.0));
    competitors.emplace_back("rounded_rect_a",
                             make_rounded_rect({0.0, 0.0}, 3.0 * R, 2.6 * R, 1.2 * R,
                                               spacing / 2.0));
    competitors.emplace_back("rounded_rect_b",
                             make_rounded_rect({0.0, 0.0}, 4.0 * R, 3.0 * R, 1.1 * R,
                                               spacing / 2.0));
    competitors.emplace_back("wavy_a",
                             make_perturbed_disk({0.0, 0.0}, 2.0 * R, R / 20.0, 5, 1024));
    competitors.emplace_back("wavy_b",
                             make_perturbed_disk({0.0, 0.0}, 2.0 * R, R / 30.0, 5, 1024));
    // the flesh must be at least 2R thick for the interior ball to fit
    competitors.emplace_back("annulus", make_annulus({0.0, 0.0}, 3.5 * R, 1.2 * R, 1024));
    competitors.emplace_back("big_disk_shift",
                             make_disk({0.3 * R, -0.3 * R}, 2.2 * R, 512));
    competitors.emplace_back("wavy_c",
                             make_perturbed_disk({0.0, 0.0}, 2.5 * R, R / 15.0, 4, 1024));

    rep.disk_wins = rep.g_disk < rep.g_empty;
    for (auto& [name, region] : competitors) {
        const LayeredSegmentation seg = as_layer(region);
        if (!check_region(seg.layers[0], R).pass)
            throw std::logic_error("example_ball: competitor " + name +
                                   " is infeasible at R");
        const double g = total_energy(seg, img, params).G;
        rep.competitor_names.push_back(name);
        rep.g_competitors.push_back(g);
        rep.disk_wins = rep.disk_wins && rep.g_disk < g;
    }

    if (run_optimizer) {
        Rng rng(seed);
        // perturbed but feasible start: translated and slightly inflated disk
        const double angle = rng.uniform(0.0, 2.0 * kPi);
        const Point2 offset{0.3 * R * std::cos(angle), 0.3 * R * std::sin(angle)};
        Region noisy = make_disk(offset, 1.1 * R, 512);
        LayeredSegmentation start = as_layer(noisy);

        Schedule sched;
        sched.iterations = iterations;
        sched.seed = seed;
        // a short warm phase to unlock the raster, then effectively greedy
        sched.T0 = 0.3;
        sched.cooling = 0.9;
        const RunReport run = optimize_from(start, img, params, sched, 1);
        rep.optimized = true;
        rep.opt_best_G = run.best_energy;
        rep.opt_layers = (int)run.final_seg.size();
        if (!run.final_seg.empty())
            rep.opt_hausdorff_to_circle = hausdorff_distance(
                RegionSet{run.final_seg.layers[0]}, RegionSet{analytic_disk});
        else
            rep.opt_hausdorff_to_circle = std::numeric_limits<double>::infinity();
    }
    return rep;
}

std::string example_ball_report_text(const ExampleBallReport& rep) {
    std::ostringstream os;
    os << "ball minimizer reproduction\n";
    os << "  R = " << rep.R << ", grid = " << rep.grid << ", alpha = " << rep.alpha
       << ", beta = " << rep.beta << ", gamma = " << rep.gamma << "\n";
    os << "  analytic disk energy  = " << rep.analytic_disk_energy << "\n";
    os << "  analytic empty G      = " << rep.analytic_empty_G << "\n";
    os << "  measured  disk G      = " << rep.g_disk << "\n";
    os << "  measured  empty G     = " << rep.g_empty << "\n";
    os << "  parameter inequality  = " << (rep.inequality_ok ? "satisfied" : "violated")
       << "\n";
    os << "  competitors (" << rep.g_competitors.size() << "):\n";
    for (std::size_t i = 0; i < rep.g_competitors.size(); ++i)
        os << "    " << rep.competitor_names[i] << "  G = " << rep.g_competitors[i]
           << "\n";
    os << "  disk wins             = " << (rep.disk_wins ? "yes" : "no") << "\n";
    if (rep.optimized) {
        os << "  optimizer best G      = " << rep.opt_best_G << "\n";
        os << "  hausdorff to circle   = " << rep.opt_hausdorff_to_circle << "\n";
        os << "  layers                = " << rep.opt_layers << "\n";
    }
    return os.str();
}

}  // namespace curvseg
