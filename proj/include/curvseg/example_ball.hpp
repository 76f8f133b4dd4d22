#pragma once

#include "curvseg/energy.hpp"
#include "curvseg/optimizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace curvseg {

/// Packaged reproduction of the ball-minimizer construction: the target
/// image is the indicator of the disk of radius R (R > 1) on the frame
/// [-2.5R, 2.5R]^2, so the frame area is 25R^2 and the empty-set bound
/// is satisfiable with alpha = 10*beta = 10*gamma.
struct ExampleBallReport {
    double R = 0.0;
    int grid = 0;
    double alpha = 10.0, beta = 1.0, gamma = 1.0;

    double analytic_disk_energy = 0.0;  // beta*pi*R^2 + gamma*(2*pi*R + 2*pi/R)
    double analytic_empty_G = 0.0;      // alpha*(pi*R^2 - pi^2*R^4 / frame area)

    double g_disk = 0.0;   // measured G of the polygonal disk
    double g_empty = 0.0;  // measured G of the empty segmentation
    std::vector<std::string> competitor_names;
    std::vector<double> g_competitors;  // 20 feasible competitors
    bool inequality_ok = false;         // G(empty) >= analytic disk energy
    bool disk_wins = false;             // disk strictly below empty and all competitors

    bool optimized = false;  // remaining fields only set when the run happened
    double opt_best_G = 0.0;
    double opt_hausdorff_to_circle = 0.0;
    int opt_layers = 0;
};

/// Builds the image, checks the parameter inequality (throws with the
/// two sides when it fails), evaluates the disk/empty/competitor
/// energies, and optionally runs the annealer from a perturbed seed.
ExampleBallReport example_ball(double R, int grid, bool run_optimizer = false,
                               std::uint64_t seed = 0, double alpha = 10.0,
                               double beta = 1.0, double gamma = 1.0,
                               int iterations = 30000);

/// The image used by the reproduction: g = chi_{B(0,R)} on
/// [-2.5R, 2.5R]^2 at grid x grid pixels.
RasterImage example_ball_image(double R, int grid);

std::string example_ball_report_text(const ExampleBallReport& rep);

}  // namespace curvseg
