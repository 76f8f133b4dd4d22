#pragma once

#include "curvseg/energy.hpp"
#include "curvseg/geometry.hpp"
#include "curvseg/raster.hpp"

#include <utility>
#include <vector>

namespace curvseg {

/// Symmetric Hausdorff distance between the boundaries of two sets:
/// dense boundary samples on each side against exact point-to-segment
/// distances on the other.
double hausdorff_distance(const RegionSet& a, const RegionSet& b);

/// Area of the symmetric difference via pixel-center rasterization on
/// the frame grid.
double l1_distance(const RegionSet& a, const RegionSet& b, const RasterImage& frame);

struct SequenceReport {
    std::vector<double> hausdorff_to_limit;
    std::vector<double> l1_to_limit;
    std::vector<double> perimeter;
    std::vector<double> F_value;  // curvature energy of the full boundary
    bool limit_feasible = false;
    bool perimeter_converges = false;   // last-term deviation <= 1 percent
    bool semicontinuity_ok = false;     // F(limit) <= min of last quarter + 2 percent
};

/// Per-term metrics of a sequence of sets against its limit; every term
/// must pass the R-sphere check (throws naming the failing index).  The
/// liminf statement itself concerns infinite sequences, so these flags
/// are consistency probes, not proofs.
SequenceReport analyze_sequence(const std::vector<RegionSet>& seq, const RegionSet& limit,
                                double R, const PhiModel& phi,
                                double perimeter_tol = 0.01, double semicont_tol = 0.02);

struct EquivalencePair {
    double l1 = 0.0;
    double hausdorff = 0.0;
    bool in_class = false;  // both sets pass the R-sphere check
};

struct EquivalenceReport {
    std::vector<EquivalencePair> pairs;  // caller pairs, in order
    /// deciles[i] = (l1 threshold at decile i+1, max hausdorff among
    /// in-class pairs with l1 <= threshold); shows the two metrics
    /// shrinking together inside the class.
    std::vector<std::pair<double, double>> deciles;
    /// A constructed pair outside the class: a disk plus a far disk of
    /// radius R/4 keeps l1 tiny while hausdorff stays large.
    EquivalencePair counterexample;
};

EquivalenceReport equivalence_probe(
    const std::vector<std::pair<RegionSet, RegionSet>>& pairs, double R);

/// Named generator families with closed-form limits, for convergence
/// experiments with analytic ground truth.

/// Circles of radius 3R with radial perturbation amplitude R/(10h),
/// frequency 6; limit is the plain circle of radius 3R.
std::vector<RegionSet> family_shrinking_radial(double R, int terms);
RegionSet family_shrinking_radial_limit(double R);

/// A capsule translated by R/h along a fixed direction; limit unmoved.
std::vector<RegionSet> family_translation_decay(double R, int terms);
RegionSet family_translation_decay_limit(double R);

/// Circles of radius 2R*(1 + 0.1/h); limit radius 2R.
std::vector<RegionSet> family_radius_decay(double R, int terms);
RegionSet family_radius_decay_limit(double R);

}  // namespace curvseg
