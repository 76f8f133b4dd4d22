#pragma once

#include "curvseg/energy.hpp"
#include "curvseg/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace curvseg {

struct Schedule {
    int iterations = 20000;
    /// Initial temperature; unset means 0.05 * G_seed.  T = 0 is greedy.
    std::optional<double> T0;
    double cooling = 0.995;  // applied once per 100 iterations
    std::uint64_t seed = 0;
    double move_scale = 0.1;  // fraction of R, in (0, 0.5]

    void validate() const;
};

enum class MoveKind : int {
    Deform = 0,     // windowed normal displacement with cosine taper
    Inflate = 1,    // uniform offset along outward normals
    Translate = 2,  // rigid translation of one layer
    Delete = 3,
    InsertDisk = 4,  // disk of radius exactly R at a high-residual pixel
    SwapDepth = 5,
};
inline constexpr int kMoveKindCount = 6;
const char* move_kind_name(MoveKind kind);

struct MoveStats {
    long proposed = 0;
    long accepted = 0;
    long rejected_by_constraint = 0;
};

struct RunReport {
    double best_energy = 0.0;
    std::vector<double> energy_trace;  // energy after each accepted move
    std::vector<int> k_trace;          // layer count after each accepted move
    std::array<MoveStats, kMoveKindCount> move_stats{};
    LayeredSegmentation final_seg;     // best feasible state seen
    bool feasible = true;
};

/// Otsu threshold, connected components, boundary regularization at
/// radius R, keep up to k_hint largest layers.  May return an empty
/// segmentation; every returned layer passes check_region at R.
LayeredSegmentation seed_segmentation(const RasterImage& img, double R, int k_hint);

struct MoveProposal {
    LayeredSegmentation seg;
    MoveKind kind = MoveKind::Deform;
    int changed_layer = -1;  // -1 when no layer geometry changed
    bool identity = false;
};

/// One random move drawn from the catalogue; geometry-changing moves
/// resample the touched layer to spacing R/8.
MoveProposal propose_move(const LayeredSegmentation& seg, const RasterImage& img,
                          const EnergyParams& params, double move_scale, Rng& rng);

struct AcceptDecision {
    bool accepted = false;
    bool constraint_rejected = false;
    double candidate_G = 0.0;
};

/// Constraint-first Metropolis rule: infeasible candidates are rejected
/// outright; otherwise accept when the energy strictly decreases, keep
/// the incumbent on exact ties, and accept uphill moves with probability
/// exp(-dG/T) (never, when T = 0).
AcceptDecision accept(double current_G, const MoveProposal& candidate,
                      const RasterImage& img, const EnergyParams& params, double T,
                      Rng& rng);

RunReport optimize_fixed_k(const RasterImage& img, const EnergyParams& params,
                           const Schedule& schedule, int k);

/// Like fixed-k, but insert moves grow k up to the area bound
/// floor(G / (beta*pi*R^2)) and deletions shrink it.
RunReport optimize_variable_k(const RasterImage& img, const EnergyParams& params,
                              const Schedule& schedule);

/// Starts from a given segmentation instead of the Otsu seed.
RunReport optimize_from(const LayeredSegmentation& start, const RasterImage& img,
                        const EnergyParams& params, const Schedule& schedule,
                        std::optional<int> fixed_k);

}  // namespace curvseg
