#pragma once

#include "curvseg/geometry.hpp"
#include "curvseg/raster.hpp"

#include <cstdint>
#include <vector>

namespace curvseg {

/// Convex curvature density phi(kappa).
///  - Power:     1 + |kappa|^p, p >= 1
///  - NitzbergMumford: nu + a*kappa^2 for |kappa| < b/a, nu + b*|kappa| else
///  - Quadratic: c0 + c2*kappa^2, c2 >= 0
class PhiModel {
  public:
    enum class Kind { Power, NitzbergMumford, Quadratic };

    static PhiModel power(double p);
    static PhiModel nitzberg_mumford(double nu, double a, double b);
    static PhiModel quadratic(double c0, double c2);

    double operator()(double kappa) const;
    Kind kind() const { return kind_; }
    double param(int i) const { return params_[i]; }

  private:
    PhiModel(Kind k, double p0, double p1, double p2)
        : kind_(k), params_{p0, p1, p2} {}
    Kind kind_;
    double params_[3];
};

double phi_eval(const PhiModel& phi, double kappa);

struct EnergyParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double R = 1.0;
    PhiModel phi = PhiModel::power(2.0);

    void validate() const;  // throws unless all parameters are positive
};

/// Depth-ordered layers; index 0 is frontmost.  Layers may overlap: the
/// visible part of layer i is the layer minus all layers in front of it.
struct LayeredSegmentation {
    std::vector<Region> layers;

    std::size_t size() const { return layers.size(); }
    bool empty() const { return layers.empty(); }
};

/// Visible-part decomposition on the frame grid.  labels[p] = 1-based
/// index of the frontmost layer containing the pixel center, 0 for
/// background; every pixel gets exactly one label.
struct OverlapDecomposition {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;

    std::vector<std::uint8_t> mask(int layer_1based) const;  // 0 = background mask
    std::size_t count(int layer_1based) const;
};

OverlapDecomposition overlap_decompose(const LayeredSegmentation& seg,
                                       const RasterImage& img);

/// Arithmetic mean of g over the mask; empty mask -> 0 by convention
/// (the fidelity term of an empty part vanishes with the part).
double region_mean(const RasterImage& img, const std::vector<std::uint8_t>& mask);

/// Sum over mask pixels of (g - mean)^2 * pixel_size^2.
double fidelity(const RasterImage& img, const std::vector<std::uint8_t>& mask);

/// Sum of phi(kappa_i) * w_i over the curvature profile.
double curvature_energy(const ClosedCurve& curve, const PhiModel& phi);
/// Over the full region boundary (outer plus holes).
double curvature_energy(const Region& region, const PhiModel& phi);

struct EnergyBreakdown {
    double G = 0.0;
    std::vector<double> fidelity_per_layer;
    double fidelity_background = 0.0;
    std::vector<double> area_terms;       // beta * full layer area
    std::vector<double> curvature_terms;  // gamma * boundary energy
    bool feasible = false;                // all layers pass the R-sphere check
};

/// G = alpha*(sum of visible-part fidelities + background fidelity)
///   + sum_i (beta*area(E_i) + gamma*curvature_energy(boundary E_i)).
/// The area and curvature terms read the full layer, not the visible
/// part, and the fidelity terms only integrate over the image frame.
EnergyBreakdown total_energy(const LayeredSegmentation& seg, const RasterImage& img,
                             const EnergyParams& params);

/// L * phi(2*pi/L) with L the perimeter: a lower bound on the boundary
/// energy of convex curves for convex phi (Jensen with total turning 2pi).
double jensen_lower_bound(const ClosedCurve& curve, const PhiModel& phi);

/// floor(G / (beta*pi*R^2)): the most nonempty layers any improving
/// solution can carry, since each one costs at least beta*pi*R^2 of area.
long long k_upper_bound(double current_G, const EnergyParams& params);

}  // namespace curvseg
