#include "curvseg/energy.hpp"

#include "curvseg/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curvseg {

namespace {
constexpr double kPi = std::numbers::pi;
}

PhiModel PhiModel::power(double p) {
    if (p < 1.0) throw std::invalid_argument("PhiModel::power: need p >= 1");
    return PhiModel(Kind::Power, p, 0.0, 0.0);
}

PhiModel PhiModel::nitzberg_mumford(double nu, double a, double b) {
    if (nu <= 0.0 || a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("PhiModel::nitzberg_mumford: need nu, a, b > 0");
    return PhiModel(Kind::NitzbergMumford, nu, a, b);
}

PhiModel PhiModel::quadratic(double c0, double c2) {
    if (c2 < 0.0) throw std::invalid_argument("PhiModel::quadratic: need c2 >= 0");
    return PhiModel(Kind::Quadratic, c0, c2, 0.0);
}

double PhiModel::operator()(double kappa) const {
    switch (kind_) {
        case Kind::Power:
            return 1.0 + std::pow(std::abs(kappa), params_[0]);
        case Kind::NitzbergMumford: {
            const double nu = params_[0], a = params_[1], b = params_[2];
            if (std::abs(kappa) < b / a) return nu + a * kappa * kappa;
            return nu + b * std::abs(kappa);
        }
        case Kind::Quadratic:
            return params_[0] + params_[1] * kappa * kappa;
    }
    return 0.0;
}

double phi_eval(const PhiModel& phi, double kappa) { return phi(kappa); }

void EnergyParams::validate() const {
    if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0 && R > 0.0))
        throw std::invalid_argument("EnergyParams: alpha, beta, gamma, R must be positive");
}

std::vector<std::uint8_t> OverlapDecomposition::mask(int layer_1based) const {
    std::vector<std::uint8_t> m(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        m[i] = labels[i] == layer_1based ? 1 : 0;
    return m;
}

std::size_t OverlapDecomposition::count(int layer_1based) const {
    std::size_t c = 0;
    for (std::int32_t v : labels)
        if (v == layer_1based) ++c;
    return c;
}

OverlapDecomposition overlap_decompose(const LayeredSegmentation& seg,
                                       const RasterImage& img) {
    if (!img.valid()) throw std::invalid_argument("overlap_decompose: invalid frame");
    OverlapDecomposition dec;
    dec.width = img.width;
    dec.height = img.height;
    dec.labels.assign(img.pixel_count(), 0);
    std::vector<std::uint8_t> buf;
    // paint back to front so the frontmost containing layer wins
    for (std::size_t i = seg.size(); i-- > 0;) {
        rasterize_region(seg.layers[i], img, buf);
        for (std::size_t p = 0; p < buf.size(); ++p)
            if (buf[p]) dec.labels[p] = (std::int32_t)(i + 1);
    }
    return dec;
}

double region_mean(const RasterImage& img, const std::vector<std::uint8_t>& mask) {
    if (mask.size() != img.pixel_count())
        throw std::invalid_argument("region_mean: mask size mismatch");
    std::vector<double> vals;
    vals.reserve(mask.size() / 4);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) vals.push_back(img.values[i]);
    if (vals.empty()) return 0.0;
    return pairwise_sum(vals) / (double)vals.size();
}

double fidelity(const RasterImage& img, const std::vector<std::uint8_t>& mask) {
    if (mask.size() != img.pixel_count())
        throw std::invalid_argument("fidelity: mask size mismatch");
    std::vector<double> sums, sqs;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            sums.push_back(img.values[i]);
            sqs.push_back(img.values[i] * img.values[i]);
        }
    }
    if (sums.empty()) return 0.0;
    const double n = (double)sums.size();
    const double s = pairwise_sum(sums);
    const double s2 = pairwise_sum(sqs);
    const double h2 = img.pixel_size * img.pixel_size;
    return std::max(0.0, s2 - s * s / n) * h2;
}

double curvature_energy(const ClosedCurve& curve, const PhiModel& phi) {
    std::vector<double> terms;
    for (const CurvatureSample& s : curvature_profile(curve))
        terms.push_back(phi(s.kappa) * s.weight);
    return pairwise_sum(terms);
}

double curvature_energy(const Region& region, const PhiModel& phi) {
    double total = curvature_energy(region.outer, phi);
    for (const ClosedCurve& h : region.holes) total += curvature_energy(h, phi);
    return total;
}

EnergyBreakdown total_energy(const LayeredSegmentation& seg, const RasterImage& img,
                             const EnergyParams& params) {
    params.validate();
    if (!img.valid()) throw std::invalid_argument("total_energy: invalid image frame");

    EnergyBreakdown out;
    const OverlapDecomposition dec = overlap_decompose(seg, img);
    const std::size_t k = seg.size();

    out.fidelity_per_layer.resize(k);
    for (std::size_t i = 0; i < k; ++i)
        out.fidelity_per_layer[i] = fidelity(img, dec.mask((int)(i + 1)));
    out.fidelity_background = fidelity(img, dec.mask(0));

    out.area_terms.resize(k);
    out.curvature_terms.resize(k);
    out.feasible = true;
    for (std::size_t i = 0; i < k; ++i) {
        out.area_terms[i] = params.beta * area(seg.layers[i]);
        out.curvature_terms[i] = params.gamma * curvature_energy(seg.layers[i], params.phi);
        if (out.feasible) {
            try {
                out.feasible = check_region(seg.layers[i], params.R).pass;
            } catch (const std::invalid_argument&) {
                out.feasible = false;  // e.g. under-sampled boundary
            }
        }
    }

    double g = params.alpha * out.fidelity_background;
    for (std::size_t i = 0; i < k; ++i)
        g += params.alpha * out.fidelity_per_layer[i] + out.area_terms[i] +
             out.curvature_terms[i];
    out.G = g;
    return out;
}

double jensen_lower_bound(const ClosedCurve& curve, const PhiModel& phi) {
    const double L = perimeter(curve);
    return L * phi(2.0 * kPi / L);
}

long long k_upper_bound(double current_G, const EnergyParams& params) {
    if (current_G < 0.0)
        throw std::invalid_argument("k_upper_bound: energy must be nonnegative");
    params.validate();
    return (long long)std::floor(current_G / (params.beta * kPi * params.R * params.R));
}

}  // namespace curvseg
