#include "curvseg/optimizer.hpp"

#include "curvseg/shapes.hpp"
#include "curvseg/sphere.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curvseg {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Schedule::validate() const {
    if (iterations < 1) throw std::invalid_argument("Schedule: iterations must be >= 1");
    if (T0.has_value() && *T0 < 0.0)
        throw std::invalid_argument("Schedule: T0 must be >= 0");
    if (!(cooling > 0.0 && cooling <= 1.0))
        throw std::invalid_argument("Schedule: cooling must be in (0, 1]");
    if (!(move_scale > 0.0 && move_scale <= 0.5))
        throw std::invalid_argument("Schedule: move_scale must be in (0, 0.5]");
}

const char* move_kind_name(MoveKind kind) {
    switch (kind) {
        case MoveKind::Deform: return "deform";
        case MoveKind::Inflate: return "inflate";
        case MoveKind::Translate: return "translate";
        case MoveKind::Delete: return "delete";
        case MoveKind::InsertDisk: return "insert_disk";
        case MoveKind::SwapDepth: return "swap_depth";
    }
    return "?";
}

LayeredSegmentation seed_segmentation(const RasterImage& img, double R, int k_hint) {
    if (R < 2.0 * img.pixel_size)
        throw std::invalid_argument("seed_segmentation: R must be at least 2 pixels");
    LayeredSegmentation seg;
    if (k_hint <= 0) return seg;

    const double thr = otsu_threshold(img);
    const BinaryMask mask = threshold_image(img, thr);
    bool any = false;
    for (std::uint8_t v : mask.values) any = any || v;
    if (!any) return seg;

    std::vector<int> labels;
    const int ncomp = connected_components(mask, labels);
    std::vector<Region> regions;
    for (int c = 1; c <= ncomp; ++c) {
        BinaryMask comp = make_mask(mask.width, mask.height, mask.pixel_size, mask.origin);
        for (std::size_t i = 0; i < labels.size(); ++i)
            comp.values[i] = labels[i] == c ? 1 : 0;
        for (Region& r : regularize_raster(comp, R)) regions.push_back(std::move(r));
    }
    std::sort(regions.begin(), regions.end(),
              [](const Region& a, const Region& b) { return area(a) > area(b); });
    if ((int)regions.size() > k_hint) regions.resize((std::size_t)k_hint);
    seg.layers = std::move(regions);
    return seg;
}

namespace {

// ---------------------------------------------------------------------
// Partition of the frame into visible parts, with O(1)-updatable
// per-part statistics (count, sum g, sum g^2).

struct LabelStats {
    double count = 0.0;
    double sum = 0.0;
    double sumsq = 0.0;
};

double stats_fidelity(const std::vector<LabelStats>& stats, double pixel_area) {
    double total = 0.0;
    for (const LabelStats& s : stats) {
        if (s.count > 0.0) total += std::max(0.0, s.sumsq - s.sum * s.sum / s.count);
    }
    return total * pixel_area;
}

struct PartitionState {
    std::vector<std::int32_t> labels;
    std::vector<LabelStats> stats;  // index 0 = background, i = layer i

    void rebuild(const LayeredSegmentation& seg, const RasterImage& img) {
        const OverlapDecomposition dec = overlap_decompose(seg, img);
        labels = dec.labels;
        stats.assign(seg.size() + 1, LabelStats{});
        for (std::size_t p = 0; p < labels.size(); ++p) {
            LabelStats& s = stats[(std::size_t)labels[p]];
            const double g = img.values[p];
            s.count += 1.0;
            s.sum += g;
            s.sumsq += g * g;
        }
    }
};

struct PixelBox {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // half-open
    bool empty() const { return x0 >= x1 || y0 >= y1; }
};

PixelBox to_pixel_box(const BoundingBox& bb, const RasterImage& img) {
    PixelBox pb;
    pb.x0 = std::max(0, (int)std::floor((bb.lo.x - img.origin.x) / img.pixel_size) - 1);
    pb.y0 = std::max(0, (int)std::floor((bb.lo.y - img.origin.y) / img.pixel_size) - 1);
    pb.x1 = std::min(img.width, (int)std::ceil((bb.hi.x - img.origin.x) / img.pixel_size) + 1);
    pb.y1 = std::min(img.height, (int)std::ceil((bb.hi.y - img.origin.y) / img.pixel_size) + 1);
    return pb;
}

PixelBox merge_boxes(PixelBox a, PixelBox b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
            std::max(a.y1, b.y1)};
}

// ---------------------------------------------------------------------
// Move generation

struct MoveWeights {
    double deform = 0.40;
    double inflate = 0.15;
    double translate = 0.15;
    double del = 0.05;
    double insert = 0.15;
    double swap = 0.10;
};

MoveKind pick_kind(const LayeredSegmentation& seg, bool allow_insert, Rng& rng) {
    const std::size_t k = seg.size();
    MoveWeights w;
    if (k == 0) {
        w.deform = w.inflate = w.translate = w.del = w.swap = 0.0;
        w.insert = allow_insert ? 1.0 : 0.0;
    } else {
        if (!allow_insert) w.insert = 0.0;
        // swap stays proposable at k == 1; it degenerates to the identity
    }
    const double total = w.deform + w.inflate + w.translate + w.del + w.insert + w.swap;
    if (total <= 0.0) return MoveKind::Deform;  // caller treats as identity below
    double u = rng.uniform() * total;
    if ((u -= w.deform) < 0.0) return MoveKind::Deform;
    if ((u -= w.inflate) < 0.0) return MoveKind::Inflate;
    if ((u -= w.translate) < 0.0) return MoveKind::Translate;
    if ((u -= w.del) < 0.0) return MoveKind::Delete;
    if ((u -= w.insert) < 0.0) return MoveKind::InsertDisk;
    return MoveKind::SwapDepth;
}

void maintain_spacing(ClosedCurve& curve, double R) {
    if (max_edge_length(curve) > R / 8.0)
        curve = resample_uniform(curve, R / 8.0, /*preserve_corners=*/false);
}

ClosedCurve deform_curve(const ClosedCurve& curve, double move_scale, double R, Rng& rng) {
    const std::size_t n = curve.size();
    const std::vector<Point2> normals = outward_normals(curve);
    const std::size_t center = rng.uniform_index(n);
    std::size_t half = 2 + rng.uniform_index(std::max<std::size_t>(1, n / 3));
    half = std::min(half, (n - 1) / 2);  // window must not wrap onto itself
    const double amp = rng.normal(0.0, move_scale * R);
    ClosedCurve out = curve;
    for (long off = -(long)half; off <= (long)half; ++off) {
        const double taper = 0.5 * (1.0 + std::cos(kPi * (double)off / (double)(half + 1)));
        long idx = ((long)center + off) % (long)n;
        if (idx < 0) idx += (long)n;
        out.vertices[(std::size_t)idx] =
            out.vertices[(std::size_t)idx] + (amp * taper) * normals[(std::size_t)idx];
    }
    maintain_spacing(out, R);
    return out;
}

ClosedCurve inflate_curve(const ClosedCurve& curve, double delta, double R) {
    const std::vector<Point2> normals = outward_normals(curve);
    ClosedCurve out = curve;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.vertices[i] = out.vertices[i] + delta * normals[i];
    maintain_spacing(out, R);
    return out;
}

Point2 high_residual_center(const LayeredSegmentation& seg, const RasterImage& img,
                            const std::vector<std::int32_t>* labels,
                            const std::vector<LabelStats>* stats, Rng& rng) {
    // Means per part, either from the caller's partition or recomputed.
    OverlapDecomposition scratch;
    std::vector<LabelStats> local;
    if (labels == nullptr || stats == nullptr) {
        scratch = overlap_decompose(seg, img);
        local.assign(seg.size() + 1, LabelStats{});
        for (std::size_t p = 0; p < scratch.labels.size(); ++p) {
            LabelStats& s = local[(std::size_t)scratch.labels[p]];
            s.count += 1.0;
            s.sum += img.values[p];
        }
        labels = &scratch.labels;
        stats = &local;
    }
    std::vector<double> means(stats->size(), 0.0);
    for (std::size_t i = 0; i < stats->size(); ++i)
        if ((*stats)[i].count > 0.0) means[i] = (*stats)[i].sum / (*stats)[i].count;

    double best = -1.0;
    std::size_t best_pixel = 0;
    for (int s = 0; s < 64; ++s) {
        const std::size_t p = rng.uniform_index(img.pixel_count());
        const double res = std::abs(img.values[p] - means[(std::size_t)(*labels)[p]]);
        if (res > best) {
            best = res;
            best_pixel = p;
        }
    }
    const int px = (int)(best_pixel % (std::size_t)img.width);
    const int py = (int)(best_pixel / (std::size_t)img.width);
    return img.pixel_center(px, py);
}

MoveProposal propose_impl(const LayeredSegmentation& seg, const RasterImage& img,
                          const EnergyParams& params, double move_scale, Rng& rng,
                          bool allow_insert,
                          const std::vector<std::int32_t>* labels,
                          const std::vector<LabelStats>* stats) {
    const double R = params.R;
    MoveProposal prop;
    prop.seg = seg;
    prop.kind = pick_kind(seg, allow_insert, rng);
    const std::size_t k = seg.size();
    if (k == 0 && prop.kind != MoveKind::InsertDisk) {
        prop.identity = true;
        return prop;
    }

    switch (prop.kind) {
        case MoveKind::Deform: {
            const std::size_t i = rng.uniform_index(k);
            prop.seg.layers[i].outer = deform_curve(seg.layers[i].outer, move_scale, R, rng);
            prop.changed_layer = (int)i;
            break;
        }
        case MoveKind::Inflate: {
            const std::size_t i = rng.uniform_index(k);
            const double delta = rng.normal(0.0, move_scale * R);
            prop.seg.layers[i].outer = inflate_curve(seg.layers[i].outer, delta, R);
            prop.changed_layer = (int)i;
            break;
        }
        case MoveKind::Translate: {
            const std::size_t i = rng.uniform_index(k);
            const Point2 t{rng.normal(0.0, move_scale * R), rng.normal(0.0, move_scale * R)};
            prop.seg.layers[i] = translated(seg.layers[i], t);
            prop.changed_layer = (int)i;
            break;
        }
        case MoveKind::Delete: {
            const std::size_t i = rng.uniform_index(k);
            prop.seg.layers.erase(prop.seg.layers.begin() + (long)i);
            prop.changed_layer = -1;
            break;
        }
        case MoveKind::InsertDisk: {
            const Point2 c = high_residual_center(seg, img, labels, stats, rng);
            const std::size_t n = (std::size_t)std::ceil(2.0 * kPi * 8.0);  // spacing R/8
            prop.seg.layers.insert(prop.seg.layers.begin(), make_disk(c, R, n));
            prop.changed_layer = 0;
            break;
        }
        case MoveKind::SwapDepth: {
            if (k < 2) {
                prop.identity = true;
                break;
            }
            const std::size_t i = rng.uniform_index(k - 1);
            std::swap(prop.seg.layers[i], prop.seg.layers[i + 1]);
            prop.changed_layer = -1;
            break;
        }
    }
    return prop;
}

bool layer_feasible(const Region& layer, double R) {
    if (layer.outer.size() < 3) return false;
    if (!is_simple(layer.outer)) return false;
    if (signed_area(layer.outer) <= 0.0) return false;
    try {
        if (!curvature_bound_check(layer, R)) return false;
        return check_region(layer, R).pass;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

bool metropolis_accept(double dG, double T, Rng& rng) {
    if (dG < 0.0) return true;
    if (dG == 0.0) return false;  // ties keep the incumbent
    if (T <= 0.0) return false;
    return rng.uniform() < std::exp(-dG / T);
}

// ---------------------------------------------------------------------
// Annealing chain with incremental energy bookkeeping.

class Annealer {
  public:
    Annealer(const RasterImage& img, const EnergyParams& params, const Schedule& sched,
             std::optional<int> fixed_k)
        : img_(img), params_(params), sched_(sched), fixed_k_(fixed_k), rng_(sched.seed) {}

    RunReport run(const LayeredSegmentation& start) {
        cur_ = start;
        part_.rebuild(cur_, img_);
        rebuild_geometry_caches();
        cur_G_ = energy_from_state(part_.stats);

        RunReport report;
        report.best_energy = cur_G_;
        report.final_seg = cur_;
        double best_G = cur_G_;

        const double t0 = sched_.T0.has_value() ? *sched_.T0 : 0.05 * cur_G_;
        for (int iter = 0; iter < sched_.iterations; ++iter) {
            const double T = t0 * std::pow(sched_.cooling, (double)(iter / 100));
            // fixed-k caps insertion outright; variable-k proposes and
            // rejects a priori against the area bound below
            const bool allow_insert =
                fixed_k_.has_value() ? (int)cur_.size() < *fixed_k_ : true;
            MoveProposal prop = propose_impl(cur_, img_, params_, sched_.move_scale, rng_,
                                             allow_insert, &part_.labels, &part_.stats);
            MoveStats& ms = report.move_stats[(std::size_t)prop.kind];
            ++ms.proposed;
            if (prop.identity) continue;

            if (prop.kind == MoveKind::InsertDisk && !fixed_k_.has_value() &&
                (long long)cur_.size() + 1 > k_upper_bound(best_G, params_)) {
                ++ms.rejected_by_constraint;
                continue;
            }

            if (prop.changed_layer >= 0 &&
                !layer_feasible(prop.seg.layers[(std::size_t)prop.changed_layer],
                                params_.R)) {
                ++ms.rejected_by_constraint;
                continue;
            }

            double cand_G = 0.0;
            const bool structural = prop.kind == MoveKind::Delete ||
                                    prop.kind == MoveKind::InsertDisk ||
                                    prop.kind == MoveKind::SwapDepth;
            PartitionState cand_part;
            std::vector<LabelStats> cand_stats;
            PixelBox box;
            std::vector<std::int32_t> cand_labels_box;
            std::vector<double> cand_geom(2, 0.0);
            if (structural) {
                cand_part.rebuild(prop.seg, img_);
                cand_G = energy_of(prop.seg, cand_part.stats);
            } else {
                const std::size_t li = (std::size_t)prop.changed_layer;
                box = merge_boxes(to_pixel_box(bounding_box(cur_.layers[li]), img_),
                                  to_pixel_box(bounding_box(prop.seg.layers[li]), img_));
                incremental_labels(prop.seg, box, cand_labels_box);
                cand_stats = part_.stats;
                apply_box_delta(box, cand_labels_box, cand_stats);
                cand_geom[0] = params_.beta * area(prop.seg.layers[li]);
                cand_geom[1] =
                    params_.gamma * curvature_energy(prop.seg.layers[li], params_.phi);
                double g = params_.alpha *
                           stats_fidelity(cand_stats, img_.pixel_size * img_.pixel_size);
                for (std::size_t i = 0; i < cur_.size(); ++i) {
                    if (i == li)
                        g += cand_geom[0] + cand_geom[1];
                    else
                        g += area_terms_[i] + curv_terms_[i];
                }
                cand_G = g;
            }

            if (!metropolis_accept(cand_G - cur_G_, T, rng_)) continue;

            // commit
            cur_ = std::move(prop.seg);
            if (structural) {
                part_ = std::move(cand_part);
                rebuild_geometry_caches();
            } else {
                const std::size_t li = (std::size_t)prop.changed_layer;
                commit_box(box, cand_labels_box);
                part_.stats = std::move(cand_stats);
                area_terms_[li] = cand_geom[0];
                curv_terms_[li] = cand_geom[1];
            }
            cur_G_ = cand_G;
            ++ms.accepted;
            report.energy_trace.push_back(cur_G_);
            report.k_trace.push_back((int)cur_.size());
            if (cur_G_ < best_G) {
                best_G = cur_G_;
                report.best_energy = best_G;
                report.final_seg = cur_;
            }
#ifndef NDEBUG
            debug_check(report);
#endif
        }
        report.feasible = true;
        return report;
    }

  private:
    void rebuild_geometry_caches() {
        area_terms_.resize(cur_.size());
        curv_terms_.resize(cur_.size());
        for (std::size_t i = 0; i < cur_.size(); ++i) {
            area_terms_[i] = params_.beta * area(cur_.layers[i]);
            curv_terms_[i] = params_.gamma * curvature_energy(cur_.layers[i], params_.phi);
        }
    }

    double energy_from_state(const std::vector<LabelStats>& stats) const {
        double g = params_.alpha * stats_fidelity(stats, img_.pixel_size * img_.pixel_size);
        for (std::size_t i = 0; i < cur_.size(); ++i) g += area_terms_[i] + curv_terms_[i];
        return g;
    }

    double energy_of(const LayeredSegmentation& seg,
                     const std::vector<LabelStats>& stats) const {
        double g = params_.alpha * stats_fidelity(stats, img_.pixel_size * img_.pixel_size);
        for (std::size_t i = 0; i < seg.size(); ++i)
            g += params_.beta * area(seg.layers[i]) +
                 params_.gamma * curvature_energy(seg.layers[i], params_.phi);
        return g;
    }

    // Frontmost-containing-layer labels for pixels in `box` under the
    // candidate segmentation.
    void incremental_labels(const LayeredSegmentation& seg, const PixelBox& box,
                            std::vector<std::int32_t>& out) const {
        const int bw = box.x1 - box.x0, bh = box.y1 - box.y0;
        out.assign((std::size_t)bw * bh, 0);
        std::vector<std::uint8_t> win;
        for (std::size_t i = seg.size(); i-- > 0;) {
            rasterize_region_window(seg.layers[i], img_, box.x0, box.y0, box.x1, box.y1,
                                    win);
            for (std::size_t p = 0; p < win.size(); ++p)
                if (win[p]) out[p] = (std::int32_t)(i + 1);
        }
    }

    void apply_box_delta(const PixelBox& box, const std::vector<std::int32_t>& cand,
                         std::vector<LabelStats>& stats) const {
        const int bw = box.x1 - box.x0;
        for (int y = box.y0; y < box.y1; ++y) {
            for (int x = box.x0; x < box.x1; ++x) {
                const std::size_t p = (std::size_t)y * img_.width + x;
                const std::int32_t ol = part_.labels[p];
                const std::int32_t nl = cand[(std::size_t)(y - box.y0) * bw + (x - box.x0)];
                if (ol == nl) continue;
                const double g = img_.values[p];
                LabelStats& so = stats[(std::size_t)ol];
                so.count -= 1.0;
                so.sum -= g;
                so.sumsq -= g * g;
                LabelStats& sn = stats[(std::size_t)nl];
                sn.count += 1.0;
                sn.sum += g;
                sn.sumsq += g * g;
            }
        }
    }

    void commit_box(const PixelBox& box, const std::vector<std::int32_t>& cand) {
        const int bw = box.x1 - box.x0;
        for (int y = box.y0; y < box.y1; ++y)
            for (int x = box.x0; x < box.x1; ++x)
                part_.labels[(std::size_t)y * img_.width + x] =
                    cand[(std::size_t)(y - box.y0) * bw + (x - box.x0)];
    }

#ifndef NDEBUG
    void debug_check(const RunReport& report) {
        ++accept_count_;
        if (accept_count_ % 200 != 0) return;
        for (const Region& layer : cur_.layers) assert(layer_feasible(layer, params_.R));
        PartitionState fresh;
        fresh.rebuild(cur_, img_);
        for (std::size_t p = 0; p < fresh.labels.size(); ++p)
            assert(fresh.labels[p] == part_.labels[p]);
        if (fixed_k_.has_value())
            assert((int)cur_.size() <= *fixed_k_);
        else
            assert((long long)cur_.size() <=
                   k_upper_bound(report.energy_trace.back(), params_));
    }
    long accept_count_ = 0;
#endif

    RasterImage img_;
    EnergyParams params_;
    Schedule sched_;
    std::optional<int> fixed_k_;
    Rng rng_;

    LayeredSegmentation cur_;
    PartitionState part_;
    std::vector<double> area_terms_, curv_terms_;
    double cur_G_ = 0.0;
};

}  // namespace

MoveProposal propose_move(const LayeredSegmentation& seg, const RasterImage& img,
                          const EnergyParams& params, double move_scale, Rng& rng) {
    return propose_impl(seg, img, params, move_scale, rng, /*allow_insert=*/true,
                        nullptr, nullptr);
}

AcceptDecision accept(double current_G, const MoveProposal& candidate,
                      const RasterImage& img, const EnergyParams& params, double T,
                      Rng& rng) {
    AcceptDecision d;
    if (candidate.changed_layer >= 0) {
        const Region& layer = candidate.seg.layers[(std::size_t)candidate.changed_layer];
        if (!layer_feasible(layer, params.R)) {
            d.constraint_rejected = true;
            return d;
        }
    }
    const EnergyBreakdown bd = total_energy(candidate.seg, img, params);
    d.candidate_G = bd.G;
    if (!bd.feasible) {
        d.constraint_rejected = true;
        return d;
    }
    d.accepted = metropolis_accept(bd.G - current_G, T, rng);
    return d;
}

RunReport optimize_from(const LayeredSegmentation& start, const RasterImage& img,
                        const EnergyParams& params, const Schedule& schedule,
                        std::optional<int> fixed_k) {
    params.validate();
    schedule.validate();
    for (const Region& layer : start.layers)
        if (!check_region(layer, params.R).pass)
            throw std::invalid_argument("optimize_from: infeasible starting layer");
    Annealer annealer(img, params, schedule, fixed_k);
    return annealer.run(start);
}

RunReport optimize_fixed_k(const RasterImage& img, const EnergyParams& params,
                           const Schedule& schedule, int k) {
    params.validate();
    schedule.validate();
    if (k < 0) throw std::invalid_argument("optimize_fixed_k: k must be >= 0");
    const LayeredSegmentation seed = seed_segmentation(img, params.R, k);
    return optimize_from(seed, img, params, schedule, k);
}

RunReport optimize_variable_k(const RasterImage& img, const EnergyParams& params,
                              const Schedule& schedule) {
    params.validate();
    schedule.validate();
    const LayeredSegmentation seed = seed_segmentation(img, params.R, 8);
    return optimize_from(seed, img, params, schedule, std::nullopt);
}

}  // namespace curvseg
