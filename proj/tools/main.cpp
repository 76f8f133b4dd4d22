#include "curvseg/config.hpp"
#include "curvseg/convergence.hpp"
#include "curvseg/energy.hpp"
#include "curvseg/example_ball.hpp"
#include "curvseg/optimizer.hpp"
#include "curvseg/pgm_io.hpp"
#include "curvseg/region_io.hpp"
#include "curvseg/shapes.hpp"
#include "curvseg/sphere.hpp"
#include "curvseg/verify_suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace curvseg;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

PhiModel parse_phi(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string kind = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ','))
            args.push_back(config_double("phi", tok));
    }
    try {
        if (kind == "power" && args.size() == 1) return PhiModel::power(args[0]);
        if (kind == "nm" && args.size() == 3)
            return PhiModel::nitzberg_mumford(args[0], args[1], args[2]);
        if (kind == "quad" && args.size() == 2) return PhiModel::quadratic(args[0], args[1]);
    } catch (const std::invalid_argument& e) {
        throw usage_error(std::string("--phi: ") + e.what());
    }
    throw usage_error("--phi: expected power:P, nm:NU,A,B or quad:C0,C2; got '" + spec +
                      "'");
}

/// Applies a key=value config file to a subcommand: unknown keys are
/// rejected listing the valid ones, and values given on the command
/// line win over the file.
class ConfigBinder {
  public:
    explicit ConfigBinder(CLI::App* app) : app_(app) {}

    void bind(const std::string& key, std::function<void(const std::string&)> setter) {
        setters_[key] = std::move(setter);
    }

    void apply(const std::string& path) const {
        for (const auto& [key, value] : parse_config_file(path)) {
            const auto it = setters_.find(key);
            if (it == setters_.end()) {
                std::string valid;
                for (const auto& [k, unused] : setters_) {
                    if (!valid.empty()) valid += ", ";
                    valid += k;
                }
                throw usage_error("config: unknown key '" + key +
                                  "'; valid keys: " + valid);
            }
            const CLI::Option* opt = app_->get_option_no_throw("--" + key);
            if (opt != nullptr && opt->count() > 0) continue;  // CLI wins
            it->second(value);
        }
    }

  private:
    CLI::App* app_;
    std::map<std::string, std::function<void(const std::string&)>> setters_;
};

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create directory " + dir + ": " + ec.message());
}

RasterImage load_image(const std::string& path, double pixel_size, double ox, double oy) {
    RasterImage img = read_pgm(path);
    img.pixel_size = pixel_size;
    img.origin = {ox, oy};
    return img;
}

// ---------------------------------------------------------------------

int cmd_check(const std::string& file, double radius, double tol,
              const std::string& out) {
    const RegionSet set = region_set_from_json(read_text_file(file));
    if (set.empty()) throw usage_error("check: no regions in " + file);
    for (const Region& r : set) validate_region(r);

    // the checker needs spacing <= R/8; resample rather than reject
    RegionSet prepared;
    for (const Region& r : set) {
        Region p = r;
        if (max_edge_length(p.outer) > radius / 8.0)
            p.outer = resample_uniform(p.outer, radius / 8.0);
        for (ClosedCurve& h : p.holes)
            if (max_edge_length(h) > radius / 8.0) h = resample_uniform(h, radius / 8.0);
        prepared.push_back(std::move(p));
    }
    const SphereReport rep = check_region(prepared, radius, tol);
    const std::string doc = sphere_report_to_json(rep);
    if (out.empty())
        std::cout << doc;
    else
        write_text_file(out, doc);
    std::cout << (rep.pass ? "PASS" : "FAIL") << " radius " << radius << " tol " << tol
              << " worst_violation " << rep.worst_violation << "\n";
    return rep.pass ? kExitPass : kExitFail;
}

int cmd_energy(const std::string& image, const std::string& seg_file, double alpha,
               double beta, double gamma, double radius, const std::string& phi_spec,
               double pixel_size, double ox, double oy, const std::string& out) {
    const RasterImage img = load_image(image, pixel_size, ox, oy);
    const LayeredSegmentation seg = segmentation_from_json(read_text_file(seg_file));
    EnergyParams params;
    params.alpha = alpha;
    params.beta = beta;
    params.gamma = gamma;
    params.R = radius;
    params.phi = parse_phi(phi_spec);
    const EnergyBreakdown bd = total_energy(seg, img, params);
    const std::string doc = energy_breakdown_to_json(bd);
    if (out.empty())
        std::cout << doc;
    else
        write_text_file(out, doc);
    return bd.feasible ? kExitPass : kExitFail;
}

std::string trace_csv(const RunReport& report) {
    std::ostringstream os;
    os << "accepted_index,energy,k\n";
    char buf[64];
    for (std::size_t i = 0; i < report.energy_trace.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", report.energy_trace[i]);
        os << i << "," << buf << "," << report.k_trace[i] << "\n";
    }
    return os.str();
}

int cmd_segment(const std::string& image, double radius, double alpha, double beta,
                double gamma, const std::string& phi_spec, std::optional<int> k,
                bool variable_k, int iters, std::uint64_t seed, double t0,
                double cooling, double move_scale, double pixel_size, double ox,
                double oy, const std::string& out_dir) {
    if (k.has_value() == variable_k)
        throw usage_error("segment: pass exactly one of --k or --variable-k");
    const RasterImage img = load_image(image, pixel_size, ox, oy);
    EnergyParams params;
    params.alpha = alpha;
    params.beta = beta;
    params.gamma = gamma;
    params.R = radius;
    params.phi = parse_phi(phi_spec);
    Schedule sched;
    sched.iterations = iters;
    sched.seed = seed;
    sched.cooling = cooling;
    sched.move_scale = move_scale;
    if (t0 >= 0.0) sched.T0 = t0;

    const RunReport report = variable_k ? optimize_variable_k(img, params, sched)
                                        : optimize_fixed_k(img, params, sched, *k);

    ensure_dir(out_dir);
    const std::string base = out_dir + "/";
    write_text_file(base + "segmentation.json", segmentation_to_json(report.final_seg));
    for (std::size_t i = 0; i < report.final_seg.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "layer_%02zu.json", i + 1);
        write_text_file(base + name, region_to_json(report.final_seg.layers[i]));
    }
    write_text_file(base + "energy.json",
                    energy_breakdown_to_json(total_energy(report.final_seg, img, params)));
    write_text_file(base + "trace.csv", trace_csv(report));
    write_label_image(report.final_seg, img, base + "labels.pgm");

    std::cout << "best G = " << report.best_energy << ", layers = "
              << report.final_seg.size() << ", accepted moves = "
              << report.energy_trace.size() << "\n";
    for (int m = 0; m < kMoveKindCount; ++m) {
        const MoveStats& ms = report.move_stats[(std::size_t)m];
        std::cout << "  " << move_kind_name((MoveKind)m) << ": proposed " << ms.proposed
                  << ", accepted " << ms.accepted << ", constraint-rejected "
                  << ms.rejected_by_constraint << "\n";
    }
    return kExitPass;
}

int cmd_verify(const std::string& suite, double radius, const std::string& out) {
    const SuiteResult res = run_verify_suite(suite, radius);
    const std::string table = res.table();
    std::cout << table;
    if (!out.empty()) {
        write_text_file(out, table);
        write_text_file(out + ".csv", res.csv);
    }
    return res.pass() ? kExitPass : kExitFail;
}

int cmd_example_ball(double radius, int grid, bool optimize,
                     std::optional<std::uint64_t> seed, double alpha, double beta,
                     double gamma, const std::string& out_dir) {
    if (optimize && !seed.has_value())
        throw usage_error("example-ball: --optimize requires --seed");
    ExampleBallReport rep;
    try {
        rep = example_ball(radius, grid, optimize, seed.value_or(0), alpha, beta, gamma);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    const std::string text = example_ball_report_text(rep);
    std::cout << text;
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        write_text_file(out_dir + "/report.txt", text);
        write_pgm(example_ball_image(radius, grid), out_dir + "/image.pgm");
    }
    return rep.disk_wins ? kExitPass : kExitFail;
}

int cmd_regularize(const std::string& mask_file, double radius, double threshold,
                   double pixel_size, double ox, double oy, const std::string& out) {
    const RasterImage img = load_image(mask_file, pixel_size, ox, oy);
    const BinaryMask mask = threshold_image(img, threshold);
    const std::vector<Region> regions = regularize_raster(mask, radius);
    const std::string doc = region_set_to_json(regions);
    if (out.empty())
        std::cout << doc;
    else
        write_text_file(out, doc);
    std::cout << regions.size() << " region(s)\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar curvature-energy toolkit: rolling-ball feasibility, layered "
                 "segmentation energies, constrained annealing, convergence checks"};
    app.require_subcommand(1);

    // ---- check ----
    auto* check = app.add_subcommand("check", "verify the R-sphere condition for a region file");
    std::string check_file, check_out, check_config;
    double check_radius = 0.0, check_tol = kDefaultSphereTol;
    check->add_option("file", check_file, "region or region-set JSON")->required();
    check->add_option("--radius", check_radius, "ball radius R");
    check->add_option("--tol", check_tol, "relative tolerance");
    check->add_option("--out", check_out, "write the full report here");
    check->add_option("--config", check_config, "key=value config file");
    ConfigBinder check_binder(check);
    check_binder.bind("radius", [&](const std::string& v) { check_radius = config_double("radius", v); });
    check_binder.bind("tol", [&](const std::string& v) { check_tol = config_double("tol", v); });
    check_binder.bind("out", [&](const std::string& v) { check_out = v; });

    // ---- energy ----
    auto* energy = app.add_subcommand("energy", "evaluate the layered energy of a segmentation");
    std::string en_image, en_seg, en_phi = "power:2", en_out, en_config;
    double en_alpha = 1.0, en_beta = 1.0, en_gamma = 1.0, en_radius = 0.0;
    double en_px = 1.0, en_ox = 0.0, en_oy = 0.0;
    energy->add_option("--image", en_image, "PGM image");
    energy->add_option("--seg", en_seg, "segmentation JSON");
    energy->add_option("--alpha", en_alpha, "fidelity weight");
    energy->add_option("--beta", en_beta, "area weight");
    energy->add_option("--gamma", en_gamma, "boundary weight");
    energy->add_option("--radius", en_radius, "ball radius R");
    energy->add_option("--phi", en_phi, "power:P | nm:NU,A,B | quad:C0,C2");
    energy->add_option("--pixel-size", en_px, "image units per pixel");
    energy->add_option("--origin-x", en_ox, "frame origin x");
    energy->add_option("--origin-y", en_oy, "frame origin y");
    energy->add_option("--out", en_out, "write the breakdown here");
    energy->add_option("--config", en_config, "key=value config file");
    ConfigBinder en_binder(energy);
    en_binder.bind("alpha", [&](const std::string& v) { en_alpha = config_double("alpha", v); });
    en_binder.bind("beta", [&](const std::string& v) { en_beta = config_double("beta", v); });
    en_binder.bind("gamma", [&](const std::string& v) { en_gamma = config_double("gamma", v); });
    en_binder.bind("radius", [&](const std::string& v) { en_radius = config_double("radius", v); });
    en_binder.bind("phi", [&](const std::string& v) { en_phi = v; });
    en_binder.bind("pixel-size", [&](const std::string& v) { en_px = config_double("pixel-size", v); });
    en_binder.bind("origin-x", [&](const std::string& v) { en_ox = config_double("origin-x", v); });
    en_binder.bind("origin-y", [&](const std::string& v) { en_oy = config_double("origin-y", v); });
    en_binder.bind("out", [&](const std::string& v) { en_out = v; });
    en_binder.bind("image", [&](const std::string& v) { en_image = v; });
    en_binder.bind("seg", [&](const std::string& v) { en_seg = v; });

    // ---- segment ----
    auto* segment = app.add_subcommand("segment", "minimize the layered energy by constrained annealing");
    std::string sg_image, sg_phi = "power:2", sg_out, sg_config;
    double sg_radius = 0.0, sg_alpha = 1.0, sg_beta = 1.0, sg_gamma = 1.0;
    double sg_t0 = -1.0, sg_cooling = 0.995, sg_move_scale = 0.1;
    double sg_px = 1.0, sg_ox = 0.0, sg_oy = 0.0;
    int sg_k = -1, sg_iters = 20000;
    bool sg_variable_k = false, sg_seed_given = false;
    std::uint64_t sg_seed = 0;
    segment->add_option("--image", sg_image, "PGM image");
    segment->add_option("--radius", sg_radius, "ball radius R");
    segment->add_option("--alpha", sg_alpha, "fidelity weight");
    segment->add_option("--beta", sg_beta, "area weight");
    segment->add_option("--gamma", sg_gamma, "boundary weight");
    segment->add_option("--phi", sg_phi, "power:P | nm:NU,A,B | quad:C0,C2");
    segment->add_option("--k", sg_k, "fixed layer budget");
    segment->add_flag("--variable-k", sg_variable_k, "let insertions/deletions change k");
    segment->add_option("--iters", sg_iters, "annealing iterations");
    segment->add_option("--seed", sg_seed, "RNG seed (required)");
    segment->add_option("--t0", sg_t0, "initial temperature (default 0.05*G_seed)");
    segment->add_option("--cooling", sg_cooling, "cooling factor per 100 iterations");
    segment->add_option("--move-scale", sg_move_scale, "move size as a fraction of R");
    segment->add_option("--pixel-size", sg_px, "image units per pixel");
    segment->add_option("--origin-x", sg_ox, "frame origin x");
    segment->add_option("--origin-y", sg_oy, "frame origin y");
    segment->add_option("--out", sg_out, "output directory");
    segment->add_option("--config", sg_config, "key=value config file");
    ConfigBinder sg_binder(segment);
    sg_binder.bind("alpha", [&](const std::string& v) { sg_alpha = config_double("alpha", v); });
    sg_binder.bind("beta", [&](const std::string& v) { sg_beta = config_double("beta", v); });
    sg_binder.bind("gamma", [&](const std::string& v) { sg_gamma = config_double("gamma", v); });
    sg_binder.bind("radius", [&](const std::string& v) { sg_radius = config_double("radius", v); });
    sg_binder.bind("phi", [&](const std::string& v) { sg_phi = v; });
    sg_binder.bind("k", [&](const std::string& v) { sg_k = (int)config_int("k", v); });
    sg_binder.bind("variable-k", [&](const std::string& v) { sg_variable_k = config_bool("variable-k", v); });
    sg_binder.bind("iters", [&](const std::string& v) { sg_iters = (int)config_int("iters", v); });
    sg_binder.bind("t0", [&](const std::string& v) { sg_t0 = config_double("t0", v); });
    sg_binder.bind("cooling", [&](const std::string& v) { sg_cooling = config_double("cooling", v); });
    sg_binder.bind("move-scale", [&](const std::string& v) { sg_move_scale = config_double("move-scale", v); });
    sg_binder.bind("pixel-size", [&](const std::string& v) { sg_px = config_double("pixel-size", v); });
    sg_binder.bind("origin-x", [&](const std::string& v) { sg_ox = config_double("origin-x", v); });
    sg_binder.bind("origin-y", [&](const std::string& v) { sg_oy = config_double("origin-y", v); });
    sg_binder.bind("image", [&](const std::string& v) { sg_image = v; });
    sg_binder.bind("out", [&](const std::string& v) { sg_out = v; });
    sg_binder.bind("seed", [&](const std::string& v) {
        sg_seed = (std::uint64_t)config_int("seed", v);
        sg_seed_given = true;
    });

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run a convergence diagnostic suite");
    std::string vf_suite, vf_out, vf_config;
    double vf_radius = 0.0;
    verify->add_option("--suite", vf_suite, "metrics | semicontinuity | compactness | equivalence");
    verify->add_option("--radius", vf_radius, "ball radius R");
    verify->add_option("--out", vf_out, "write the report here (raw metrics to <out>.csv)");
    verify->add_option("--config", vf_config, "key=value config file");
    ConfigBinder vf_binder(verify);
    vf_binder.bind("suite", [&](const std::string& v) { vf_suite = v; });
    vf_binder.bind("radius", [&](const std::string& v) { vf_radius = config_double("radius", v); });
    vf_binder.bind("out", [&](const std::string& v) { vf_out = v; });

    // ---- example-ball ----
    auto* ball = app.add_subcommand("example-ball", "reproduce the explicit ball minimizer");
    double eb_radius = 0.0, eb_alpha = 10.0, eb_beta = 1.0, eb_gamma = 1.0;
    int eb_grid = 200;
    bool eb_optimize = false;
    std::string eb_out, eb_config;
    std::uint64_t eb_seed_val = 0;
    bool eb_seed_given = false;
    ball->add_option("--radius", eb_radius, "disk radius R (> 1)");
    ball->add_option("--grid", eb_grid, "pixels per side");
    ball->add_option("--alpha", eb_alpha, "fidelity weight");
    ball->add_option("--beta", eb_beta, "area weight");
    ball->add_option("--gamma", eb_gamma, "boundary weight");
    ball->add_flag("--optimize", eb_optimize, "also run the annealer from a noisy seed");
    auto* eb_seed_opt = ball->add_option("--seed", eb_seed_val, "RNG seed for --optimize");
    ball->add_option("--out", eb_out, "output directory");
    ball->add_option("--config", eb_config, "key=value config file");
    ConfigBinder eb_binder(ball);
    eb_binder.bind("radius", [&](const std::string& v) { eb_radius = config_double("radius", v); });
    eb_binder.bind("grid", [&](const std::string& v) { eb_grid = (int)config_int("grid", v); });
    eb_binder.bind("alpha", [&](const std::string& v) { eb_alpha = config_double("alpha", v); });
    eb_binder.bind("beta", [&](const std::string& v) { eb_beta = config_double("beta", v); });
    eb_binder.bind("gamma", [&](const std::string& v) { eb_gamma = config_double("gamma", v); });
    eb_binder.bind("optimize", [&](const std::string& v) { eb_optimize = config_bool("optimize", v); });
    eb_binder.bind("seed", [&](const std::string& v) {
        eb_seed_val = (std::uint64_t)config_int("seed", v);
        eb_seed_given = true;
    });
    eb_binder.bind("out", [&](const std::string& v) { eb_out = v; });

    // ---- regularize ----
    auto* reg = app.add_subcommand("regularize", "turn a binary mask into feasible regions");
    std::string rg_mask, rg_out, rg_config;
    double rg_radius = 0.0, rg_threshold = 0.5, rg_px = 1.0, rg_ox = 0.0, rg_oy = 0.0;
    reg->add_option("--mask", rg_mask, "binary PGM mask");
    reg->add_option("--radius", rg_radius, "ball radius R (>= 2 pixels)");
    reg->add_option("--threshold", rg_threshold, "binarization threshold");
    reg->add_option("--pixel-size", rg_px, "image units per pixel");
    reg->add_option("--origin-x", rg_ox, "frame origin x");
    reg->add_option("--origin-y", rg_oy, "frame origin y");
    reg->add_option("--out", rg_out, "write regions JSON here");
    reg->add_option("--config", rg_config, "key=value config file");
    ConfigBinder rg_binder(reg);
    rg_binder.bind("radius", [&](const std::string& v) { rg_radius = config_double("radius", v); });
    rg_binder.bind("threshold", [&](const std::string& v) { rg_threshold = config_double("threshold", v); });
    rg_binder.bind("pixel-size", [&](const std::string& v) { rg_px = config_double("pixel-size", v); });
    rg_binder.bind("origin-x", [&](const std::string& v) { rg_ox = config_double("origin-x", v); });
    rg_binder.bind("origin-y", [&](const std::string& v) { rg_oy = config_double("origin-y", v); });
    rg_binder.bind("out", [&](const std::string& v) { rg_out = v; });
    rg_binder.bind("mask", [&](const std::string& v) { rg_mask = v; });

    try {
        app.parse(argc, argv);

        if (*check) {
            if (!check_config.empty()) check_binder.apply(check_config);
            if (check_radius <= 0.0) throw usage_error("check: --radius is required");
            return cmd_check(check_file, check_radius, check_tol, check_out);
        }
        if (*energy) {
            if (!en_config.empty()) en_binder.apply(en_config);
            if (en_image.empty()) throw usage_error("energy: --image is required");
            if (en_seg.empty()) throw usage_error("energy: --seg is required");
            if (en_radius <= 0.0) throw usage_error("energy: --radius is required");
            return cmd_energy(en_image, en_seg, en_alpha, en_beta, en_gamma, en_radius,
                              en_phi, en_px, en_ox, en_oy, en_out);
        }
        if (*segment) {
            sg_seed_given = segment->get_option("--seed")->count() > 0;
            if (!sg_config.empty()) sg_binder.apply(sg_config);
            if (sg_image.empty()) throw usage_error("segment: --image is required");
            if (sg_radius <= 0.0) throw usage_error("segment: --radius is required");
            if (sg_out.empty()) throw usage_error("segment: --out is required");
            if (!sg_seed_given)
                throw usage_error("segment: --seed is required; randomized runs "
                                  "must be explicitly seeded");
            return cmd_segment(sg_image, sg_radius, sg_alpha, sg_beta, sg_gamma, sg_phi,
                               sg_k >= 0 ? std::optional<int>(sg_k) : std::nullopt,
                               sg_variable_k, sg_iters, sg_seed, sg_t0, sg_cooling,
                               sg_move_scale, sg_px, sg_ox, sg_oy, sg_out);
        }
        if (*verify) {
            if (!vf_config.empty()) vf_binder.apply(vf_config);
            if (vf_suite.empty()) throw usage_error("verify: --suite is required");
            if (vf_radius <= 0.0) throw usage_error("verify: --radius is required");
            return cmd_verify(vf_suite, vf_radius, vf_out);
        }
        if (*ball) {
            eb_seed_given = eb_seed_opt->count() > 0;
            if (!eb_config.empty()) eb_binder.apply(eb_config);
            if (eb_radius <= 0.0) throw usage_error("example-ball: --radius is required");
            return cmd_example_ball(eb_radius, eb_grid, eb_optimize,
                                    eb_seed_given
                                        ? std::optional<std::uint64_t>(eb_seed_val)
                                        : std::nullopt,
                                    eb_alpha, eb_beta, eb_gamma, eb_out);
        }
        if (*reg) {
            if (!rg_config.empty()) rg_binder.apply(rg_config);
            if (rg_mask.empty()) throw usage_error("regularize: --mask is required");
            if (rg_radius <= 0.0) throw usage_error("regularize: --radius is required");
            return cmd_regularize(rg_mask, rg_radius, rg_threshold, rg_px, rg_ox, rg_oy,
                                  rg_out);
        }
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what();
        if (e.byte_offset() != 0) std::cerr << " (byte " << e.byte_offset() << ")";
        std::cerr << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
