// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failures.  argv[1] must be the CLI binary (used by the determinism
// criterion).
#include "curvseg/convergence.hpp"
#include "curvseg/energy.hpp"
#include "curvseg/example_ball.hpp"
#include "curvseg/optimizer.hpp"
#include "curvseg/pgm_io.hpp"
#include "curvseg/region_io.hpp"
#include "curvseg/shapes.hpp"
#include "curvseg/sphere.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace curvseg;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("%s  %2d  %s  (%s)\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

// Feasible shape suite shared by criteria 5-7; every entry passes the
// checker at the given R by construction.
std::vector<Region> feasibility_suite(double R) {
    std::vector<Region> suite;
    const double sp = R / 9.0;
    for (double f : {1.0, 1.25, 1.5, 2.0, 2.5, 3.0}) {
        suite.push_back(make_disk({0, 0}, f * R, 512));
        suite.push_back(make_disk({0.7 * R, -0.3 * R}, f * R, 512, 0.3));
    }
    for (double lr : {1.0, 2.0, 4.0, 8.0, 16.0})
        suite.push_back(make_capsule({0, 0}, lr * R, R, sp));
    for (double lr : {4.0, 8.0})
        suite.push_back(make_capsule({-R, 2.0 * R}, lr * R, 1.5 * R, sp));
    suite.push_back(make_ellipse({0, 0}, 1.5 * R, 1.3 * R, 512));
    suite.push_back(make_ellipse({0, 0}, 1.8 * R, 1.5 * R, 512));
    suite.push_back(make_ellipse({R, R}, 2.0 * R, 1.6 * R, 512));
    suite.push_back(make_ellipse({0, -R}, 2.5 * R, 1.8 * R, 512));
    suite.push_back(make_rounded_rect({0, 0}, 4.0 * R, 3.0 * R, 1.1 * R, sp));
    suite.push_back(make_rounded_rect({0, 0}, 5.0 * R, 3.5 * R, 1.25 * R, sp));
    suite.push_back(make_rounded_rect({2.0 * R, 0}, 3.5 * R, 3.2 * R, 1.5 * R, sp));
    suite.push_back(make_rounded_rect({0, 2.0 * R}, 6.0 * R, 2.6 * R, 1.2 * R, sp));
    suite.push_back(make_perturbed_disk({0, 0}, 3.0 * R, R / 10.0, 6, 1024));
    suite.push_back(make_perturbed_disk({0, 0}, 3.0 * R, R / 15.0, 5, 1024));
    suite.push_back(make_perturbed_disk({0, 0}, 3.0 * R, R / 20.0, 4, 1024));
    suite.push_back(make_perturbed_disk({R, 0}, 2.5 * R, R / 20.0, 5, 1024));
    suite.push_back(make_perturbed_disk({0, R}, 2.5 * R, R / 25.0, 6, 1024));
    suite.push_back(make_perturbed_disk({0, 0}, 3.0 * R, R / 25.0, 7, 1024));
    suite.push_back(make_annulus({0, 0}, 3.5 * R, 1.2 * R, 1024));
    suite.push_back(make_annulus({0, 0}, 4.0 * R, 1.5 * R, 1024));
    for (double f : {1.1, 1.75, 2.25})
        suite.push_back(make_disk({-1.5 * R, 0.5 * R}, f * R, 256));
    suite.push_back(make_disk({0, 0}, 1.5 * R, 128));
    suite.push_back(make_disk({0, 0}, 2.0 * R, 256));
    for (double ph : {0.0, 0.7})
        suite.push_back(make_disk({0.4 * R, 0.4 * R}, 1.4 * R, 512, ph));
    for (double ph : {0.2, 1.1})
        suite.push_back(make_disk({-0.6 * R, 0}, 1.9 * R, 512, ph));
    suite.push_back(make_ellipse({0, 0}, 1.6 * R, 1.4 * R, 512));
    suite.push_back(make_ellipse({0.5 * R, -0.5 * R}, 2.2 * R, 1.7 * R, 512));
    suite.push_back(make_capsule({0, -2.0 * R}, 3.0 * R, 1.2 * R, sp));
    suite.push_back(make_capsule({R, R}, 6.0 * R, 2.0 * R, sp));
    suite.push_back(make_perturbed_disk({0, 0}, 2.8 * R, R / 22.0, 5, 1024));
    suite.push_back(make_perturbed_disk({0, 0}, 3.2 * R, R / 18.0, 6, 1024));
    return suite;
}

RasterImage disk_image(double R, int grid, double half, Point2 center = {0, 0}) {
    RasterImage img = make_image(grid, grid, 2.0 * half / grid, {-half, -half});
    for (int y = 0; y < grid; ++y)
        for (int x = 0; x < grid; ++x) {
            const Point2 c = img.pixel_center(x, y);
            const double dx = c.x - center.x, dy = c.y - center.y;
            img.at(x, y) = dx * dx + dy * dy < R * R ? 1.0 : 0.0;
        }
    return img;
}

void criterion_1() {
    const PhiModel p2 = PhiModel::power(2.0);
    double worst = 0.0;
    for (double R : {1.5, 2.0, 3.0}) {
        const double expected = 2.0 * kPi * R + 2.0 * kPi / R;
        const double measured = curvature_energy(make_circle({0, 0}, R, 512), p2);
        worst = std::max(worst, std::abs(measured - expected) / expected);
    }
    report(1, "circle energy closed form", worst <= 0.01,
           "max rel err " + fmt(worst) + " <= 0.01");
}

void criterion_2() {
    const RasterImage img = disk_image(2.0, 200, 5.0);
    const EnergyBreakdown bd =
        total_energy(LayeredSegmentation{}, img,
                     EnergyParams{1.0, 1.0, 1.0, 1.0, PhiModel::power(2.0)});
    const double analytic = 4.0 * kPi - 16.0 * kPi * kPi / 100.0;
    const double err = std::abs(bd.G - analytic) / analytic;
    report(2, "empty-set fidelity", err <= 0.02,
           "G=" + fmt(bd.G) + " vs " + fmt(analytic) + ", rel err " + fmt(err));
}

void criterion_3() {
    const ExampleBallReport rep = example_ball(2.0, 200, /*run_optimizer=*/true,
                                               /*seed=*/0);
    const double target = 4.0 * kPi + 5.0 * kPi;
    const double pixel = 10.0 / 200.0;
    const bool energy_ok = std::abs(rep.opt_best_G - target) <= 0.02 * target;
    const bool hausdorff_ok = rep.opt_hausdorff_to_circle <= 3.0 * pixel;
    const bool ok = rep.disk_wins && rep.inequality_ok && energy_ok && hausdorff_ok;
    report(3, "ball minimizer reproduction", ok,
           "disk_wins=" + std::string(rep.disk_wins ? "yes" : "no") + ", opt G=" +
               fmt(rep.opt_best_G) + " vs " + fmt(target) + ", hausdorff=" +
               fmt(rep.opt_hausdorff_to_circle) + " <= " + fmt(3.0 * pixel));
}

void criterion_4() {
    const double R = 1.0, tol = 0.02;
    auto two_disks = [&](double gap) {
        const double d = 4.0 * R + gap;
        return RegionSet{make_disk({0, 0}, 2.0 * R, 512),
                         make_disk({d, 0}, 2.0 * R, 512)};
    };
    bool ok = true;
    std::ostringstream detail;
    auto expect = [&](bool measured, bool expected, const char* name) {
        if (measured != expected) {
            ok = false;
            detail << name << " wrong; ";
        }
    };
    expect(check_region(make_disk({0, 0}, R, 512), R, tol).pass, true, "disk r=R");
    const SphereReport small = check_region(make_disk({0, 0}, 0.9 * R, 512), R, tol);
    expect(small.pass, false, "disk r=0.9R");
    bool interior_fails = true;
    for (const VertexCheck& vc : small.per_vertex)
        interior_fails = interior_fails && !vc.interior_ok;
    expect(interior_fails, true, "disk r=0.9R interior flags");
    expect(check_region(two_disks(1.5 * R), R, tol).pass, false, "gap 1.5R");
    expect(check_region(two_disks(2.5 * R), R, tol).pass, true, "gap 2.5R");
    expect(check_region(make_capsule({0, 0}, 4.0 * R, R, R / 9.0), R, tol).pass, true,
           "stadium cap R");
    expect(check_region(make_capsule({0, 0}, 4.0 * R, 0.8 * R, R / 10.0), R, tol).pass,
           false, "stadium cap 0.8R");
    report(4, "sphere-condition truth table", ok,
           ok ? "6 verdicts as expected" : detail.str());
}

void criterion_5() {
    const double R = 1.0;
    const std::vector<Region> suite = feasibility_suite(R);
    std::size_t curves = 0;
    double worst_turning = 1e300, worst_holder = 1e300;
    for (const Region& region : suite) {
        for (const ClosedCurve* curve : region.boundary_curves()) {
            ++curves;
            worst_turning = std::min(worst_turning, total_absolute_curvature(*curve));
            double k2 = 0.0;
            for (const CurvatureSample& s : curvature_profile(*curve))
                k2 += s.kappa * s.kappa * s.weight;
            const double L = perimeter(*curve);
            worst_holder = std::min(worst_holder, k2 - (4.0 * kPi * kPi / L) * 0.99);
        }
    }
    const bool ok = curves >= 50 && worst_turning >= 2.0 * kPi - 1e-9 &&
                    worst_holder >= 0.0;
    report(5, "total turning and Holder bounds", ok,
           fmt((double)curves) + " curves, min total |kappa| " + fmt(worst_turning) +
               " >= 2pi, min Holder slack " + fmt(worst_holder));
}

void criterion_6() {
    const double R = 1.0;
    bool all_pass = true;
    std::size_t regions_checked = 0;
    for (const Region& region : feasibility_suite(R)) {
        const SphereReport rep = check_region(region, R);
        if (!rep.pass) {
            all_pass = false;
            break;
        }
        ++regions_checked;
        if (!verify_graph_bound_all(region, R, &rep)) {
            all_pass = false;
            break;
        }
    }

    // the circle of radius exactly R attains the slope bound at |x| = R/2
    const ClosedCurve tight = make_circle({0, 0}, R, 512);
    const Point2 p = tight[0];
    const Point2 nu{1.0, 0.0};  // outward normal at (R, 0)
    const Point2 tx{0.0, 1.0};
    double best_dx = 1e300, ratio = 0.0;
    for (std::size_t i = 0; i < tight.size(); ++i) {
        const Point2 d = tight[i] - p;
        const double lx = dot(d, tx);
        if (std::abs(std::abs(lx) - R / 2.0) < best_dx && std::abs(lx) < R) {
            best_dx = std::abs(std::abs(lx) - R / 2.0);
            const Point2 radial{tight[i].x / R, tight[i].y / R};
            const Point2 tangent{-radial.y, radial.x};
            const double slope = std::abs(dot(tangent, nu) / dot(tangent, tx));
            const double bound = std::abs(lx) / std::sqrt(R * R - lx * lx);
            ratio = slope / bound;
        }
    }
    const bool attained = ratio >= 0.95 && ratio <= 1.05;
    report(6, "local graph slope bound", all_pass && attained,
           fmt((double)regions_checked) + " regions, circle bound ratio " + fmt(ratio));
}

void criterion_7() {
    const double R = 1.0;
    bool ok = true;
    std::size_t checked = 0;
    for (const Region& region : feasibility_suite(R)) {
        if (!check_region(region, R).pass) continue;
        const PackingBound pb = packing_lower_bound(region, R);
        ok = ok && pb.satisfied;
        ++checked;
    }
    for (double lr : {4.0, 8.0, 16.0}) {
        const PackingBound pb =
            packing_lower_bound(make_capsule({0, 0}, lr * R, R, R / 9.0), R);
        ok = ok && pb.satisfied && pb.m == (long long)std::floor((lr + 2.0) / 4.0);
    }
    report(7, "interior ball packing bound", ok,
           fmt((double)checked) + " connected shapes incl. capsules l/R in {4,8,16}");
}

void criterion_8() {
    const double R = 1.0;
    const PhiModel phi = PhiModel::power(2.0);
    bool ok = true;
    std::ostringstream detail;
    struct Fam {
        const char* name;
        std::vector<RegionSet> seq;
        RegionSet limit;
    };
    const std::vector<Fam> fams{
        {"radial", family_shrinking_radial(R, 12), family_shrinking_radial_limit(R)},
        {"translation", family_translation_decay(R, 12),
         family_translation_decay_limit(R)},
        {"radius", family_radius_decay(R, 12), family_radius_decay_limit(R)}};
    for (const Fam& f : fams) {
        const SequenceReport rep = analyze_sequence(f.seq, f.limit, R, phi);
        const bool fam_ok = rep.semicontinuity_ok && rep.perimeter_converges &&
                            rep.limit_feasible;
        ok = ok && fam_ok;
        detail << f.name << (fam_ok ? " ok; " : " FAILED; ");
    }
    report(8, "semicontinuity and perimeter convergence", ok, detail.str());
}

void criterion_9() {
    const double R = 0.8;
    RasterImage img = make_image(120, 120, 8.0 / 120.0, {-4, -4});
    for (int y = 0; y < 120; ++y)
        for (int x = 0; x < 120; ++x) {
            const Point2 c = img.pixel_center(x, y);
            const bool in1 = (c.x + 2) * (c.x + 2) + c.y * c.y < 2.56;
            const bool in2 = (c.x - 2) * (c.x - 2) + c.y * c.y < 2.56;
            img.at(x, y) = in1 || in2 ? 1.0 : 0.0;
        }
    EnergyParams params{10.0, 1.0, 1.0, R, PhiModel::power(2.0)};
    Schedule sched;
    sched.iterations = 4000;
    sched.seed = 17;
    const RunReport run = optimize_variable_k(img, params, sched);
    bool ok = run.energy_trace.size() == run.k_trace.size() && !run.energy_trace.empty();
    long long worst_slack = 1 << 30;
    for (std::size_t i = 0; i < run.k_trace.size() && ok; ++i) {
        const long long bound = k_upper_bound(run.energy_trace[i], params);
        worst_slack = std::min(worst_slack, bound - run.k_trace[i]);
        if (run.k_trace[i] > bound) ok = false;
    }
    report(9, "layer count obeys the area bound on the whole trace", ok,
           fmt((double)run.k_trace.size()) + " accepted states, min slack " +
               fmt((double)worst_slack) + ", final k=" + fmt((double)run.final_seg.size()));
}

void criterion_10(const std::string& cli) {
    namespace fs = std::filesystem;
    const fs::path work = "acceptance_tmp";
    fs::create_directories(work);
    const RasterImage img = disk_image(1.5, 120, 4.0);
    write_pgm(img, (work / "input.pgm").string());

    const std::string flags =
        " segment --image " + (work / "input.pgm").string() +
        " --radius 1.5 --alpha 10 --beta 1 --gamma 1 --k 1 --iters 3000 --seed 7"
        " --pixel-size " + std::to_string(8.0 / 120.0) +
        " --origin-x -4 --origin-y -4 --out ";
    const int rc1 =
        std::system((cli + flags + (work / "run1").string() + " > /dev/null").c_str());
    const int rc2 =
        std::system((cli + flags + (work / "run2").string() + " > /dev/null").c_str());
    bool ok = rc1 == 0 && rc2 == 0;
    std::string detail = "runs rc=" + fmt(rc1) + "," + fmt(rc2);
    if (ok) {
        const std::string t1 = read_text_file((work / "run1" / "trace.csv").string());
        const std::string t2 = read_text_file((work / "run2" / "trace.csv").string());
        ok = !t1.empty() && t1 == t2;
        detail += ok ? ", trace files byte-identical (" + fmt((double)t1.size()) + " bytes)"
                     : ", trace files differ";
    }
    report(10, "determinism of seeded segment runs", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "./curvseg";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(cli);
    if (g_failures == 0)
        std::printf("all 10 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures;
}
