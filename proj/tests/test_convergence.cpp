#include "curvseg/convergence.hpp"
#include "curvseg/shapes.hpp"
#include "curvseg/sphere.hpp"
#include "curvseg/verify_suites.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

using namespace curvseg;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("hausdorff distance oracles") {
    const RegionSet disk{make_disk({0, 0}, 1.0, 512)};
    CHECK(hausdorff_distance(disk, disk) == doctest::Approx(0.0));

    const RegionSet bigger{make_disk({0, 0}, 1.1, 512)};
    CHECK(std::abs(hausdorff_distance(disk, bigger) - 0.1) <= 1e-3);

    const RegionSet moved{make_disk({0.3, 0}, 1.0, 512)};
    const double h = hausdorff_distance(disk, moved);
    CHECK(std::abs(h - 0.3) <= 1e-3);
    // brute force over dense samples agrees
    const auto sa = oracle::circle_samples({0, 0}, 1.0, 4096);
    const auto sb = oracle::circle_samples({0.3, 0}, 1.0, 4096);
    const double brute = std::max(oracle::brute_hausdorff(sa, sb),
                                  oracle::brute_hausdorff(sb, sa));
    CHECK(std::abs(h - brute) <= 2e-3);

    CHECK_THROWS_AS(hausdorff_distance(RegionSet{}, disk), std::invalid_argument);
}

TEST_CASE("hausdorff is a metric on sampled shapes") {
    const std::vector<RegionSet> shapes{
        {make_disk({0, 0}, 1.0, 256)},
        {make_disk({0.4, 0.1}, 1.3, 256)},
        {make_capsule({0, 0}, 2.0, 0.8, 0.05)},
        {make_ellipse({-0.2, 0.3}, 1.5, 1.0, 256)}};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        for (std::size_t j = 0; j < shapes.size(); ++j) {
            const double dij = hausdorff_distance(shapes[i], shapes[j]);
            CHECK(std::abs(dij - hausdorff_distance(shapes[j], shapes[i])) <= 1e-12);
            if (i == j) CHECK(dij == doctest::Approx(0.0));
            for (std::size_t k = 0; k < shapes.size(); ++k)
                CHECK(dij <= hausdorff_distance(shapes[i], shapes[k]) +
                                 hausdorff_distance(shapes[k], shapes[j]) + 1e-9);
        }
    }
}

TEST_CASE("l1 distance") {
    const RasterImage frame = make_image(400, 400, 0.02, {-4, -4});
    const RegionSet disk{make_disk({0, 0}, 1.0, 512)};
    CHECK(l1_distance(disk, disk, frame) == doctest::Approx(0.0));

    const RegionSet bigger{make_disk({0, 0}, 1.1, 512)};
    const double annulus = kPi * (1.21 - 1.0);
    CHECK(std::abs(l1_distance(disk, bigger, frame) - annulus) <= 0.02 * annulus);

    Region sq1, sq2;
    sq1.outer.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    sq2.outer.vertices = {{0.5, 0}, {1.5, 0}, {1.5, 1}, {0.5, 1}};
    const double d = l1_distance({sq1}, {sq2}, frame);
    CHECK(std::abs(d - 1.0) <= 2.0 * frame.pixel_size * 4.0);

    // always bounded by the total area
    CHECK(l1_distance(disk, bigger, frame) <= area(disk) + area(bigger));
}

TEST_CASE("analyze_sequence on the generator families") {
    const double R = 1.0;
    const PhiModel phi = PhiModel::power(2.0);

    SUBCASE("radius decay") {
        const SequenceReport rep = analyze_sequence(family_radius_decay(R, 12),
                                                    family_radius_decay_limit(R), R, phi);
        CHECK(rep.limit_feasible);
        CHECK(rep.perimeter_converges);
        CHECK(rep.semicontinuity_ok);
        for (std::size_t h = 1; h < 12; ++h) {
            CHECK(rep.perimeter[h] < rep.perimeter[h - 1]);
            CHECK(rep.hausdorff_to_limit[h] < rep.hausdorff_to_limit[h - 1]);
        }
        // perimeters are the closed-form n-gon values
        for (int h = 1; h <= 12; ++h)
            CHECK(rep.perimeter[(std::size_t)h - 1] ==
                  doctest::Approx(oracle::ngon_perimeter(1024, 2.0 * R * (1.0 + 0.1 / h)))
                      .epsilon(1e-12));
    }

    SUBCASE("shrinking radial perturbation: strict semicontinuity") {
        const SequenceReport rep =
            analyze_sequence(family_shrinking_radial(R, 12),
                             family_shrinking_radial_limit(R), R, phi);
        CHECK(rep.limit_feasible);
        CHECK(rep.semicontinuity_ok);
        CHECK(rep.perimeter_converges);
        // F decreases towards F(circle) and stays above it
        const double f_limit = curvature_energy(family_shrinking_radial_limit(R)[0], phi);
        for (double f : rep.F_value) CHECK(f >= f_limit - 1e-9);
        CHECK(rep.F_value.back() < rep.F_value.front());
    }

    SUBCASE("constant sequence has zero deviations") {
        const RegionSet limit = family_translation_decay_limit(R);
        const std::vector<RegionSet> seq(8, limit);
        const SequenceReport rep = analyze_sequence(seq, limit, R, phi);
        for (double h : rep.hausdorff_to_limit) CHECK(h == doctest::Approx(0.0));
        for (double l : rep.l1_to_limit) CHECK(l == doctest::Approx(0.0));
        CHECK(rep.perimeter_converges);
        CHECK(rep.semicontinuity_ok);
    }

    SUBCASE("infeasible term is reported by index") {
        std::vector<RegionSet> seq = family_radius_decay(R, 4);
        seq.insert(seq.begin() + 2, {make_disk({0, 0}, 0.5 * R, 512)});
        try {
            analyze_sequence(seq, family_radius_decay_limit(R), R, phi);
            FAIL("expected an exception");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("term 2") != std::string::npos);
        }
    }
}

TEST_CASE("equivalence probe") {
    const double R = 1.0;
    const Region base = make_disk({0, 0}, 2.0 * R, 512);
    std::vector<std::pair<RegionSet, RegionSet>> pairs;
    pairs.emplace_back(RegionSet{base}, RegionSet{base});                       // identical
    pairs.emplace_back(RegionSet{base}, RegionSet{translated(base, {0.01, 0})});
    pairs.emplace_back(RegionSet{base}, RegionSet{translated(base, {0.2, 0})});

    const EquivalenceReport rep = equivalence_probe(pairs, R);
    REQUIRE(rep.pairs.size() == 3);
    CHECK(rep.pairs[0].l1 == doctest::Approx(0.0));
    CHECK(rep.pairs[0].hausdorff == doctest::Approx(0.0));
    CHECK(rep.pairs[0].in_class);
    CHECK(rep.pairs[1].l1 < rep.pairs[2].l1);
    CHECK(rep.pairs[1].hausdorff < rep.pairs[2].hausdorff);

    // the counterexample lives outside the class: tiny l1, huge hausdorff
    CHECK_FALSE(rep.counterexample.in_class);
    CHECK(rep.counterexample.l1 <= 1.5 * kPi * R * R / 16.0);
    CHECK(rep.counterexample.hausdorff >= 3.0 * R);
}

TEST_CASE("verify suites all pass") {
    for (const char* suite : {"metrics", "semicontinuity", "compactness", "equivalence"}) {
        const SuiteResult res = run_verify_suite(suite, 1.0);
        INFO(res.table());
        CHECK(res.pass());
        CHECK_FALSE(res.csv.empty());
    }
    CHECK_THROWS_AS(run_verify_suite("bogus", 1.0), std::invalid_argument);
}
