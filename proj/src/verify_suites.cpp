#include "curvseg/verify_suites.hpp"

#include "curvseg/convergence.hpp"
#include "curvseg/shapes.hpp"
#include "curvseg/sphere.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace curvseg {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool SuiteResult::pass() const {
    for (const SuiteRow& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string SuiteResult::table() const {
    std::ostringstream os;
    os << "suite: " << suite << "\n";
    for (const SuiteRow& r : rows)
        os << "  [" << (r.pass ? "PASS" : "FAIL") << "] " << r.name
           << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
    os << "overall: " << (pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

SuiteResult suite_metrics(double R) {
    SuiteResult res;
    res.suite = "metrics";
    std::ostringstream csv;
    csv << "case,expected,measured\n";

    const RegionSet disk{make_disk({0, 0}, 2.0 * R, 512)};
    const RegionSet disk_big{make_disk({0, 0}, 2.1 * R, 512)};
    const RegionSet disk_shift{make_disk({0.3 * R, 0}, 2.0 * R, 512)};
    const RegionSet capsule{make_capsule({0, 0}, 3.0 * R, 1.5 * R, R / 10.0)};

    {
        const double h = hausdorff_distance(disk, disk);
        res.rows.push_back({"hausdorff identity", h == 0.0, "h=" + fmt(h)});
        csv << "hausdorff_identity,0," << h << "\n";
    }
    {
        const double h = hausdorff_distance(disk, disk_big);
        const bool ok = std::abs(h - 0.1 * R) <= 1e-3 * (1.0 + R);
        res.rows.push_back({"hausdorff concentric", ok, "h=" + fmt(h)});
        csv << "hausdorff_concentric," << 0.1 * R << "," << h << "\n";
    }
    {
        const double h = hausdorff_distance(disk, disk_shift);
        const bool ok = std::abs(h - 0.3 * R) <= 1e-3 * (1.0 + R);
        res.rows.push_back({"hausdorff translate", ok, "h=" + fmt(h)});
        csv << "hausdorff_translate," << 0.3 * R << "," << h << "\n";
    }
    {
        const double hab = hausdorff_distance(disk, capsule);
        const double hba = hausdorff_distance(capsule, disk);
        res.rows.push_back({"hausdorff symmetry", std::abs(hab - hba) <= 1e-12,
                            "difference=" + fmt(std::abs(hab - hba))});
        csv << "hausdorff_symmetry,0," << std::abs(hab - hba) << "\n";
    }
    {
        const double dab = hausdorff_distance(disk, disk_shift);
        const double dbc = hausdorff_distance(disk_shift, capsule);
        const double dac = hausdorff_distance(disk, capsule);
        const bool ok = dac <= dab + dbc + 1e-9;
        res.rows.push_back({"hausdorff triangle", ok,
                            fmt(dac) + " <= " + fmt(dab) + " + " + fmt(dbc)});
        csv << "hausdorff_triangle," << dab + dbc << "," << dac << "\n";
    }
    {
        const RasterImage frame =
            make_image(600, 600, R / 100.0, {-3.0 * R, -3.0 * R});
        const double l1 = l1_distance(disk, disk_big, frame);
        const double expected = kPi * (2.1 * 2.1 - 2.0 * 2.0) * R * R;
        const bool ok = std::abs(l1 - expected) <= 0.02 * expected;
        res.rows.push_back({"l1 annulus", ok, "l1=" + fmt(l1) + " vs " + fmt(expected)});
        csv << "l1_annulus," << expected << "," << l1 << "\n";
        const double bound = area(disk) + area(disk_big);
        res.rows.push_back({"l1 bounded by areas", l1 <= bound, fmt(l1) + " <= " + fmt(bound)});
        csv << "l1_area_bound," << bound << "," << l1 << "\n";
        res.rows.push_back(
            {"l1 identity", l1_distance(disk, disk, frame) == 0.0, ""});
    }
    res.csv = csv.str();
    return res;
}

SuiteResult suite_sequences(double R, bool compactness) {
    SuiteResult res;
    res.suite = compactness ? "compactness" : "semicontinuity";
    std::ostringstream csv;
    csv << "family,term,hausdorff,l1,perimeter,F\n";

    const PhiModel phi = PhiModel::power(2.0);
    const int terms = 12;
    struct Family {
        std::string name;
        std::vector<RegionSet> seq;
        RegionSet limit;
    };
    std::vector<Family> families;
    families.push_back({"shrinking_radial", family_shrinking_radial(R, terms),
                        family_shrinking_radial_limit(R)});
    families.push_back({"translation_decay", family_translation_decay(R, terms),
                        family_translation_decay_limit(R)});
    families.push_back({"radius_decay", family_radius_decay(R, terms),
                        family_radius_decay_limit(R)});

    for (const Family& fam : families) {
        const SequenceReport rep = analyze_sequence(fam.seq, fam.limit, R, phi);
        for (int h = 0; h < terms; ++h)
            csv << fam.name << "," << h + 1 << "," << rep.hausdorff_to_limit[(std::size_t)h]
                << "," << rep.l1_to_limit[(std::size_t)h] << ","
                << rep.perimeter[(std::size_t)h] << "," << rep.F_value[(std::size_t)h]
                << "\n";
        if (compactness) {
            // Kuratowski-to-the-limit diagnostics: both set metrics decay
            // monotonically towards zero and the boundary measures converge
            auto decays = [](const std::vector<double>& v) {
                for (std::size_t i = 1; i < v.size(); ++i)
                    if (v[i] > v[i - 1] + 1e-9) return false;
                return v.back() <= 0.15 * v.front() + 1e-9;
            };
            const bool h_shrinks = decays(rep.hausdorff_to_limit);
            const bool l1_shrinks = decays(rep.l1_to_limit);
            res.rows.push_back({fam.name + ": hausdorff to limit", h_shrinks,
                                fmt(rep.hausdorff_to_limit.front()) + " -> " +
                                    fmt(rep.hausdorff_to_limit.back())});
            res.rows.push_back({fam.name + ": l1 to limit", l1_shrinks,
                                fmt(rep.l1_to_limit.front()) + " -> " +
                                    fmt(rep.l1_to_limit.back())});
            res.rows.push_back({fam.name + ": perimeter converges",
                                rep.perimeter_converges, ""});
        } else {
            res.rows.push_back({fam.name + ": terms feasible", true, ""});
            res.rows.push_back({fam.name + ": limit feasible", rep.limit_feasible, ""});
            res.rows.push_back(
                {fam.name + ": consistency with the liminf inequality",
                 rep.semicontinuity_ok, "finite-sequence probe, not a proof"});
            res.rows.push_back({fam.name + ": perimeter converges",
                                rep.perimeter_converges, ""});
        }
    }
    res.csv = csv.str();
    return res;
}

SuiteResult suite_equivalence(double R) {
    SuiteResult res;
    res.suite = "equivalence";
    std::ostringstream csv;
    csv << "pair,l1,hausdorff,in_class\n";

    std::vector<std::pair<RegionSet, RegionSet>> pairs;
    const Region base = make_disk({0, 0}, 2.0 * R, 512);
    for (double t : {0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.7})
        pairs.emplace_back(RegionSet{base},
                           RegionSet{translated(base, {t * R, 0.0})});

    const EquivalenceReport rep = equivalence_probe(pairs, R);
    for (std::size_t i = 0; i < rep.pairs.size(); ++i)
        csv << i << "," << rep.pairs[i].l1 << "," << rep.pairs[i].hausdorff << ","
            << rep.pairs[i].in_class << "\n";
    csv << "counterexample," << rep.counterexample.l1 << ","
        << rep.counterexample.hausdorff << "," << rep.counterexample.in_class << "\n";

    bool all_in_class = true;
    for (const EquivalencePair& p : rep.pairs) all_in_class = all_in_class && p.in_class;
    res.rows.push_back({"pairs inside the class", all_in_class, ""});

    // inside the class the two metrics shrink together
    bool shrink_together = !rep.deciles.empty();
    for (std::size_t d = 0; d + 1 < rep.deciles.size(); ++d)
        if (rep.deciles[d].second > rep.deciles[d + 1].second + 1e-12)
            shrink_together = false;
    if (!rep.deciles.empty()) {
        const double small_l1 = rep.deciles.front().first;
        const double small_h = rep.deciles.front().second;
        shrink_together = shrink_together && small_h <= 0.2 * R;
        res.rows.push_back({"metrics shrink together", shrink_together,
                            "decile 1: l1<=" + fmt(small_l1) + " keeps hausdorff<=" +
                                fmt(small_h)});
    } else {
        res.rows.push_back({"metrics shrink together", false, "no in-class pairs"});
    }

    // the speck contributes area pi*(R/4)^2 to l1 but ~7R to hausdorff
    const bool counter_ok = !rep.counterexample.in_class &&
                            rep.counterexample.l1 <= 1.5 * kPi * R * R / 16.0 &&
                            rep.counterexample.hausdorff >= 3.0 * R;
    res.rows.push_back({"outside the class the implication fails", counter_ok,
                        "l1=" + fmt(rep.counterexample.l1) +
                            ", hausdorff=" + fmt(rep.counterexample.hausdorff)});
    res.csv = csv.str();
    return res;
}

}  // namespace

SuiteResult run_verify_suite(const std::string& suite, double R) {
    if (suite == "metrics") return suite_metrics(R);
    if (suite == "semicontinuity") return suite_sequences(R, false);
    if (suite == "compactness") return suite_sequences(R, true);
    if (suite == "equivalence") return suite_equivalence(R);
    throw std::invalid_argument(
        "verify: unknown suite '" + suite +
        "'; expected metrics, semicontinuity, compactness or equivalence");
}

}  // namespace curvseg
