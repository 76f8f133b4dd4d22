#include "curvseg/config.hpp"
#include "curvseg/example_ball.hpp"
#include "curvseg/pgm_io.hpp"
#include "curvseg/region_io.hpp"
#include "curvseg/rng.hpp"
#include "curvseg/shapes.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>

using namespace curvseg;

namespace {
constexpr double kPi = std::numbers::pi;

std::string tmp_path(const std::string& name) {
    return std::string("io_test_") + name;
}

void write_raw(const std::string& path, const std::string& bytes) {
    write_text_file(path, bytes);
}
}  // namespace

TEST_CASE("read_pgm P2") {
    const std::string path = tmp_path("a.pgm");
    write_raw(path, "P2\n# a comment\n2 2\n255\n0 255\n255 0\n");
    const RasterImage img = read_pgm(path);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    // file order: top row first
    CHECK(img.at(0, 1) == doctest::Approx(0.0));
    CHECK(img.at(1, 1) == doctest::Approx(1.0));
    CHECK(img.at(0, 0) == doctest::Approx(1.0));
    CHECK(img.at(1, 0) == doctest::Approx(0.0));
    std::remove(path.c_str());
}

TEST_CASE("read_pgm P5 wide samples") {
    const std::string path = tmp_path("b.pgm");
    std::string data = "P5\n2 1\n65535\n";
    // big-endian: 0x0100 = 256, 0xFFFF = 65535
    data.push_back((char)0x01);
    data.push_back((char)0x00);
    data.push_back((char)0xFF);
    data.push_back((char)0xFF);
    write_raw(path, data);
    const RasterImage img = read_pgm(path);
    CHECK(img.at(0, 0) == doctest::Approx(256.0 / 65535.0).epsilon(1e-12));
    CHECK(img.at(1, 0) == doctest::Approx(1.0));
    std::remove(path.c_str());
}

TEST_CASE("read_pgm errors") {
    const std::string path = tmp_path("c.pgm");
    write_raw(path, "P6\n2 2\n255\n");
    CHECK_THROWS_AS(read_pgm(path), io_error);

    write_raw(path, "P2\n1 1\n70000\n0\n");  // maxval above the 16-bit cap
    CHECK_THROWS_AS(read_pgm(path), io_error);

    write_raw(path, "P2\n1 1\n255\n300\n");  // sample exceeds maxval
    CHECK_THROWS_AS(read_pgm(path), io_error);

    write_raw(path, "P5\n4 4\n255\nxx");  // truncated payload
    try {
        read_pgm(path);
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(e.byte_offset() > 0);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_pgm("does_not_exist.pgm"), io_error);
}

TEST_CASE("pgm round trip is exact for 255-quantized values") {
    RasterImage img = make_image(17, 9, 1.0, {0, 0});
    Rng rng(2);
    for (double& v : img.values) v = (double)(rng.uniform_index(256)) / 255.0;
    const std::string path = tmp_path("d.pgm");
    write_pgm(img, path);
    const RasterImage back = read_pgm(path);
    REQUIRE(back.values.size() == img.values.size());
    for (std::size_t i = 0; i < img.values.size(); ++i)
        CHECK(back.values[i] == img.values[i]);
    std::remove(path.c_str());
}

TEST_CASE("label image levels") {
    const RasterImage frame = make_image(32, 32, 0.25, {-4, -4});
    const std::string path = tmp_path("labels.pgm");

    write_label_image(LayeredSegmentation{}, frame, path);
    RasterImage lbl = read_pgm(path);
    for (double v : lbl.values) CHECK(v == doctest::Approx(0.0));

    // one layer covering the whole frame: uniform gray floor(255/2) = 127
    Region big;
    big.outer.vertices = {{-9, -9}, {9, -9}, {9, 9}, {-9, 9}};
    LayeredSegmentation one;
    one.layers.push_back(big);
    write_label_image(one, frame, path);
    lbl = read_pgm(path);
    for (double v : lbl.values) CHECK(v == doctest::Approx(127.0 / 255.0).epsilon(1e-12));

    // two disjoint layers: background plus floor(255/3), floor(510/3)
    LayeredSegmentation two;
    two.layers.push_back(make_disk({-2, 0}, 1.2, 64));
    two.layers.push_back(make_disk({2, 0}, 1.2, 64));
    write_label_image(two, frame, path);
    lbl = read_pgm(path);
    std::set<int> levels;
    for (double v : lbl.values) levels.insert((int)std::lround(v * 255.0));
    CHECK(levels == std::set<int>{0, 85, 170});
    std::remove(path.c_str());
}

TEST_CASE("region json round trip preserves doubles exactly") {
    Rng rng(13);
    Region r = make_perturbed_disk({0.123456789012345, -7.0 / 3.0}, 2.0 + rng.uniform(),
                                   0.1, 5, 97);
    r.holes.push_back(reversed(make_circle({0.1, 0.2}, 0.5 + rng.uniform() * 0.1, 33)));
    const Region back = region_from_json(region_to_json(r));
    REQUIRE(back.outer.size() == r.outer.size());
    for (std::size_t i = 0; i < r.outer.size(); ++i) {
        CHECK(back.outer[i].x == r.outer[i].x);
        CHECK(back.outer[i].y == r.outer[i].y);
    }
    REQUIRE(back.holes.size() == 1);
    for (std::size_t i = 0; i < r.holes[0].size(); ++i)
        CHECK(back.holes[0][i].x == r.holes[0][i].x);

    // set and segmentation containers
    const RegionSet set{r, make_disk({5, 5}, 1.0, 16)};
    CHECK(region_set_from_json(region_set_to_json(set)).size() == 2);
    CHECK(region_set_from_json(region_to_json(r)).size() == 1);
    LayeredSegmentation seg;
    seg.layers = set;
    CHECK(segmentation_from_json(segmentation_to_json(seg)).size() == 2);

    CHECK_THROWS_AS(region_from_json("{\"nope\": 1}"), io_error);
    CHECK_THROWS_AS(region_from_json("not json"), io_error);
}

TEST_CASE("config files") {
    const std::string path = tmp_path("conf.txt");
    write_raw(path, "# comment\nradius = 2.5\n\niters=300   # trailing\nphi = power:2\n");
    const auto entries = parse_config_file(path);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].first == "radius");
    CHECK(config_double("radius", entries[0].second) == doctest::Approx(2.5));
    CHECK(config_int("iters", entries[1].second) == 300);
    CHECK(entries[2].second == "power:2");

    CHECK_THROWS_AS(config_double("radius", "abc"), usage_error);
    CHECK_THROWS_AS(config_int("iters", "1.5"), usage_error);
    CHECK(config_bool("flag", "true"));
    CHECK_FALSE(config_bool("flag", "0"));
    CHECK_THROWS_AS(config_bool("flag", "maybe"), usage_error);

    write_raw(path, "this line has no equals\n");
    CHECK_THROWS_AS(parse_config_file(path), usage_error);
    std::remove(path.c_str());
}

TEST_CASE("example_ball energies and hypothesis") {
    CHECK_THROWS_AS(example_ball(1.0, 100), std::invalid_argument);

    const ExampleBallReport rep = example_ball(2.0, 200);
    CHECK(rep.inequality_ok);
    CHECK(rep.disk_wins);
    CHECK(std::abs(rep.g_disk - (4.0 * kPi + 5.0 * kPi)) <= 0.02 * 9.0 * kPi);
    const double empty_expected = rep.alpha * (4.0 * kPi - 16.0 * kPi * kPi / 100.0);
    CHECK(std::abs(rep.g_empty - empty_expected) <= 0.02 * empty_expected);
    CHECK(rep.g_competitors.size() == 20);
    // at least one competitor is long enough to exercise the perimeter branch
    bool long_one = false;
    for (const std::string& name : rep.competitor_names)
        long_one = long_one || name.rfind("disk_x2", 0) == 0;
    CHECK(long_one);

    const ExampleBallReport r15 = example_ball(1.5, 200);
    const double expected15 = 2.25 * kPi + 3.0 * kPi + 4.0 * kPi / 3.0;
    CHECK(std::abs(r15.g_disk - expected15) <= 0.02 * expected15);
    CHECK(r15.disk_wins);
}
