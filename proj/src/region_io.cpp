#include "curvseg/region_io.hpp"

#include "curvseg/pgm_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace curvseg {

using nlohmann::json;

namespace {

json curve_to_json_array(const ClosedCurve& c) {
    json arr = json::array();
    for (const Point2& p : c.vertices) arr.push_back(json::array({p.x, p.y}));
    return arr;
}

ClosedCurve curve_from_json_array(const json& arr) {
    ClosedCurve c;
    for (const json& pt : arr) {
        if (!pt.is_array() || pt.size() != 2)
            throw io_error("region: vertex must be a [x, y] pair");
        c.vertices.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return c;
}

json region_to_json_obj(const Region& region) {
    json j;
    j["outer"] = curve_to_json_array(region.outer);
    j["holes"] = json::array();
    for (const ClosedCurve& h : region.holes) j["holes"].push_back(curve_to_json_array(h));
    return j;
}

Region region_from_json_obj(const json& j) {
    if (!j.contains("outer")) throw io_error("region: missing \"outer\"");
    Region r;
    r.outer = curve_from_json_array(j["outer"]);
    if (j.contains("holes"))
        for (const json& h : j["holes"]) r.holes.push_back(curve_from_json_array(h));
    return r;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw io_error(std::string("json: ") + e.what(), e.byte);
    }
}

}  // namespace

std::string region_to_json(const Region& region) {
    return region_to_json_obj(region).dump(2) + "\n";
}

Region region_from_json(const std::string& text) {
    return region_from_json_obj(parse(text));
}

std::string region_set_to_json(const RegionSet& set) {
    json j;
    j["regions"] = json::array();
    for (const Region& r : set) j["regions"].push_back(region_to_json_obj(r));
    return j.dump(2) + "\n";
}

RegionSet region_set_from_json(const std::string& text) {
    const json j = parse(text);
    RegionSet set;
    if (j.contains("outer")) {
        set.push_back(region_from_json_obj(j));
    } else if (j.contains("regions")) {
        for (const json& r : j["regions"]) set.push_back(region_from_json_obj(r));
    } else if (j.contains("layers")) {
        for (const json& r : j["layers"]) set.push_back(region_from_json_obj(r));
    } else {
        throw io_error("region set: expected \"outer\", \"regions\" or \"layers\"");
    }
    return set;
}

std::string segmentation_to_json(const LayeredSegmentation& seg) {
    json j;
    j["layers"] = json::array();
    for (const Region& r : seg.layers) j["layers"].push_back(region_to_json_obj(r));
    return j.dump(2) + "\n";
}

LayeredSegmentation segmentation_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("layers")) throw io_error("segmentation: missing \"layers\"");
    LayeredSegmentation seg;
    for (const json& r : j["layers"]) seg.layers.push_back(region_from_json_obj(r));
    return seg;
}

std::string sphere_report_to_json(const SphereReport& report) {
    json j;
    j["radius"] = report.radius;
    j["tol"] = report.tol;
    j["pass"] = report.pass;
    j["worst_violation"] = report.worst_violation;
    // tolerance semantics are an artifact convention, not part of the
    // mathematical membership condition
    j["note"] = "margins are relative to R; pass requires margin >= -tol";
    j["per_vertex"] = json::array();
    for (const VertexCheck& vc : report.per_vertex) {
        j["per_vertex"].push_back({{"region", vc.region},
                                   {"curve", vc.curve},
                                   {"vertex", vc.vertex},
                                   {"interior_ok", vc.interior_ok},
                                   {"exterior_ok", vc.exterior_ok},
                                   {"interior_margin", vc.interior_margin},
                                   {"exterior_margin", vc.exterior_margin}});
    }
    return j.dump(2) + "\n";
}

std::string energy_breakdown_to_json(const EnergyBreakdown& b) {
    json j;
    j["G"] = b.G;
    j["fidelity_per_layer"] = b.fidelity_per_layer;
    j["fidelity_background"] = b.fidelity_background;
    j["area_terms"] = b.area_terms;
    j["curvature_terms"] = b.curvature_terms;
    j["feasible"] = b.feasible;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << content;
    if (!out) throw io_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace curvseg
