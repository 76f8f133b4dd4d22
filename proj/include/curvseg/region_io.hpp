#pragma once

#include "curvseg/energy.hpp"
#include "curvseg/geometry.hpp"
#include "curvseg/sphere.hpp"

#include <string>

namespace curvseg {

/// Region document: {"outer": [[x,y],...], "holes": [[[x,y],...],...]}.
/// Doubles are emitted with shortest round-trip precision.
std::string region_to_json(const Region& region);
Region region_from_json(const std::string& text);

/// Set document: {"regions": [<region>, ...]}.
std::string region_set_to_json(const RegionSet& set);
/// Accepts a single-region document, {"regions": [...]}, or
/// {"layers": [...]}.
RegionSet region_set_from_json(const std::string& text);

/// Segmentation document: {"layers": [<region>, ...]}, frontmost first.
std::string segmentation_to_json(const LayeredSegmentation& seg);
LayeredSegmentation segmentation_from_json(const std::string& text);

std::string sphere_report_to_json(const SphereReport& report);
std::string energy_breakdown_to_json(const EnergyBreakdown& breakdown);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace curvseg
