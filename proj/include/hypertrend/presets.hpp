#pragma once

// Named region presets loaded from a JSON data file (data/presets.json).
//
// Row labels for regional totals differ between revisions of the Maddison
// file, so a prebuilt-total preset lists alternative labels and the first one
// present in the dataset is used.

#include "hypertrend/data_ingest.hpp"
#include "hypertrend/fitting.hpp"
#include "hypertrend/regime.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hypertrend {

struct RegionPreset {
    std::string key;
    std::string name;
    AggregationMode mode = AggregationMode::SumMembers;
    /// Members to sum, or candidate labels of the prebuilt total.
    std::vector<std::string> members;
    FitWindow window;
    /// Empty, or the two segment windows of a two-trajectory region.
    std::vector<FitWindow> segments;
    TimelineGroup timeline = TimelineGroup::Developed;
};

/// Throws PresetError on malformed JSON or missing fields.
std::vector<RegionPreset> parse_presets(std::string_view json_text);
std::vector<RegionPreset> load_presets(const std::filesystem::path& path);

/// $HYPERTREND_PRESETS when set, otherwise the file shipped with the build.
std::filesystem::path default_presets_path();

/// Throws PresetError for an unknown key.
const RegionPreset& find_preset(const std::vector<RegionPreset>& presets, std::string_view key);

/// Resolves a preset against a dataset. Throws UnknownEntity when a member,
/// or every candidate total label, is missing.
RegionSpec resolve_region(const RegionPreset& preset, const Dataset& ds);

} // namespace hypertrend
