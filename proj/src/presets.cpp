#include "hypertrend/presets.hpp"

#include "hypertrend/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef HYPERTREND_DEFAULT_PRESETS
#define HYPERTREND_DEFAULT_PRESETS "data/presets.json"
#endif

namespace hypertrend {
namespace {

using nlohmann::json;

FitWindow window_from(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2) throw PresetError("preset '" + key + "': window must be [start, end]");
    return FitWindow::make(j[0].get<double>(), j[1].get<double>());
}

RegionPreset preset_from(const json& j) {
    RegionPreset p;
    p.key = j.at("key").get<std::string>();
    p.name = j.value("name", p.key);
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "sum") {
        p.mode = AggregationMode::SumMembers;
    } else if (mode == "total") {
        p.mode = AggregationMode::UsePrebuiltTotal;
    } else {
        throw PresetError("preset '" + p.key + "': mode must be 'sum' or 'total'");
    }
    p.members = j.at("members").get<std::vector<std::string>>();
    if (p.members.empty()) throw PresetError("preset '" + p.key + "' has no members");
    p.window = window_from(j.at("window"), p.key);
    if (j.contains("segments")) {
        for (const auto& w : j.at("segments")) p.segments.push_back(window_from(w, p.key));
        if (p.segments.size() != 2) throw PresetError("preset '" + p.key + "' must list exactly two segments");
    }
    p.timeline = parse_timeline_group(j.at("timeline").get<std::string>());
    return p;
}

} // namespace

std::vector<RegionPreset> parse_presets(std::string_view json_text) {
    std::vector<RegionPreset> out;
    try {
        const auto doc = json::parse(json_text);
        for (const auto& entry : doc.at("presets")) out.push_back(preset_from(entry));
    } catch (const json::exception& e) {
        throw PresetError(std::string("malformed preset file: ") + e.what());
    } catch (const InvalidParams& e) {
        throw PresetError(std::string("malformed preset file: ") + e.what());
    }
    return out;
}

std::vector<RegionPreset> load_presets(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PresetError("cannot read preset file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presets(buf.str());
}

std::filesystem::path default_presets_path() {
    if (const char* env = std::getenv("HYPERTREND_PRESETS"); env != nullptr && *env != '\0') return env;
    return HYPERTREND_DEFAULT_PRESETS;
}

const RegionPreset& find_preset(const std::vector<RegionPreset>& presets, std::string_view key) {
    for (const auto& p : presets) {
        if (p.key == key) return p;
    }
    throw PresetError("unknown region preset '" + std::string(key) + "'");
}

RegionSpec resolve_region(const RegionPreset& preset, const Dataset& ds) {
    if (preset.mode == AggregationMode::SumMembers) {
        for (const auto& m : preset.members) {
            if (!ds.contains(m)) throw UnknownEntity("region '" + preset.key + "': unknown member '" + m + "'");
        }
        return {preset.name, preset.members, AggregationMode::SumMembers};
    }
    for (const auto& label : preset.members) {
        if (ds.contains(label)) return {preset.name, {label}, AggregationMode::UsePrebuiltTotal};
    }
    std::string tried;
    for (const auto& label : preset.members) tried += (tried.empty() ? "'" : ", '") + label + "'";
    throw UnknownEntity("region '" + preset.key + "': none of the total labels " + tried + " is in the data");
}

} // namespace hypertrend
