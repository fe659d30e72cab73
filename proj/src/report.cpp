#include "hypertrend/report.hpp"

#include "hypertrend/data_ingest.hpp"
#include "hypertrend/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace hypertrend {
namespace {

using nlohmann::json;

constexpr Year kDeviationYears[] = {1.0, 1000.0};

// JSON has no non-finite numbers; they travel as strings.
json num(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    return v;
}

double num_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
        if (s == "Infinity") return std::numeric_limits<double>::infinity();
        if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    }
    throw InvalidParams("expected a number, got " + j.dump());
}

json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

std::optional<double> opt_num_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return num_from(j);
}

json window_json(const FitWindow& w) { return json::array({num(w.start), num(w.end)}); }

FitWindow window_from(const json& j) { return FitWindow{num_from(j.at(0)), num_from(j.at(1))}; }

json fit_json(const HyperbolicFit& f) {
    return {{"a", num(f.params.a())},
            {"k", num(f.params.k())},
            {"window", window_json(f.window)},
            {"n_points", f.n_points},
            {"sse_reciprocal", num(f.sse_reciprocal)},
            {"r2_reciprocal", num(f.r2_reciprocal)},
            {"slope_stderr", num(f.slope_stderr)}};
}

HyperbolicFit fit_from(const json& j) {
    return HyperbolicFit{HyperbolicParams(num_from(j.at("a")), num_from(j.at("k"))),
                         window_from(j.at("window")),
                         j.at("n_points").get<std::size_t>(),
                         num_from(j.at("sse_reciprocal")),
                         num_from(j.at("r2_reciprocal")),
                         num_from(j.at("slope_stderr"))};
}

std::string sig4(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string year1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string year_text(Year y) { return std::to_string(std::lround(y)); }

void text_fit(std::string& out, const std::string& label, const HyperbolicFit& f) {
    out += "  " + label + "window " + year_text(f.window.start) + "-" + year_text(f.window.end) + " (" +
           std::to_string(f.n_points) + " points)\n";
    out += "  " + label + "a = " + sig4(f.params.a()) + ", k = " + sig4(f.params.k()) +
           ", r2 = " + sig4(f.r2_reciprocal) + ", singularity " + std::to_string(singularity_year(f.params)) + "\n";
}

std::string render_text(const RegionReport& r) {
    std::string out = "Region: " + r.region + "\n";
    out += "  data: " + std::to_string(r.n_points) + " observations, " + year_text(r.first_year) + "-" +
           year_text(r.last_year) + "\n";
    if (r.fit) text_fit(out, "", *r.fit);
    if (r.segmented) {
        out += "  breakpoint: " + year_text(r.segmented->breakpoint) +
               " (total SSE " + sig4(r.segmented->total_sse) + ")\n";
        text_fit(out, "first segment: ", r.segmented->first);
        text_fit(out, "second segment: ", r.segmented->second);
    }
    out += "  reference singularity: " + std::to_string(r.singularity_year) + " (a/k = " + year1(r.singularity) + ")\n";
    const auto& d = r.divergence;
    if (d.onset) {
        out += "  divergence: " + std::string(to_string(d.direction)) + " from " + year_text(*d.onset) +
               ", bypass margin " + sig4(*d.bypass_margin_years) + " years\n";
    } else {
        out += "  divergence: none\n";
    }
    if (r.classification) {
        out += "  classification: " + std::string(to_string(r.classification->label)) +
               " (t = " + sig4(r.classification->slope_t_statistic) + ", r2 = " + sig4(r.classification->r2) +
               ")\n";
    }
    for (const auto& dev : r.deviations) {
        out += "  deviation at AD " + year_text(dev.year) + ": " + (dev.percent >= 0 ? "+" : "") +
               sig4(dev.percent) + "%\n";
    }
    out += "  timeline (" + std::string(to_string(r.comparison.group)) + "):\n";
    for (const auto& b : r.comparison.boundaries) {
        out += "    " + year_text(b.boundary) + ": " + std::string(to_string(b.verdict));
        if (b.verdict != TakeoffVerdict::Indeterminate) {
            out += " (gradient " + sig4(b.gradient_before) + " -> " + sig4(b.gradient_after) +
                   ", t = " + sig4(b.t_statistic) + ")";
        }
        out += "\n";
    }
    return out;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    return format_number(v);
}

// One row per scalar, keyed by the flattened JSON path.
void flatten(const json& j, const std::string& prefix, const std::string& region, std::string& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, region, out);
        return;
    }
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), region, out);
        return;
    }
    std::string value;
    if (j.is_null()) {
        value = "";
    } else if (j.is_number_float()) {
        value = csv_number(j.get<double>());
    } else if (j.is_string()) {
        value = j.get<std::string>();
    } else {
        value = j.dump();
    }
    out += csv_field(region) + "," + csv_field(prefix) + "," + csv_field(value) + "\n";
}

} // namespace

RegionReport analyze_region(const TimeSeries& ts, const AnalysisConfig& config) {
    if (config.segments != 1 && config.segments != 2) throw InvalidParams("segments must be 1 or 2");
    if (ts.empty()) throw InsufficientData("region '" + config.region_name + "' has no observations");

    RegionReport r{config.region_name, config.window, config.segments, ts.size(), ts.front().year,
                   ts.back().year, std::nullopt, std::nullopt, 0.0, 0, {}, std::nullopt,
                   RegimeComparison{config.timeline, 0.0, {}}, {}};

    const HyperbolicFit* early = nullptr;
    if (config.segments == 1) {
        r.fit = fit_hyperbolic(ts, config.window);
        early = &*r.fit;
    } else {
        r.segmented = fit_piecewise(ts, config.window, config.min_points);
        early = &r.segmented->first;
    }
    const auto& ref = reference_fit(r);

    r.singularity = singularity(ref.params);
    r.singularity_year = singularity_year(ref.params);
    r.divergence = detect_divergence(ref, ts, config.divergence);
    if (ts.slice(config.window.start, config.window.end).size() >= 4) {
        r.classification = classify_segment(ts, config.window, config.classifier);
    }
    r.comparison = compare_with_galor(ts, ref, GalorTimeline::for_group(config.timeline), config.comparison);
    for (Year y : kDeviationYears) {
        if (ts.find(y) != nullptr && early->params.reciprocal(y) > kSingularityGuard) {
            r.deviations.push_back({y, relative_deviation(*early, ts, y)});
        }
    }
    return r;
}

const HyperbolicFit& reference_fit(const RegionReport& report) {
    if (report.fit) return *report.fit;
    if (report.segmented) return report.segmented->second;
    throw InvalidParams("report has no fit");
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw InvalidParams("unknown output format '" + std::string(name) + "'");
}

std::string render_reports(const std::vector<RegionReport>& reports, ReportFormat format) {
    std::string out;
    switch (format) {
    case ReportFormat::Text:
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i > 0) out += "\n";
            out += render_text(reports[i]);
        }
        break;
    case ReportFormat::Csv:
        out = "region,field,value\n";
        for (const auto& r : reports) {
            auto j = report_to_json(r);
            j.erase("region");
            flatten(j, "", r.region, out);
        }
        break;
    case ReportFormat::Json: {
        json doc = {{"reports", json::array()}};
        for (const auto& r : reports) doc["reports"].push_back(report_to_json(r));
        out = doc.dump(2) + "\n";
        break;
    }
    }
    return out;
}

json report_to_json(const RegionReport& r) {
    json j;
    j["region"] = r.region;
    j["window"] = window_json(r.window);
    j["segments"] = r.segments;
    j["n_points"] = r.n_points;
    j["first_year"] = num(r.first_year);
    j["last_year"] = num(r.last_year);
    j["fit"] = r.fit ? fit_json(*r.fit) : json(nullptr);
    if (r.segmented) {
        j["segmented"] = {{"breakpoint", num(r.segmented->breakpoint)},
                          {"first", fit_json(r.segmented->first)},
                          {"second", fit_json(r.segmented->second)},
                          {"total_sse", num(r.segmented->total_sse)}};
    } else {
        j["segmented"] = nullptr;
    }
    j["singularity"] = num(r.singularity);
    j["singularity_year"] = r.singularity_year;
    j["divergence"] = {{"onset", opt_num(r.divergence.onset)},
                       {"direction", to_string(r.divergence.direction)},
                       {"bypass_margin_years", opt_num(r.divergence.bypass_margin_years)}};
    if (r.classification) {
        j["classification"] = {{"label", to_string(r.classification->label)},
                               {"slope_t_statistic", num(r.classification->slope_t_statistic)},
                               {"r2", num(r.classification->r2)}};
    } else {
        j["classification"] = nullptr;
    }
    json bounds = json::array();
    for (const auto& b : r.comparison.boundaries) {
        bounds.push_back({{"boundary", num(b.boundary)},
                          {"verdict", to_string(b.verdict)},
                          {"n_before", b.n_before},
                          {"n_after", b.n_after},
                          {"gradient_before", num(b.gradient_before)},
                          {"gradient_after", num(b.gradient_after)},
                          {"gradient_change", num(b.gradient_change)},
                          {"change_stderr", num(b.change_stderr)},
                          {"t_statistic", num(b.t_statistic)}});
    }
    j["comparison"] = {{"group", to_string(r.comparison.group)},
                       {"fitted_gradient", num(r.comparison.fitted_gradient)},
                       {"boundaries", bounds}};
    json devs = json::array();
    for (const auto& d : r.deviations) devs.push_back({{"year", num(d.year)}, {"percent", num(d.percent)}});
    j["deviations"] = devs;
    return j;
}

RegionReport report_from_json(const json& j) {
    try {
        RegionReport r{j.at("region").get<std::string>(),
                       window_from(j.at("window")),
                       j.at("segments").get<int>(),
                       j.at("n_points").get<std::size_t>(),
                       num_from(j.at("first_year")),
                       num_from(j.at("last_year")),
                       std::nullopt,
                       std::nullopt,
                       num_from(j.at("singularity")),
                       j.at("singularity_year").get<long>(),
                       {},
                       std::nullopt,
                       RegimeComparison{parse_timeline_group(j.at("comparison").at("group").get<std::string>()),
                                        num_from(j.at("comparison").at("fitted_gradient")),
                                        {}},
                       {}};
        if (!j.at("fit").is_null()) r.fit = fit_from(j.at("fit"));
        if (const auto& s = j.at("segmented"); !s.is_null()) {
            r.segmented = SegmentedFit{num_from(s.at("breakpoint")), fit_from(s.at("first")),
                                       fit_from(s.at("second")), num_from(s.at("total_sse"))};
        }
        const auto& d = j.at("divergence");
        r.divergence = {opt_num_from(d.at("onset")), parse_divergence_direction(d.at("direction").get<std::string>()),
                        opt_num_from(d.at("bypass_margin_years"))};
        if (const auto& c = j.at("classification"); !c.is_null()) {
            r.classification = RegimeClassification{parse_regime_label(c.at("label").get<std::string>()),
                                                    num_from(c.at("slope_t_statistic")), num_from(c.at("r2"))};
        }
        for (const auto& b : j.at("comparison").at("boundaries")) {
            r.comparison.boundaries.push_back({num_from(b.at("boundary")),
                                               parse_takeoff_verdict(b.at("verdict").get<std::string>()),
                                               b.at("n_before").get<std::size_t>(),
                                               b.at("n_after").get<std::size_t>(),
                                               num_from(b.at("gradient_before")),
                                               num_from(b.at("gradient_after")),
                                               num_from(b.at("gradient_change")),
                                               num_from(b.at("change_stderr")),
                                               num_from(b.at("t_statistic"))});
        }
        for (const auto& dev : j.at("deviations")) {
            r.deviations.push_back({num_from(dev.at("year")), num_from(dev.at("percent"))});
        }
        return r;
    } catch (const json::exception& e) {
        throw InvalidParams(std::string("report does not match the schema: ") + e.what());
    }
}

} // namespace hypertrend
