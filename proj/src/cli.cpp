#include "hypertrend/cli.hpp"

#include "hypertrend/data_ingest.hpp"
#include "hypertrend/errors.hpp"
#include "hypertrend/plot.hpp"
#include "hypertrend/presets.hpp"
#include "hypertrend/report.hpp"
#include "hypertrend/synthetic.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <ostream>

namespace hypertrend::cli {
namespace {

struct CommonOptions {
    std::string data;
    std::string presets;
    std::size_t header_row = 0;
    bool skip_non_year_rows = false;
    std::string window;
    int segments = 1;
    std::size_t min_points = kDefaultMinSegmentPoints;
};

struct FitOptions {
    CommonOptions common;
    std::vector<std::string> regions;
    double delta = 0.05;
    std::size_t consecutive = 3;
    double significance = 0.05;
    double r2_min = 0.98;
    double gradient_margin = 0.25;
    std::string timeline;
    std::string format = "text";
};

struct PlotOptions {
    CommonOptions common;
    std::string region;
    std::string out_prefix;
    bool svg = false;
};

struct SynthOptions {
    std::string kind;
    std::string params;
    std::string years = "1,1000,1500,1600,1700,1820,1870,1900,1913";
    std::string entity = "synthetic";
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidParams("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

FitWindow parse_window(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw InvalidParams("window must look like START:END, got '" + std::string(text) + "'");
    return FitWindow::make(parse_double(parts[0], "window start"), parse_double(parts[1], "window end"));
}

// "1,1000,1500:1900:10" -> explicit years plus inclusive ranges with a step.
std::vector<Year> parse_years(std::string_view text) {
    std::vector<Year> out;
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(parse_double(parts[0], "year"));
        } else if (parts.size() == 3) {
            const double a = parse_double(parts[0], "year");
            const double b = parse_double(parts[1], "year");
            const double step = parse_double(parts[2], "year step");
            if (!(step > 0.0)) throw InvalidParams("year step must be positive");
            for (double y = a; y <= b; y += step) out.push_back(y);
        } else {
            throw InvalidParams("bad year grid item '" + item + "'");
        }
    }
    return out;
}

std::map<std::string, double> parse_params(std::string_view text) {
    std::map<std::string, double> out;
    if (text.empty()) return out;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidParams("parameter '" + item + "' must look like name=value");
        out[item.substr(0, eq)] = parse_double(std::string_view(item).substr(eq + 1), item.substr(0, eq));
    }
    return out;
}

struct ResolvedRegion {
    std::string label;
    RegionSpec spec;
    std::optional<FitWindow> window;
    TimelineGroup timeline = TimelineGroup::Developed;
};

// Inline regions: "sum:A+B+C" or "total:Label"; anything else is a preset key.
ResolvedRegion resolve(const std::string& text, const Dataset& ds, const std::string& presets_path,
                       std::optional<std::vector<RegionPreset>>& presets) {
    if (text.starts_with("sum:") || text.starts_with("total:")) {
        const bool sum = text.starts_with("sum:");
        const auto body = text.substr(sum ? 4 : 6);
        RegionSpec spec{text, sum ? split(body, '+') : std::vector<std::string>{body},
                        sum ? AggregationMode::SumMembers : AggregationMode::UsePrebuiltTotal};
        return {text, std::move(spec), std::nullopt, TimelineGroup::Developed};
    }
    if (!presets) presets = load_presets(presets_path.empty() ? default_presets_path() : std::filesystem::path(presets_path));
    const auto& preset = find_preset(*presets, text);
    return {preset.key, resolve_region(preset, ds), preset.window, preset.timeline};
}

FitWindow choose_window(const CommonOptions& opts, const ResolvedRegion& region) {
    if (!opts.window.empty()) return parse_window(opts.window);
    if (region.window) return *region.window;
    throw InvalidParams("region '" + region.label + "' needs --window");
}

Dataset load(const CommonOptions& opts) {
    return load_dataset(opts.data, CsvOptions{opts.header_row, opts.skip_non_year_rows});
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw FileError("cannot write '" + path + "'");
    f << content;
    if (!f) throw FileError("failed writing '" + path + "'");
}

int cmd_fit(const FitOptions& opts, std::ostream& out) {
    if (opts.common.segments != 1 && opts.common.segments != 2) throw InvalidParams("--segments must be 1 or 2");
    const auto format = parse_report_format(opts.format);
    const auto ds = load(opts.common);
    std::optional<std::vector<RegionPreset>> presets;

    std::vector<std::pair<std::string, AnalysisConfig>> jobs;
    std::vector<TimeSeries> series;
    for (const auto& text : opts.regions) {
        const auto region = resolve(text, ds, opts.common.presets, presets);
        AnalysisConfig cfg;
        cfg.region_name = region.spec.name;
        cfg.window = choose_window(opts.common, region);
        cfg.segments = opts.common.segments;
        cfg.min_points = opts.common.min_points;
        cfg.divergence = {opts.delta, opts.consecutive};
        cfg.classifier = {opts.significance, opts.r2_min};
        cfg.comparison = {opts.significance, opts.gradient_margin, 3};
        cfg.timeline = opts.timeline.empty() ? region.timeline : parse_timeline_group(opts.timeline);
        series.push_back(to_billions(aggregate(ds, region.spec)));
        jobs.emplace_back(region.label, cfg);
    }

    // Regions run concurrently; results are collected in command-line order.
    std::vector<std::future<RegionReport>> futures;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        futures.push_back(std::async(std::launch::async,
                                     [&, i] { return analyze_region(series[i], jobs[i].second); }));
    }
    std::vector<RegionReport> reports;
    std::exception_ptr failure;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            reports.push_back(futures[i].get());
        } catch (...) {
            if (!failure) {
                failure = std::current_exception();
                failed = i;
            }
        }
    }
    if (failure) {
        const auto& w = jobs[failed].second.window;
        const auto context = "region '" + jobs[failed].first + "' window [" + format_number(w.start) + ", " +
                             format_number(w.end) + "]: ";
        try {
            std::rethrow_exception(failure);
        } catch (const NotHyperbolic& e) {
            throw NotHyperbolic(context + e.what());
        } catch (const InvalidParams& e) {
            throw InvalidParams(context + e.what());
        } catch (const std::exception& e) {
            throw DataError(context + e.what());
        }
    }
    out << render_reports(reports, format);
    return kOk;
}

int cmd_synth(const SynthOptions& opts, std::ostream& out) {
    const auto kind = parse_synthetic_kind(opts.kind);
    const auto p = parse_params(opts.params);
    auto get = [&](const char* name) -> std::optional<double> {
        auto it = p.find(name);
        return it == p.end() ? std::nullopt : std::optional<double>(it->second);
    };
    for (const auto& [name, _] : p) {
        static const char* known[] = {"level", "a", "k", "a2", "k2", "breakpoint", "onset", "slowdown"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* n) { return name == n; }) ==
            std::end(known)) {
            throw InvalidParams("unknown parameter '" + name + "'");
        }
    }

    SyntheticParams sp;
    sp.years = parse_years(opts.years);
    if (auto v = get("level")) sp.level = *v;
    if (get("a") || get("k")) sp.law = HyperbolicParams(get("a").value_or(0.0), get("k").value_or(0.0));
    if (get("a2") || get("k2")) sp.second_law = HyperbolicParams(get("a2").value_or(0.0), get("k2").value_or(0.0));
    if (auto v = get("breakpoint")) sp.breakpoint = *v;
    if (auto v = get("onset")) sp.onset = *v;
    if (auto v = get("slowdown")) sp.slowdown = *v;

    const auto ts = generate_synthetic(kind, sp, opts.noise, opts.seed);
    std::vector<Observation> millions;
    for (const auto& o : ts) millions.push_back({o.year, o.value * 1000.0});
    Dataset ds;
    ds.add(opts.entity, TimeSeries(std::move(millions)));
    const auto csv = serialize_long_csv(ds);
    if (opts.out.empty() || opts.out == "-") {
        out << csv;
    } else {
        write_file(opts.out, csv);
    }
    return kOk;
}

int cmd_plot(const PlotOptions& opts) {
    if (opts.common.segments != 1 && opts.common.segments != 2) throw InvalidParams("--segments must be 1 or 2");
    const auto ds = load(opts.common);
    std::optional<std::vector<RegionPreset>> presets;
    const auto region = resolve(opts.region, ds, opts.common.presets, presets);
    const auto window = choose_window(opts.common, region);
    const auto ts = to_billions(aggregate(ds, region.spec));

    std::vector<HyperbolicFit> fits;
    if (opts.common.segments == 1) {
        fits.push_back(fit_hyperbolic(ts, window));
    } else {
        const auto seg = fit_piecewise(ts, window, opts.common.min_points);
        fits = {seg.first, seg.second};
    }
    const auto plot = build_plot_data(region.spec.name, ts, std::move(fits));
    write_file(opts.out_prefix + "_gdp.csv", gdp_csv(plot));
    write_file(opts.out_prefix + "_reciprocal.csv", reciprocal_csv(plot));
    write_file(opts.out_prefix + "_fit.csv", curve_csv(plot));
    if (opts.svg) write_file(opts.out_prefix + ".svg", render_svg(plot));
    return kOk;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--data", o.data, "Wide or long CSV in millions of 1990 GK$")->required();
    cmd->add_option("--presets", o.presets, "Region preset file (default: $HYPERTREND_PRESETS or bundled file)");
    cmd->add_option("--header-row", o.header_row, "Zero-based row holding entity names");
    cmd->add_flag("--skip-non-year-rows", o.skip_non_year_rows, "Ignore rows whose first cell is not a year");
    cmd->add_option("--window", o.window, "Fit window START:END (defaults to the preset window)");
    cmd->add_option("--segments", o.segments, "1 = single fit, 2 = breakpoint search")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--min-points", o.min_points, "Minimum observations per segment")->check(CLI::Range(3, 1000000));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolic growth analysis of long-run GDP series", "hypertrend"};
    app.require_subcommand(1);

    FitOptions fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit regions and report parameters, divergence and regime tests");
    add_common(fit_cmd, fit.common);
    fit_cmd->add_option("--region", fit.regions, "Preset key, sum:A+B+..., or total:LABEL (repeatable)")->required();
    fit_cmd->add_option("--delta", fit.delta, "Relative divergence threshold");
    fit_cmd->add_option("--consecutive", fit.consecutive, "Consecutive diverging observations")
        ->check(CLI::Range(1, 1000));
    fit_cmd->add_option("--significance", fit.significance, "Two-sided significance of slope tests");
    fit_cmd->add_option("--r2-min", fit.r2_min, "Minimum r2 for the Hyperbolic label");
    fit_cmd->add_option("--gradient-margin", fit.gradient_margin, "Relative gradient change needed for a takeoff");
    fit_cmd->add_option("--timeline", fit.timeline, "developed | less-developed (defaults to the preset's)")
        ->check(CLI::IsMember({"developed", "less-developed"}));
    fit_cmd->add_option("--format", fit.format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic series as long-format CSV");
    synth_cmd->add_option("--kind", synth.kind, "stagnation | hyperbolic | piecewise | slowdown")
        ->required()
        ->check(CLI::IsMember({"stagnation", "hyperbolic", "piecewise", "slowdown"}));
    synth_cmd->add_option("--params", synth.params, "name=value list: level, a, k, a2, k2, breakpoint, onset, slowdown");
    synth_cmd->add_option("--years", synth.years, "Year grid, e.g. 1,1000,1500:1900:10");
    synth_cmd->add_option("--noise", synth.noise, "Log-normal noise level");
    synth_cmd->add_option("--seed", synth.seed, "Random seed");
    synth_cmd->add_option("--entity", synth.entity, "Entity name written to the CSV");
    synth_cmd->add_option("--out", synth.out, "Output path ('-' for stdout)");

    PlotOptions plot;
    auto* plot_cmd = app.add_subcommand("plot", "Write plot-ready series, fitted curves and an optional SVG");
    add_common(plot_cmd, plot.common);
    plot_cmd->add_option("--region", plot.region, "Preset key, sum:A+B+..., or total:LABEL")->required();
    plot_cmd->add_option("--out-prefix", plot.out_prefix, "Prefix of the output files")->required();
    plot_cmd->add_flag("--svg", plot.svg, "Also render PREFIX.svg");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*fit_cmd) return cmd_fit(fit, out);
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*plot_cmd) return cmd_plot(plot);
    } catch (const NotHyperbolic& e) {
        err << "error: " << e.what() << "\n";
        return kNotHyperbolic;
    } catch (const InvalidParams& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsage;
}

} // namespace hypertrend::cli
