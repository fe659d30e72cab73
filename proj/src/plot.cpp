#include "hypertrend/plot.hpp"

#include "hypertrend/data_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace hypertrend {
namespace {

constexpr double kCurveHorizon = 500.0;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct Panel {
    double x0, y0, width, height;
    double tmin, tmax, vmin, vmax;

    double px(double t) const { return x0 + (t - tmin) / (tmax - tmin) * width; }
    double py(double v) const { return y0 + height - (v - vmin) / (vmax - vmin) * height; }
};

const char* kColors[] = {"#d62728", "#1f77b4"};

void draw_panel(std::string& out, const Panel& p, const std::string& id, const std::string& label,
                const PlotData& plot, const std::function<double(double)>& map_value,
                const std::function<double(const CurveSample&)>& curve_value) {
    out += "<g>\n";
    out += "<clipPath id=\"" + id + "\"><rect x=\"" + fixed(p.x0) + "\" y=\"" + fixed(p.y0) + "\" width=\"" +
           fixed(p.width) + "\" height=\"" + fixed(p.height) + "\"/></clipPath>\n";
    out += "<rect x=\"" + fixed(p.x0) + "\" y=\"" + fixed(p.y0) + "\" width=\"" + fixed(p.width) + "\" height=\"" +
           fixed(p.height) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + fixed(p.x0 + p.width / 2) + "\" y=\"" + fixed(p.y0 - 8) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + escape_xml(label) + "</text>\n";
    out += "<text x=\"" + fixed(p.x0) + "\" y=\"" + fixed(p.y0 + p.height + 16) + "\" font-size=\"11\">" +
           std::to_string(std::lround(p.tmin)) + "</text>\n";
    out += "<text x=\"" + fixed(p.x0 + p.width) + "\" y=\"" + fixed(p.y0 + p.height + 16) +
           "\" text-anchor=\"end\" font-size=\"11\">" + std::to_string(std::lround(p.tmax)) + "</text>\n";

    for (std::size_t s = 0; s < plot.fits.size(); ++s) {
        std::string pts;
        for (const auto& c : plot.curves) {
            if (c.segment != static_cast<int>(s)) continue;
            pts += fixed(p.px(c.year)) + "," + fixed(p.py(curve_value(c))) + " ";
        }
        if (!pts.empty()) pts.pop_back();
        out += "<polyline clip-path=\"url(#" + id + ")\" fill=\"none\" stroke=\"" + kColors[s % 2] +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    }
    for (const auto& o : plot.series) {
        out += "<circle cx=\"" + fixed(p.px(o.year)) + "\" cy=\"" + fixed(p.py(map_value(o.value))) +
               "\" r=\"2.5\" fill=\"#000\"/>\n";
    }
    out += "</g>\n";
}

} // namespace

PlotData build_plot_data(std::string title, const TimeSeries& ts, std::vector<HyperbolicFit> fits) {
    PlotData plot{std::move(title), ts, std::move(fits), {}};
    if (ts.empty()) return plot;
    const double horizon = ts.back().year + kCurveHorizon;
    for (std::size_t s = 0; s < plot.fits.size(); ++s) {
        const auto& params = plot.fits[s].params;
        const double start = s == 0 ? ts.front().year : plot.fits[s].window.start;
        for (double t = std::ceil(start); t <= horizon; t += 1.0) {
            const double recip = params.reciprocal(t);
            if (!(recip > kSingularityGuard)) break;
            plot.curves.push_back({static_cast<int>(s), t, 1.0 / recip, recip});
        }
    }
    return plot;
}

std::string gdp_csv(const PlotData& plot) {
    std::string out = "year,gdp_billions\n";
    for (const auto& p : plot.series) out += format_number(p.year) + "," + format_number(p.value) + "\n";
    return out;
}

std::string reciprocal_csv(const PlotData& plot) {
    std::string out = "year,reciprocal\n";
    for (const auto& p : plot.series) out += format_number(p.year) + "," + format_number(1.0 / p.value) + "\n";
    return out;
}

std::string curve_csv(const PlotData& plot) {
    std::string out = "segment,year,gdp_billions,reciprocal\n";
    for (const auto& c : plot.curves) {
        out += std::to_string(c.segment) + "," + format_number(c.year) + "," + format_number(c.gdp) + "," +
               format_number(c.reciprocal) + "\n";
    }
    return out;
}

std::string render_svg(const PlotData& plot) {
    constexpr double width = 960;
    constexpr double height = 420;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" +
                      fixed(height) + "\" viewBox=\"0 0 960 420\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    out += "<text x=\"480\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape_xml(plot.title) + "</text>\n";
    if (plot.series.empty()) return out + "</svg>\n";

    const double tmin = plot.series.front().year;
    const double tmax = plot.series.back().year;
    double vmin = plot.series.front().value;
    double vmax = vmin;
    for (const auto& p : plot.series) {
        vmin = std::min(vmin, p.value);
        vmax = std::max(vmax, p.value);
    }
    const double span_t = tmax > tmin ? tmax - tmin : 1.0;

    // Left: log10 GDP with a little headroom. Right: reciprocal from 0.
    const double lmin = std::log10(vmin);
    const double lmax = std::log10(vmax) > lmin ? std::log10(vmax) : lmin + 1.0;
    const Panel left{60, 50, 390, 320, tmin, tmin + span_t, lmin - 0.05 * (lmax - lmin), lmax + 0.05 * (lmax - lmin)};
    const double rmax = 1.0 / vmin;
    const Panel right{530, 50, 390, 320, tmin, tmin + span_t, 0.0, rmax * 1.05};

    draw_panel(out, left, "clip-gdp", "GDP (billions, log scale)", plot,
               [](double v) { return std::log10(v); }, [](const CurveSample& c) { return std::log10(c.gdp); });
    draw_panel(out, right, "clip-recip", "1/GDP", plot, [](double v) { return 1.0 / v; },
               [](const CurveSample& c) { return c.reciprocal; });
    return out + "</svg>\n";
}

} // namespace hypertrend
