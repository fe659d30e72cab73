#include "hypertrend/cli.hpp"
#include "hypertrend/errors.hpp"
#include "hypertrend/line_fit.hpp"
#include "hypertrend/plot.hpp"
#include "hypertrend/report.hpp"
#include "hypertrend/synthetic.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace hypertrend;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("hypertrend_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

const char* kWe12Params = "a=0.1147,k=5.961e-5";

fs::path synth_file(const fs::path& dir, const std::string& kind, const std::string& params, double noise,
                    const std::string& years = "1500:1900:10") {
    const auto path = dir / (kind + ".csv");
    const auto r = run_cli({"synth", "--kind", kind, "--params", params, "--years", years, "--noise",
                            std::to_string(noise), "--seed", "7", "--out", path.string()});
    REQUIRE(r.code == cli::kOk);
    return path;
}

} // namespace

TEST_CASE("report JSON round trip") {
    SyntheticParams sp;
    sp.years.push_back(1);
    sp.years.push_back(1000);
    for (Year t = 1500; t <= 1920; t += 10) sp.years.push_back(t);
    sp.law = HyperbolicParams(1.147e-1, 5.961e-5);
    sp.onset = 1880;
    sp.slowdown = 0.4;
    const auto ts = generate_synthetic(SyntheticKind::HyperbolicWithSlowdown, sp, 0.01, 3);

    for (int segments : {1, 2}) {
        AnalysisConfig cfg;
        cfg.region_name = "synthetic";
        cfg.window = FitWindow::make(1500, 1880);
        cfg.segments = segments;
        const auto report = analyze_region(ts, cfg);
        const auto j = report_to_json(report);
        const auto back = report_from_json(j);
        CHECK(report_to_json(back) == j);
        CHECK(back.fit == report.fit);
        CHECK(back.segmented == report.segmented);
        CHECK(back.divergence == report.divergence);
        CHECK(back.classification == report.classification);
        CHECK(back.deviations == report.deviations);
        // Text dump survives a parse as well.
        CHECK(report_to_json(report_from_json(nlohmann::json::parse(j.dump()))) == j);
    }
    CHECK_THROWS_AS(report_from_json(nlohmann::json::object()), InvalidParams);
}

TEST_CASE("analyze_region reports deviations at AD 1 and AD 1000") {
    SyntheticParams sp;
    sp.years = {1, 1000, 1500, 1600, 1700, 1820, 1870, 1900};
    sp.law = HyperbolicParams(1.147e-1, 5.961e-5);
    auto ts = generate_synthetic(SyntheticKind::Hyperbolic, sp, 0.0, 0);
    auto pts = ts.points();
    pts[0].value *= 1.27;
    pts[1].value *= 0.46;
    ts = TimeSeries(pts);
    AnalysisConfig cfg;
    cfg.window = FitWindow::make(1500, 1900);
    const auto report = analyze_region(ts, cfg);
    REQUIRE(report.deviations.size() == 2);
    CHECK(report.deviations[0].year == 1);
    CHECK(report.deviations[0].percent == doctest::Approx(27.0));
    CHECK(report.deviations[1].percent == doctest::Approx(-54.0));
    CHECK(report.singularity_year == 1924);
}

TEST_CASE("CLI: synthetic WE-12 series fits back to its parameters") {
    const auto dir = scratch_dir("roundtrip");
    const auto data = synth_file(dir, "hyperbolic", kWe12Params, 0.0);
    const auto r = run_cli({"fit", "--data", data.string(), "--region", "total:synthetic", "--window", "1500:1900",
                            "--format", "json"});
    REQUIRE(r.code == cli::kOk);
    const auto j = nlohmann::json::parse(r.out);
    const auto& fit = j["reports"][0]["fit"];
    CHECK(fit["a"].get<double>() == doctest::Approx(0.1147).epsilon(1e-9));
    CHECK(fit["k"].get<double>() == doctest::Approx(5.961e-5).epsilon(1e-9));
    CHECK(j["reports"][0]["singularity_year"].get<long>() == 1924);

    const auto text = run_cli({"fit", "--data", data.string(), "--region", "total:synthetic", "--window", "1500:1900"});
    CHECK(text.code == cli::kOk);
    CHECK(text.out.find("1924") != std::string::npos);
    const auto csv = run_cli({"fit", "--data", data.string(), "--region", "total:synthetic", "--window", "1500:1900",
                              "--format", "csv"});
    CHECK(csv.out.rfind("region,field,value\n", 0) == 0);
}

TEST_CASE("CLI: exit codes") {
    const auto dir = scratch_dir("exit");
    const auto missing = (dir / "absent.csv").string();
    const auto r = run_cli({"fit", "--data", missing, "--region", "we12"});
    CHECK(r.code == cli::kDataError);
    CHECK(r.err.find(missing) != std::string::npos);

    const auto flat = synth_file(dir, "stagnation", "level=10", 0.0);
    write_text(dir / "growing.csv", "entity,year,gdp_millions\nX,1500,3000\nX,1600,2000\nX,1700,1000\nX,1800,500\n");
    const auto shrinking = run_cli({"fit", "--data", (dir / "growing.csv").string(), "--region", "total:X",
                                    "--window", "1500:1800"});
    CHECK(shrinking.code == cli::kNotHyperbolic);
    CHECK(shrinking.err.find("1500") != std::string::npos);

    CHECK(run_cli({"fit", "--data", flat.string(), "--region", "total:synthetic"}).code == cli::kUsage);
    CHECK(run_cli({"fit", "--data", flat.string(), "--region", "total:nobody", "--window", "1500:1900"}).code ==
          cli::kDataError);
    CHECK(run_cli({"fit", "--data", flat.string(), "--region", "total:synthetic", "--window", "1900:1500"}).code ==
          cli::kUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
    CHECK(run_cli({"synth", "--kind", "hyperbolic", "--params", "a=1,k=2,zeta=3"}).code == cli::kUsage);
    CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("CLI binary exit status matches the in-process result") {
    const std::string cmd = std::string(HYPERTREND_CLI_PATH) + " fit --data /nonexistent.csv --region we12 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == cli::kDataError);
}

TEST_CASE("CLI: byte-identical reruns of synth, fit and plot") {
    const auto dir = scratch_dir("determinism");
    const auto data = synth_file(dir, "slowdown", "a=0.1147,k=5.961e-5,onset=1870,slowdown=0.4", 0.05);
    const std::string synth_again = (dir / "again.csv").string();
    REQUIRE(run_cli({"synth", "--kind", "slowdown", "--params", "a=0.1147,k=5.961e-5,onset=1870,slowdown=0.4",
                     "--years", "1500:1900:10", "--noise", std::to_string(0.05), "--seed", "7", "--out", synth_again})
                .code == cli::kOk);
    CHECK(read_file(data) == read_file(synth_again));

    for (const char* format : {"text", "csv", "json"}) {
        const std::vector<std::string> args{"fit",      "--data",   data.string(), "--region", "total:synthetic",
                                            "--region", "sum:synthetic", "--window", "1500:1870", "--format", format};
        const auto first = run_cli(args);
        const auto second = run_cli(args);
        REQUIRE(first.code == cli::kOk);
        CHECK(first.out == second.out);
    }

    for (int run = 0; run < 2; ++run) {
        const auto prefix = (dir / ("plot" + std::to_string(run))).string();
        REQUIRE(run_cli({"plot", "--data", data.string(), "--region", "total:synthetic", "--window", "1500:1870",
                         "--segments", "2", "--out-prefix", prefix, "--svg"})
                    .code == cli::kOk);
    }
    for (const char* suffix : {"_gdp.csv", "_reciprocal.csv", "_fit.csv", ".svg"}) {
        const auto a = read_file(dir / (std::string("plot0") + suffix));
        CHECK(!a.empty());
        CHECK(a == read_file(dir / (std::string("plot1") + suffix)));
    }
}

TEST_CASE("plot curves stop before the singularity guard") {
    SyntheticParams sp;
    for (Year t = 1500; t <= 1920; t += 10) sp.years.push_back(t);
    sp.law = HyperbolicParams(1.147e-1, 5.961e-5);
    const auto ts = generate_synthetic(SyntheticKind::Hyperbolic, sp, 0.0, 0);
    const auto fit = fit_hyperbolic(ts, FitWindow::make(1500, 1900));
    const auto plot = build_plot_data("we12", ts, {fit});
    REQUIRE(!plot.curves.empty());
    CHECK(plot.curves.front().year == 1500);
    CHECK(plot.curves.back().year == 1924);
    for (const auto& c : plot.curves) {
        CHECK(fit.params.reciprocal(c.year) > kSingularityGuard);
        CHECK(std::isfinite(c.gdp));
    }
    CHECK(gdp_csv(plot).rfind("year,gdp_billions\n", 0) == 0);
    CHECK(curve_csv(plot).rfind("segment,year,gdp_billions,reciprocal\n", 0) == 0);
    CHECK(render_svg(plot).find("<svg") != std::string::npos);
}

TEST_CASE("plot reciprocal file of a hyperbolic series is close to a line") {
    const auto dir = scratch_dir("plotline");
    const auto data = synth_file(dir, "hyperbolic", kWe12Params, 0.02);
    const auto prefix = (dir / "we12").string();
    REQUIRE(run_cli({"plot", "--data", data.string(), "--region", "total:synthetic", "--window", "1500:1900",
                     "--out-prefix", prefix})
                .code == cli::kOk);
    std::istringstream in(read_file(prefix + "_reciprocal.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "year,reciprocal");
    std::vector<double> x, y;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        x.push_back(std::stod(line.substr(0, comma)));
        y.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(x.size() == 41);
    const auto line_fit = fit_line(x, y);
    CHECK(line_fit.r2 >= 0.98);
}

TEST_CASE("HYPERTREND_PRESETS overrides the bundled presets") {
    const auto dir = scratch_dir("presets");
    const auto data = synth_file(dir, "hyperbolic", kWe12Params, 0.0);
    write_text(dir / "presets.json", R"({"presets": [{"key": "mine", "name": "Mine", "mode": "total",
        "members": ["synthetic"], "window": [1500, 1900], "timeline": "developed"}]})");
    ::setenv("HYPERTREND_PRESETS", (dir / "presets.json").c_str(), 1);
    const auto with_override = run_cli({"fit", "--data", data.string(), "--region", "mine"});
    ::unsetenv("HYPERTREND_PRESETS");
    CHECK(with_override.code == cli::kOk);
    CHECK(run_cli({"fit", "--data", data.string(), "--region", "mine"}).code == cli::kDataError);
    const auto explicit_file =
        run_cli({"fit", "--data", data.string(), "--presets", (dir / "presets.json").string(), "--region", "mine"});
    CHECK(explicit_file.code == cli::kOk);
    CHECK(explicit_file.out == with_override.out);
}
