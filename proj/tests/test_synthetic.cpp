#include "hypertrend/errors.hpp"
#include "hypertrend/line_fit.hpp"
#include "hypertrend/synthetic.hpp"

#include <doctest.h>

using namespace hypertrend;

TEST_CASE("stagnation without noise is a constant series") {
    SyntheticParams sp;
    sp.years = {1500, 1600, 1700, 1820};
    sp.level = 12.5;
    const auto ts = generate_synthetic(SyntheticKind::Stagnation, sp, 0.0, 42);
    REQUIRE(ts.size() == 4);
    for (const auto& p : ts) CHECK(p.value == 12.5);
}

TEST_CASE("noiseless hyperbola has exactly affine reciprocals") {
    SyntheticParams sp;
    for (Year t = 1500; t <= 1900; t += 10) sp.years.push_back(t);
    sp.law = HyperbolicParams(1.147e-1, 5.961e-5);
    const auto ts = generate_synthetic(SyntheticKind::Hyperbolic, sp, 0.0, 0);
    std::vector<double> x, y;
    for (const auto& p : ts) {
        x.push_back(p.year);
        y.push_back(1.0 / p.value);
    }
    const auto line = fit_line(x, y);
    CHECK(line.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(line.slope == doctest::Approx(-5.961e-5).epsilon(1e-10));
    CHECK(line.intercept == doctest::Approx(1.147e-1).epsilon(1e-10));
}

TEST_CASE("same seed gives the same series; different seeds differ") {
    SyntheticParams sp;
    for (Year t = 1500; t <= 1800; t += 10) sp.years.push_back(t);
    sp.level = 30.0;
    const auto a = generate_synthetic(SyntheticKind::Stagnation, sp, 0.2, 9);
    const auto b = generate_synthetic(SyntheticKind::Stagnation, sp, 0.2, 9);
    const auto c = generate_synthetic(SyntheticKind::Stagnation, sp, 0.2, 10);
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("piecewise and slowdown kinds follow their laws") {
    SyntheticParams sp;
    sp.years = {1, 1000, 1500, 1820, 1870, 1900};
    sp.law = HyperbolicParams(0.5, 1e-4);
    sp.second_law = HyperbolicParams(0.2, 1e-4);
    sp.breakpoint = 1820;
    const auto pw = generate_synthetic(SyntheticKind::PiecewiseHyperbolic, sp, 0.0, 0);
    CHECK(1.0 / pw[2].value == doctest::Approx(0.5 - 1e-4 * 1500));
    CHECK(1.0 / pw[3].value == doctest::Approx(0.2 - 1e-4 * 1820));

    sp.onset = 1500;
    sp.slowdown = 0.5;
    const auto slow = generate_synthetic(SyntheticKind::HyperbolicWithSlowdown, sp, 0.0, 0);
    CHECK(1.0 / slow[2].value == doctest::Approx(0.35));
    CHECK(1.0 / slow[3].value == doctest::Approx(0.35 - 0.5e-4 * 320));
    // Slower continuation: always below the original law.
    CHECK(slow[4].value < 1.0 / (0.5 - 1e-4 * 1870));
}

TEST_CASE("invalid synthetic parameters") {
    SyntheticParams sp;
    sp.years = {1500, 1600};
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::Hyperbolic, sp, 0.0, 0), InvalidParams);
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::Stagnation, sp, -0.1, 0), InvalidParams);
    sp.level = 0.0;
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::Stagnation, sp, 0.0, 0), InvalidParams);

    sp.law = HyperbolicParams(1.147e-1, 5.961e-5);
    sp.years = {1900, 1930};
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::Hyperbolic, sp, 0.0, 0), InvalidParams);
    sp.years = {1600, 1500};
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::Hyperbolic, sp, 0.0, 0), InvalidParams);
    sp.years = {1500, 1600};
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::PiecewiseHyperbolic, sp, 0.0, 0), InvalidParams);
    sp.slowdown = 1.0;
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::HyperbolicWithSlowdown, sp, 0.0, 0), InvalidParams);

    CHECK(parse_synthetic_kind("slowdown") == SyntheticKind::HyperbolicWithSlowdown);
    CHECK_THROWS_AS(parse_synthetic_kind("logistic"), InvalidParams);
}
