#include "hypertrend/core_model.hpp"
#include "hypertrend/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hypertrend;

TEST_CASE("eval_hyperbolic substitutes into the growth law") {
    // Western Europe (12 countries) parameters at 1500: 1 / (0.1147 - 0.089415).
    const HyperbolicParams we12(1.147e-1, 5.961e-5);
    const double expected = 1.0 / (0.1147 - 0.089415);
    CHECK(eval_hyperbolic(we12, 1500.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(eval_hyperbolic(we12, 1500.0) == doctest::Approx(39.55).epsilon(1e-3));

    CHECK(eval_hyperbolic(HyperbolicParams(4.0, 1e-3), 0.0) == 0.25);
}

TEST_CASE("eval_hyperbolic refuses to evaluate at or past the singularity") {
    const HyperbolicParams we12(1.147e-1, 5.961e-5);
    CHECK_THROWS_AS(eval_hyperbolic(we12, 1924.2), NearSingularity);
    CHECK_THROWS_AS(eval_hyperbolic(we12, 2000.0), NearSingularity);
    CHECK_THROWS_AS(eval_hyperbolic(HyperbolicParams(1.0, 0.5), 2.0), NearSingularity);
    CHECK_NOTHROW(eval_hyperbolic(we12, 1924.0));
}

TEST_CASE("HyperbolicParams rejects non-positive or non-finite values") {
    CHECK_THROWS_AS(HyperbolicParams(0.0, 1.0), InvalidParams);
    CHECK_THROWS_AS(HyperbolicParams(1.0, -1e-5), InvalidParams);
    CHECK_THROWS_AS(HyperbolicParams(NAN, 1.0), InvalidParams);
    CHECK_THROWS_AS(HyperbolicParams(1.0, INFINITY), InvalidParams);
}

TEST_CASE("singularity is a/k") {
    CHECK(singularity(HyperbolicParams(1.0, 0.5)) == 2.0);
    CHECK(singularity(HyperbolicParams(9.859e-2, 5.112e-5)) == doctest::Approx(1928.6).epsilon(1e-4));
    CHECK(singularity_year(HyperbolicParams(9.859e-2, 5.112e-5)) == 1929);
    CHECK(singularity(HyperbolicParams(7.749e-1, 4.048e-4)) == doctest::Approx(1914.3).epsilon(1e-4));
    CHECK(singularity_year(HyperbolicParams(7.749e-1, 4.048e-4)) == 1914);
    // Half-way rounds away from zero.
    CHECK(singularity_year(HyperbolicParams(1901.0, 2.0)) == 951);
}

TEST_CASE("reciprocal_series inverts pointwise and is an involution") {
    const TimeSeries ts({{1, 2.0}, {2, 4.0}});
    const auto r = reciprocal_series(ts);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Observation{1, 0.5});
    CHECK(r[1] == Observation{2, 0.25});
    CHECK(reciprocal_series(r) == ts);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(1e-3, 1e6);
    std::vector<Observation> pts;
    for (int y = 1; y <= 200; ++y) pts.push_back({static_cast<double>(y), value(rng)});
    const TimeSeries big(pts);
    const auto back = reciprocal_series(reciprocal_series(big));
    REQUIRE(back.size() == big.size());
    for (std::size_t i = 0; i < big.size(); ++i) {
        CHECK(back[i].year == big[i].year);
        CHECK(back[i].value == doctest::Approx(big[i].value).epsilon(1e-15));
    }
}

TEST_CASE("TimeSeries enforces ordering and positivity") {
    CHECK_THROWS_AS(TimeSeries({{2, 1.0}, {1, 1.0}}), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries({{1, 1.0}, {1, 2.0}}), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries({{1, 0.0}}), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries({{1, -3.0}}), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries({{NAN, 1.0}}), InvalidSeries);

    const TimeSeries ts({{1, 1.0}, {1000, 2.0}, {1500, 3.0}});
    CHECK(ts.find(1000) != nullptr);
    CHECK(ts.find(999) == nullptr);
    CHECK(ts.slice(1000, 1500).size() == 2);
}

TEST_CASE("property: reciprocal of the law is the line, and the law increases up to the guard") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> log_a(-3, 1);
    std::uniform_real_distribution<double> ts_dist(500, 3000);
    for (int trial = 0; trial < 500; ++trial) {
        const double a = std::pow(10.0, log_a(rng));
        const double ts = ts_dist(rng);
        const HyperbolicParams p(a, a / ts);
        double prev = 0.0;
        const double end = singularity(p);
        for (double t = 0.0; t < end; t += end / 97.0) {
            if (!(p.reciprocal(t) > kSingularityGuard)) break;
            const double s = eval_hyperbolic(p, t);
            CHECK(std::abs(1.0 / s - p.reciprocal(t)) <= 1e-12 * p.reciprocal(t));
            CHECK(s > prev);
            CHECK(t < singularity(p));
            prev = s;
        }
    }
}
