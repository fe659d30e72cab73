#include "hypertrend/synthetic.hpp"

#include "hypertrend/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace hypertrend {
namespace {

const HyperbolicParams& require_law(const std::optional<HyperbolicParams>& law, std::string_view what) {
    if (!law) throw InvalidParams(std::string(what) + " requires hyperbolic parameters");
    return *law;
}

double checked_reciprocal(double recip, Year t) {
    if (!(recip > kSingularityGuard)) {
        throw InvalidParams("year " + std::to_string(t) + " lies at or past the singularity of the requested law");
    }
    return recip;
}

} // namespace

TimeSeries generate_synthetic(SyntheticKind kind, const SyntheticParams& params, double noise_level,
                              std::uint64_t seed) {
    if (!std::isfinite(noise_level) || noise_level < 0.0) throw InvalidParams("noise level must be >= 0");
    if (params.years.empty()) throw InvalidParams("year grid is empty");
    for (std::size_t i = 0; i < params.years.size(); ++i) {
        if (!std::isfinite(params.years[i]) || (i > 0 && !(params.years[i - 1] < params.years[i]))) {
            throw InvalidParams("year grid must be finite and strictly increasing");
        }
    }

    std::vector<double> clean;
    clean.reserve(params.years.size());
    switch (kind) {
    case SyntheticKind::Stagnation:
        if (!std::isfinite(params.level) || params.level <= 0.0) throw InvalidParams("stagnation level must be > 0");
        clean.assign(params.years.size(), params.level);
        break;
    case SyntheticKind::Hyperbolic: {
        const auto& law = require_law(params.law, "Hyperbolic");
        for (Year t : params.years) clean.push_back(1.0 / checked_reciprocal(law.reciprocal(t), t));
        break;
    }
    case SyntheticKind::PiecewiseHyperbolic: {
        const auto& early = require_law(params.law, "PiecewiseHyperbolic");
        const auto& late = require_law(params.second_law, "PiecewiseHyperbolic");
        for (Year t : params.years) {
            const auto& law = t < params.breakpoint ? early : late;
            clean.push_back(1.0 / checked_reciprocal(law.reciprocal(t), t));
        }
        break;
    }
    case SyntheticKind::HyperbolicWithSlowdown: {
        const auto& law = require_law(params.law, "HyperbolicWithSlowdown");
        if (!(params.slowdown >= 0.0 && params.slowdown < 1.0)) throw InvalidParams("slowdown must lie in [0, 1)");
        const double at_onset = law.reciprocal(params.onset);
        for (Year t : params.years) {
            const double recip =
                t <= params.onset ? law.reciprocal(t) : at_onset - params.slowdown * law.k() * (t - params.onset);
            clean.push_back(1.0 / checked_reciprocal(recip, t));
        }
        break;
    }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Observation> points;
    points.reserve(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) {
        double value = clean[i];
        if (noise_level > 0.0) value *= std::exp(noise_level * normal(rng));
        points.push_back({params.years[i], value});
    }
    return TimeSeries(std::move(points));
}

std::string_view to_string(SyntheticKind kind) noexcept {
    switch (kind) {
    case SyntheticKind::Stagnation: return "stagnation";
    case SyntheticKind::Hyperbolic: return "hyperbolic";
    case SyntheticKind::PiecewiseHyperbolic: return "piecewise";
    case SyntheticKind::HyperbolicWithSlowdown: return "slowdown";
    }
    return "unknown";
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
    for (auto kind : {SyntheticKind::Stagnation, SyntheticKind::Hyperbolic, SyntheticKind::PiecewiseHyperbolic,
                      SyntheticKind::HyperbolicWithSlowdown}) {
        if (to_string(kind) == name) return kind;
    }
    throw InvalidParams("unknown synthetic kind '" + std::string(name) + "'");
}

} // namespace hypertrend
