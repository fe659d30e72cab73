#pragma once

#include "hypertrend/core_model.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hypertrend {

enum class SyntheticKind { Stagnation, Hyperbolic, PiecewiseHyperbolic, HyperbolicWithSlowdown };

/// Inputs for generate_synthetic. Only the fields relevant to the kind are read.
struct SyntheticParams {
    std::vector<Year> years;

    /// Stagnation: horizontal level.
    double level = 1.0;

    /// Hyperbolic, HyperbolicWithSlowdown, and the early law of PiecewiseHyperbolic.
    std::optional<HyperbolicParams> law;

    /// PiecewiseHyperbolic: law used for years >= breakpoint.
    std::optional<HyperbolicParams> second_law;
    Year breakpoint = 0.0;

    /// HyperbolicWithSlowdown: after `onset` the reciprocal keeps falling with
    /// gradient -slowdown * k, slowdown in [0, 1).
    Year onset = 0.0;
    double slowdown = 0.5;
};

/// Deterministic for a fixed seed. Noise is multiplicative log-normal,
/// value * exp(noise_level * z) with z ~ N(0, 1) drawn in year order.
/// Throws InvalidParams when the parameters do not fit the kind or when any
/// noiseless value would sit at or past the singularity guard.
TimeSeries generate_synthetic(SyntheticKind kind, const SyntheticParams& params, double noise_level,
                              std::uint64_t seed);

std::string_view to_string(SyntheticKind kind) noexcept;
SyntheticKind parse_synthetic_kind(std::string_view name);

} // namespace hypertrend
