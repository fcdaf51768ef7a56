#pragma once

#include <bit>
#include <cstdint>

#include "pstack/errors.hpp"

namespace pstack {

// Index on the grid; valid values are 0..steps for the governing Resolution.
using GridValue = std::uint32_t;

// Uniform grid over [0,1] with `steps` subdivisions: points i/steps for
// i = 0..steps. All downstream arithmetic happens on indices; real values
// appear only at ingestion and reporting.
struct Resolution {
    std::uint32_t steps;

    explicit Resolution(std::uint32_t steps_);

    std::uint32_t point_count() const noexcept { return steps + 1; }
    bool contains(GridValue v) const noexcept { return v <= steps; }
    // Bits to store one sample verbatim: ceil(log2(steps + 1)).
    std::uint32_t bits_per_sample() const noexcept { return std::bit_width(steps); }

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

enum class Direction : std::uint8_t { None = 0, Rising = 1, Falling = 2 };

const char* to_string(Direction d) noexcept;

enum class RangePolicy { Reject, Clamp };

// Round-half-up onto the grid. x is expected in [0,1]; out-of-range x is
// clamped or rejected per policy, non-finite x always throws.
GridValue quantize(double x, Resolution res, RangePolicy policy = RangePolicy::Reject);

Direction direction_of(GridValue prev, GridValue next) noexcept;

}  // namespace pstack
