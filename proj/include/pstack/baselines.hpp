#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstack/grid.hpp"
#include "pstack/stack_engine.hpp"

namespace pstack {

// Exact nonnegative rational in grid units; den > 0. Comparisons and
// rounding cross-multiply in 128-bit so no tolerance ever enters the
// baseline reconstructions.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational from_decimal(const std::string& text);  // "1.25", "3"
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator<(const Rational& a, const Rational& b);
};

// Round-half-up of a nonnegative rational to the nearest integer.
std::int64_t round_half_up(Rational r);

// Piecewise aggregate approximation: block means over windows of w samples.
struct PaaModel {
    std::uint32_t window = 1;
    std::size_t original_length = 0;
    std::vector<std::uint64_t> segment_sums;  // mean = sum / samples-in-segment

    std::size_t segment_count() const noexcept { return segment_sums.size(); }
};

PaaModel paa_compress(std::span<const GridValue> samples, std::uint32_t window);
std::vector<Rational> paa_reconstruct(const PaaModel& model);

// Swinging-door trending: doors hinge at the last stored point offset
// +-tolerance; a sample is emitted as a pivot when the doors close.
// Reconstruction interpolates linearly between pivots, so retained samples
// come back exactly.
struct SwingingDoorModel {
    Rational tolerance;
    std::size_t original_length = 0;
    std::vector<std::pair<std::size_t, GridValue>> pivots;  // (index, value)
};

SwingingDoorModel sdt_compress(std::span<const GridValue> samples, Rational tolerance);
std::vector<Rational> sdt_reconstruct(const SwingingDoorModel& model);

// Requantize a rational reconstruction (grid units) back onto the grid,
// round-half-up, clamped to [0, steps].
std::vector<GridValue> requantize(std::span<const Rational> values, Resolution res);

// Compares the hysteresis state (oracle stack, pending, direction) of the
// original stream against a reconstruction. The witness pinpoints the
// first disagreement.
struct PreservationResult {
    bool preserved = false;
    std::string witness;  // empty when preserved

    explicit operator bool() const noexcept { return preserved; }
};

PreservationResult r_preservation_check(Resolution res,
                                        std::span<const GridValue> original,
                                        std::span<const GridValue> reconstructed);

// Storage accounting used by the bench tables: PAA stores one segment sum
// of up to window*steps per segment plus a fixed header; SDT stores an
// index plus a grid value per pivot plus a fixed header.
std::uint64_t paa_model_bits(const PaaModel& model, Resolution res);
std::uint64_t sdt_model_bits(const SwingingDoorModel& model, Resolution res);

}  // namespace pstack
