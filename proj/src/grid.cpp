#include "pstack/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace pstack {

Resolution::Resolution(std::uint32_t steps_) : steps(steps_) {
    if (steps < 2) throw std::invalid_argument("Resolution: steps must be >= 2");
}

const char* to_string(Direction d) noexcept {
    switch (d) {
        case Direction::None: return "none";
        case Direction::Rising: return "rising";
        case Direction::Falling: return "falling";
    }
    return "?";
}

const char* to_string(DecodeErrorKind kind) noexcept {
    switch (kind) {
        case DecodeErrorKind::BadMagic: return "bad magic";
        case DecodeErrorKind::BadVersion: return "bad version";
        case DecodeErrorKind::TruncatedBitstream: return "truncated bitstream";
        case DecodeErrorKind::InvariantViolation: return "invariant violation";
    }
    return "?";
}

DecodeError::DecodeError(DecodeErrorKind kind, const std::string& detail)
    : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

GridValue quantize(double x, Resolution res, RangePolicy policy) {
    if (!std::isfinite(x)) throw std::invalid_argument("quantize: non-finite input");
    if (x < 0.0 || x > 1.0) {
        if (policy == RangePolicy::Reject)
            throw ValueRangeError("quantize: value " + std::to_string(x) + " outside [0,1]");
        x = x < 0.0 ? 0.0 : 1.0;
    }
    const double scaled = x * static_cast<double>(res.steps);
    auto idx = static_cast<GridValue>(std::floor(scaled + 0.5));
    if (idx > res.steps) idx = res.steps;
    return idx;
}

Direction direction_of(GridValue prev, GridValue next) noexcept {
    if (next > prev) return Direction::Rising;
    if (next < prev) return Direction::Falling;
    return Direction::None;
}

}  // namespace pstack
