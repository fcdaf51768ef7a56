#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstack/grid.hpp"

namespace pstack {

// One staircase corner: a dominant maximum and the surviving minimum that
// followed it.
struct VertexPair {
    GridValue max;
    GridValue min;

    friend bool operator==(const VertexPair&, const VertexPair&) = default;
};

// Bottom (oldest, outermost) first. A valid stack has strictly decreasing
// maxima, strictly increasing minima, and max > min in every pair.
using ExtremumStack = std::vector<VertexPair>;

enum class ExtremumKind : std::uint8_t { Maximum, Minimum };

struct ConfirmedExtremum {
    GridValue value;
    ExtremumKind kind;

    friend bool operator==(const ConfirmedExtremum&, const ConfirmedExtremum&) = default;
};

// Instrumentation emitted by step(). A vertex is pushed only when a
// minimum is confirmed, so pushed implies confirmed.
struct StepEvent {
    std::uint32_t pops = 0;
    std::optional<VertexPair> pushed;
    std::optional<ConfirmedExtremum> confirmed;
};

// Streaming wiping-rule state. The virtual prehistory 0 -> u0 fixes the
// initial direction, so the first confirmed extremum is always a maximum
// and every confirmed minimum finds either popped vertices or the pending
// maximum to pair with. A confirmed-but-unpaired maximum lives in
// pending_max, never in the stack; it exists only while descending from it.
//
// samples_seen is instrumentation: it is not serialized and does not
// participate in equality.
struct EngineState {
    Resolution resolution;
    ExtremumStack stack;
    std::optional<GridValue> pending_max;
    GridValue current = 0;  // last observed sample
    Direction direction = Direction::None;
    std::uint64_t samples_seen = 0;

    friend bool operator==(const EngineState& a, const EngineState& b) {
        return a.resolution == b.resolution && a.stack == b.stack &&
               a.pending_max == b.pending_max && a.current == b.current &&
               a.direction == b.direction;
    }
};

EngineState initial_state(Resolution res, GridValue u0);

// Feed one sample. Flat input only advances samples_seen; a direction
// reversal confirms the previous sample as an extremum and applies the
// wiping rule (pops on equality: re-reaching an old extremum erases it).
StepEvent step(EngineState& state, GridValue u);

// init + steps over a nonempty sequence.
EngineState run(Resolution res, std::span<const GridValue> samples);

// Completed vertices only; the pending maximum and the current value are
// deliberately not part of the canonical stack.
inline const ExtremumStack& canonical_stack(const EngineState& state) noexcept {
    return state.stack;
}

struct OracleResult {
    ExtremumStack stack;
    std::optional<GridValue> pending;
    Direction direction = Direction::None;

    friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

// Brute-force reference, independent of step()/EngineState: recursive
// dominant-extrema computation over the confirmed turning points of the
// flat-collapsed, zero-prefixed sequence. A dominant maximum is taken at
// its LAST attainment so that re-reaching an old extremum wipes it, the
// same tie rule the engine applies; a dominant maximum with no confirmed
// minimum after it is the pending value. Direction comes from the last two
// distinct samples of the zero-prefixed sequence.
OracleResult oracle_stack(Resolution res, std::span<const GridValue> samples);

inline bool agrees(const EngineState& s, const OracleResult& o) {
    return s.stack == o.stack && s.pending_max == o.pending && s.direction == o.direction;
}

struct PopProfile {
    std::vector<std::uint32_t> pops_per_step;  // entry per sample after the first
    std::uint64_t total_pushes = 0;
    std::uint64_t total_pops = 0;
    std::uint32_t max_single_step_pops = 0;
};

PopProfile pop_count_profile(Resolution res, std::span<const GridValue> samples);

// nullopt when the invariants hold, else a description of the violation.
std::optional<std::string> stack_violation(std::span<const VertexPair> stack, Resolution res);
// Full reachable-state check: stack invariants plus the pending/direction/
// current consistency rules and (when samples_seen > 0) the depth bound
// k <= floor(n/2) + 1.
std::optional<std::string> state_violation(const EngineState& state);

std::string to_string(const EngineState& state);
std::string to_string(const OracleResult& oracle);

}  // namespace pstack
