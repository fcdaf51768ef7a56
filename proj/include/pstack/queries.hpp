#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pstack/grid.hpp"
#include "pstack/stack_engine.hpp"

namespace pstack {

// Stack-membership query: "is (max, min) a completed vertex right now?"
// Distinct from the relay with the same thresholds, which can be active
// while the pair is not a vertex.
struct IndicatorQuery {
    GridValue max;
    GridValue min;

    friend bool operator==(const IndicatorQuery&, const IndicatorQuery&) = default;
};

// One bit per enumerated pair, in enumerate_family order.
struct IndicatorAnswerTable {
    Resolution resolution;
    std::vector<std::uint8_t> bits;

    friend bool operator==(const IndicatorAnswerTable&, const IndicatorAnswerTable&) = default;
};

// 1 iff (max, min) is a completed vertex of the canonical stack. Diagonal
// queries (max == min) always answer 0; the pending maximum never counts.
int indicator_eval(const EngineState& state, IndicatorQuery query);

// All pairs max >= min over the grid, max descending then min ascending.
// Includes the diagonal so the family is closed over the full index set.
std::vector<IndicatorQuery> enumerate_family(Resolution res);

// (steps + 1)(steps + 2) / 2
std::size_t family_size(Resolution res) noexcept;

IndicatorAnswerTable answer_all(const EngineState& state);

// Inverse of answer_all: collects the positive pairs and checks they form
// a valid stack. Throws InconsistentAnswersError when the answer source
// was not a stack.
ExtremumStack reconstruct(const IndicatorAnswerTable& answers);

// A dilation re-times a stream without touching its extrema order: flat
// repeats plus strictly intermediate values inside monotone runs. Every
// rate-independent answer is invariant under it.
struct DilationPlan {
    std::vector<std::uint32_t> repeats;               // extra copies per sample
    std::vector<std::vector<GridValue>> insertions;   // per gap, sorted along the run
};

DilationPlan random_dilation_plan(std::span<const GridValue> samples, std::uint64_t seed);
std::vector<GridValue> apply_dilation(std::span<const GridValue> samples,
                                      const DilationPlan& plan);
std::vector<GridValue> dilate(std::span<const GridValue> samples, std::uint64_t seed);

}  // namespace pstack
