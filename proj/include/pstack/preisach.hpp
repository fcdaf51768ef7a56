#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "pstack/grid.hpp"
#include "pstack/stack_engine.hpp"

namespace pstack {

// Relay thresholds: switches up at alpha, down at beta, beta < alpha.
// Diagonal cells (alpha == beta) are excluded as degenerate.
struct ThresholdCell {
    GridValue alpha;
    GridValue beta;

    auto operator<=>(const ThresholdCell&) const = default;
};

// Nonnegative integer weights over the strict triangle {alpha > beta}.
// Integer weights keep every output exact, so equality tests need no
// tolerances.
class PreisachMeasure {
public:
    explicit PreisachMeasure(Resolution res) : res_(res) {}

    Resolution resolution() const noexcept { return res_; }
    void set_weight(ThresholdCell cell, std::uint64_t weight);
    void add_weight(ThresholdCell cell, std::uint64_t weight);
    std::uint64_t weight(ThresholdCell cell) const;
    std::uint64_t total_weight() const;
    std::size_t cell_count() const noexcept { return weights_.size(); }
    const std::map<ThresholdCell, std::uint64_t>& cells() const noexcept { return weights_; }

    friend bool operator==(const PreisachMeasure&, const PreisachMeasure&) = default;

private:
    Resolution res_;
    std::map<ThresholdCell, std::uint64_t> weights_;
};

// Bistable relay: +1 once the input reaches alpha, -1 once it reaches
// beta, holds in between. state and result are in {-1, +1}.
int relay_step(GridValue alpha, GridValue beta, int state, GridValue input);

// Full-history evaluation: every relay starts at the virtual input 0
// (all -1), the whole sequence is fed per cell, and the weighted states
// are summed. This is the slow oracle side of the sufficiency test.
std::int64_t direct_output(const PreisachMeasure& measure, std::span<const GridValue> samples);

// Stack-only evaluation: exercises the short sequence
// [0, max1, min1, ..., pending?, current] instead of the full history.
// Rate-independence makes the result equal to direct_output on any stream
// that produced the state.
std::int64_t staircase_output(const PreisachMeasure& measure, const EngineState& state);

// Test fixtures. uniform_measure puts weight 1 on every strict cell
// (guarded to steps <= 2048 to keep the cell count sane);
// random_measure draws a sparse measure deterministically from the seed.
PreisachMeasure uniform_measure(Resolution res);
PreisachMeasure random_measure(Resolution res, std::uint64_t seed);

// Text format: one "alpha,beta,weight" line per cell, '#' starts a
// comment. The resolution comes from the surrounding context.
PreisachMeasure load_measure(std::istream& in, Resolution res);
PreisachMeasure load_measure_file(const std::string& path, Resolution res);
void save_measure(std::ostream& out, const PreisachMeasure& measure);

}  // namespace pstack
