#include "pstack/queries.hpp"

#include <algorithm>
#include <stdexcept>

#include "pstack/rng.hpp"

namespace pstack {

int indicator_eval(const EngineState& state, IndicatorQuery query) {
    if (query.max < query.min)
        throw std::invalid_argument("indicator_eval: max below min");
    if (!state.resolution.contains(query.max))
        throw GridMismatchError("indicator_eval: query off the state's grid");
    for (const VertexPair& v : state.stack)
        if (v.max == query.max && v.min == query.min) return 1;
    return 0;
}

std::vector<IndicatorQuery> enumerate_family(Resolution res) {
    std::vector<IndicatorQuery> family;
    family.reserve(family_size(res));
    for (GridValue max = res.steps;; --max) {
        for (GridValue min = 0; min <= max; ++min) family.push_back({max, min});
        if (max == 0) break;
    }
    return family;
}

std::size_t family_size(Resolution res) noexcept {
    const std::size_t points = res.point_count();
    return points * (points + 1) / 2;
}

IndicatorAnswerTable answer_all(const EngineState& state) {
    IndicatorAnswerTable table{state.resolution, {}};
    const auto family = enumerate_family(state.resolution);
    table.bits.reserve(family.size());
    for (const IndicatorQuery& q : family)
        table.bits.push_back(static_cast<std::uint8_t>(indicator_eval(state, q)));
    return table;
}

ExtremumStack reconstruct(const IndicatorAnswerTable& answers) {
    const auto family = enumerate_family(answers.resolution);
    if (answers.bits.size() != family.size())
        throw InconsistentAnswersError("answer table size does not match the family");
    ExtremumStack stack;
    for (std::size_t i = 0; i < family.size(); ++i)
        if (answers.bits[i]) stack.push_back({family[i].max, family[i].min});
    // family order is max descending, so positives arrive bottom-first
    if (auto bad = stack_violation(stack, answers.resolution))
        throw InconsistentAnswersError("positive answers are not a stack: " + *bad);
    return stack;
}

DilationPlan random_dilation_plan(std::span<const GridValue> samples, std::uint64_t seed) {
    Rng rng(seed);
    DilationPlan plan;
    plan.repeats.resize(samples.size(), 0);
    if (!samples.empty()) plan.insertions.resize(samples.size() - 1);
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (rng.chance(1, 3)) plan.repeats[i] = static_cast<std::uint32_t>(1 + rng.below(2));
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const GridValue a = samples[i], b = samples[i + 1];
        const GridValue lo = std::min(a, b), hi = std::max(a, b);
        if (hi - lo < 2 || !rng.chance(1, 2)) continue;
        const std::size_t want = 1 + rng.below(std::min<std::uint64_t>(2, hi - lo - 1));
        std::vector<GridValue> picks;
        for (std::size_t j = 0; j < want; ++j) {
            const auto v = static_cast<GridValue>(lo + 1 + rng.below(hi - lo - 1));
            if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
        }
        std::sort(picks.begin(), picks.end());
        if (b < a) std::reverse(picks.begin(), picks.end());
        plan.insertions[i] = std::move(picks);
    }
    return plan;
}

std::vector<GridValue> apply_dilation(std::span<const GridValue> samples,
                                      const DilationPlan& plan) {
    if (plan.repeats.size() != samples.size() ||
        plan.insertions.size() + (samples.empty() ? 0 : 1) != samples.size())
        throw std::invalid_argument("apply_dilation: plan shape does not match the stream");
    std::vector<GridValue> out;
    out.reserve(samples.size() * 2);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out.push_back(samples[i]);
        for (std::uint32_t r = 0; r < plan.repeats[i]; ++r) out.push_back(samples[i]);
        if (i + 1 < samples.size()) {
            for (GridValue v : plan.insertions[i]) {
                const GridValue lo = std::min(samples[i], samples[i + 1]);
                const GridValue hi = std::max(samples[i], samples[i + 1]);
                if (v <= lo || v >= hi)
                    throw std::invalid_argument("apply_dilation: insertion not interior");
                out.push_back(v);
            }
        }
    }
    return out;
}

std::vector<GridValue> dilate(std::span<const GridValue> samples, std::uint64_t seed) {
    if (samples.empty()) throw std::invalid_argument("dilate: empty sequence");
    return apply_dilation(samples, random_dilation_plan(samples, seed));
}

}  // namespace pstack
