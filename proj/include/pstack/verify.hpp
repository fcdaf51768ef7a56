#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pstack/stack_engine.hpp"

namespace pstack::verify {

struct SuiteOptions {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> resolutions = {2, 4, 10, 64};
    std::size_t max_samples = 512;
};

struct SuiteReport {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::string first_failure;  // seed + shrunk reproducer for the first failure

    bool passed() const noexcept { return failures == 0; }
    bool vacuous() const noexcept { return trials == 0; }
};

// Injection point for mutation testing: the engine suite checks whatever
// step function it is given against the brute-force oracle.
using StepFn = std::function<StepEvent(EngineState&, GridValue)>;

// Deterministic fuzz stream for trial `index`: mixes iid values, tie-heavy
// small-step walks, wider walks, and monotone ramps.
std::vector<GridValue> fuzz_stream(Resolution res, std::uint64_t seed, std::uint64_t index,
                                   std::size_t max_samples);

// Engine vs oracle equality, per-step invariants, depth bound, amortised
// push+pop cost, flat idempotence.
SuiteReport run_engine_suite(const SuiteOptions& options, const StepFn& step_fn = nullptr);
// direct_output == staircase_output, exact integer equality.
SuiteReport run_preisach_suite(const SuiteOptions& options);
// Indicator reconstruction, family size, rate-independence under dilation.
SuiteReport run_queries_suite(const SuiteOptions& options);
// Round-trip, resume equivalence, query preservation, self-delimiting
// framing, size bound, corruption rejection.
SuiteReport run_codec_suite(const SuiteOptions& options);

std::vector<SuiteReport> run_all(const SuiteOptions& options);

}  // namespace pstack::verify
