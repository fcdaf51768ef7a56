#include "pstack/verify.hpp"

#include <algorithm>
#include <sstream>

#include "pstack/codec.hpp"
#include "pstack/preisach.hpp"
#include "pstack/queries.hpp"
#include "pstack/rng.hpp"

namespace pstack::verify {

namespace {

std::string render_stream(Resolution res, std::span<const GridValue> samples) {
    std::ostringstream os;
    os << "L=" << res.steps << " stream=[";
    for (std::size_t i = 0; i < samples.size(); ++i) os << (i ? "," : "") << samples[i];
    os << "]";
    return os.str();
}

// Greedy one-at-a-time removal; keeps the failure alive, shrinks the witness.
std::vector<GridValue> shrink_stream(
    std::vector<GridValue> samples,
    const std::function<bool(const std::vector<GridValue>&)>& fails) {
    bool progress = true;
    while (progress && samples.size() > 1) {
        progress = false;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            std::vector<GridValue> candidate = samples;
            candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
            if (fails(candidate)) {
                samples = std::move(candidate);
                progress = true;
                break;
            }
        }
    }
    return samples;
}

struct TrialContext {
    Resolution res;
    std::uint64_t trial_seed;
    std::vector<GridValue> stream;
};

TrialContext make_trial(const SuiteOptions& options, std::uint64_t index) {
    const Resolution res(options.resolutions[index % options.resolutions.size()]);
    return {res, mix_seed(options.seed, index),
            fuzz_stream(res, options.seed, index, options.max_samples)};
}

void record_failure(SuiteReport& report, const std::string& what) {
    ++report.failures;
    if (report.first_failure.empty()) report.first_failure = what;
}

}  // namespace

std::vector<GridValue> fuzz_stream(Resolution res, std::uint64_t seed, std::uint64_t index,
                                   std::size_t max_samples) {
    Rng rng(mix_seed(seed, index));
    const std::size_t len = 1 + rng.below(max_samples);
    std::vector<GridValue> out;
    out.reserve(len);
    const std::int64_t top = res.steps;
    switch (index % 4) {
        case 0:  // iid uniform
            for (std::size_t i = 0; i < len; ++i)
                out.push_back(static_cast<GridValue>(rng.below(top + 1)));
            break;
        case 1: {  // tie-heavy small-step walk
            std::int64_t v = static_cast<std::int64_t>(rng.below(top + 1));
            for (std::size_t i = 0; i < len; ++i) {
                out.push_back(static_cast<GridValue>(v));
                v = std::clamp<std::int64_t>(v + static_cast<std::int64_t>(rng.below(3)) - 1, 0,
                                             top);
            }
            break;
        }
        case 2: {  // wider walk
            std::int64_t v = static_cast<std::int64_t>(rng.below(top + 1));
            const std::int64_t bound = std::max<std::int64_t>(1, top / 3);
            for (std::size_t i = 0; i < len; ++i) {
                out.push_back(static_cast<GridValue>(v));
                v = std::clamp<std::int64_t>(
                    v + static_cast<std::int64_t>(rng.below(2 * bound + 1)) - bound, 0, top);
            }
            break;
        }
        default: {  // monotone ramps with occasional reversals
            std::int64_t v = 0;
            std::int64_t dir = 1;
            for (std::size_t i = 0; i < len; ++i) {
                out.push_back(static_cast<GridValue>(v));
                if (rng.chance(1, 6)) dir = -dir;
                v = std::clamp<std::int64_t>(v + dir * static_cast<std::int64_t>(rng.below(2)), 0,
                                             top);
            }
            break;
        }
    }
    return out;
}

SuiteReport run_engine_suite(const SuiteOptions& options, const StepFn& step_fn) {
    const StepFn apply = step_fn ? step_fn : [](EngineState& s, GridValue u) { return step(s, u); };
    SuiteReport report{"engine", options.trials, 0, ""};

    auto trial_fails = [&](Resolution res, const std::vector<GridValue>& stream,
                           std::string* why) -> bool {
        EngineState s = initial_state(res, stream[0]);
        std::uint64_t pushes = 0, pops = 0;
        for (std::size_t i = 1; i < stream.size(); ++i) {
            const StepEvent ev = apply(s, stream[i]);
            pushes += ev.pushed ? 1 : 0;
            pops += ev.pops;
            if (auto bad = state_violation(s)) {
                if (why) *why = "invariant after step " + std::to_string(i) + ": " + *bad;
                return true;
            }
        }
        if (pushes + pops > 2 * (stream.size() - 1)) {
            if (why) *why = "amortised cost above 2n";
            return true;
        }
        const OracleResult oracle = oracle_stack(res, stream);
        if (!(s.stack == oracle.stack && s.pending_max == oracle.pending &&
              s.direction == oracle.direction)) {
            if (why) *why = "engine " + to_string(s) + " != oracle " + to_string(oracle);
            return true;
        }
        // flats never change anything but samples_seen
        std::vector<GridValue> flat;
        flat.reserve(stream.size() * 2);
        for (std::size_t i = 0; i < stream.size(); ++i) {
            flat.push_back(stream[i]);
            if (i % 3 == 0) flat.push_back(stream[i]);
        }
        EngineState f = initial_state(res, flat[0]);
        for (std::size_t i = 1; i < flat.size(); ++i) apply(f, flat[i]);
        if (!(f == s)) {
            if (why) *why = "flat dilation changed the state";
            return true;
        }
        return false;
    };

    for (std::uint64_t t = 0; t < options.trials; ++t) {
        TrialContext trial = make_trial(options, t);
        std::string why;
        if (!trial_fails(trial.res, trial.stream, &why)) continue;
        auto shrunk = shrink_stream(trial.stream, [&](const std::vector<GridValue>& cand) {
            return trial_fails(trial.res, cand, nullptr);
        });
        record_failure(report, "trial " + std::to_string(t) + " (" + why + ") " +
                                   render_stream(trial.res, shrunk));
    }
    return report;
}

SuiteReport run_preisach_suite(const SuiteOptions& options) {
    SuiteReport report{"preisach", options.trials, 0, ""};
    const std::size_t cap = std::min<std::size_t>(options.max_samples, 256);

    for (std::uint64_t t = 0; t < options.trials; ++t) {
        TrialContext trial = make_trial(options, t);
        if (trial.stream.size() > cap) trial.stream.resize(cap);
        const PreisachMeasure measure = t % 4 == 0 && trial.res.steps <= 64
                                            ? uniform_measure(trial.res)
                                            : random_measure(trial.res, trial.trial_seed);
        auto fails = [&](const std::vector<GridValue>& stream) {
            return direct_output(measure, stream) !=
                   staircase_output(measure, run(trial.res, stream));
        };
        if (!fails(trial.stream)) continue;
        auto shrunk = shrink_stream(trial.stream, fails);
        record_failure(report,
                       "trial " + std::to_string(t) + " direct != staircase, measure seed " +
                           std::to_string(trial.trial_seed) + ", " +
                           render_stream(trial.res, shrunk));
    }
    return report;
}

SuiteReport run_queries_suite(const SuiteOptions& options) {
    SuiteReport report{"queries", options.trials, 0, ""};
    const std::size_t cap = std::min<std::size_t>(options.max_samples, 256);

    for (std::uint64_t t = 0; t < options.trials; ++t) {
        TrialContext trial = make_trial(options, t);
        if (trial.stream.size() > cap) trial.stream.resize(cap);
        const Resolution res = trial.res;

        auto fails = [&](const std::vector<GridValue>& stream) -> bool {
            const EngineState s = run(res, stream);
            const IndicatorAnswerTable table = answer_all(s);
            if (table.bits.size() != family_size(res)) return true;
            try {
                if (reconstruct(table) != canonical_stack(s)) return true;
            } catch (const InconsistentAnswersError&) {
                return true;
            }
            const std::size_t positives =
                static_cast<std::size_t>(std::count(table.bits.begin(), table.bits.end(), 1));
            if (positives != s.stack.size()) return true;

            const std::vector<GridValue> stretched = dilate(stream, mix_seed(options.seed, t));
            const EngineState s2 = run(res, stretched);
            if (answer_all(s2) != table) return true;
            if (oracle_stack(res, stretched) != oracle_stack(res, stream)) return true;
            const PreisachMeasure measure = random_measure(res, trial.trial_seed);
            return direct_output(measure, stream) != direct_output(measure, stretched);
        };
        if (!fails(trial.stream)) continue;
        auto shrunk = shrink_stream(trial.stream, fails);
        record_failure(report, "trial " + std::to_string(t) + " " +
                                   render_stream(trial.res, shrunk));
    }
    return report;
}

SuiteReport run_codec_suite(const SuiteOptions& options) {
    SuiteReport report{"codec", options.trials, 0, ""};

    for (std::uint64_t t = 0; t < options.trials; ++t) {
        TrialContext trial = make_trial(options, t);
        const Resolution res = trial.res;
        Rng rng(trial.trial_seed);

        auto fails = [&](const std::vector<GridValue>& stream) -> bool {
            const EngineState s = run(res, stream);
            EncodedBlob blob;
            try {
                blob = encode_final(s);
                const DecodedBlob round = decode(blob);
                if (round.bytes_consumed != blob.size()) return true;
                if (!(round.state() == s)) return true;
            } catch (const Error&) {
                return true;
            }
            // size accounting matches the blob, and the format bound holds
            const std::uint64_t bits = size_bits(s);
            if ((bits + 7) / 8 != blob.size()) return true;
            const std::uint64_t g = 2ull * res.bits_per_sample() + 1;
            if (bits > 56 + (2 * s.stack.size() + 3) * g + 3) return true;

            // resume equivalence at a midpoint
            const std::size_t cut = stream.size() / 2;
            if (cut >= 1) {
                std::span<const GridValue> head(stream.data(), cut);
                EngineState partial = run(res, head);
                EncodedBlob snap = encode_final(partial);
                EngineState resumed = decode(snap).state();
                for (std::size_t i = cut; i < stream.size(); ++i) step(resumed, stream[i]);
                if (!(resumed == s)) return true;
            }

            // self-delimiting: a second blob survives concatenation
            const EventLog log = record_eventlog(res, stream);
            EncodedBlob tail = encode_eventlog(log);
            EncodedBlob joined = blob;
            joined.insert(joined.end(), tail.begin(), tail.end());
            const DecodedBlob first = decode(joined);
            if (first.bytes_consumed != blob.size() || !(first.state() == s)) return true;
            const DecodedBlob second =
                decode(std::span<const std::uint8_t>(joined).subspan(first.bytes_consumed));
            if (!(second.log() == log)) return true;
            if (!(second.log().replay() == s)) return true;

            // query preservation across the round trip
            const EngineState back = decode(blob).state();
            if (answer_all(back) != answer_all(s)) return true;
            const PreisachMeasure measure = random_measure(res, trial.trial_seed);
            if (staircase_output(measure, back) != staircase_output(measure, s)) return true;
            return false;
        };

        if (fails(trial.stream)) {
            auto shrunk = shrink_stream(trial.stream, fails);
            record_failure(report, "trial " + std::to_string(t) + " " +
                                       render_stream(trial.res, shrunk));
            continue;
        }

        // corruption fuzzing: decode either throws a typed error or yields
        // a state every invariant of which still holds
        EncodedBlob blob = encode_final(run(res, trial.stream));
        EncodedBlob mutated = blob;
        const std::size_t pos = rng.below(mutated.size());
        mutated[pos] ^= static_cast<std::uint8_t>(1u << rng.below(8));
        try {
            const DecodedBlob d = decode(mutated);
            if (d.mode() == CodecMode::FinalState) {
                if (auto bad = state_violation(d.state()))
                    record_failure(report, "corrupt blob decoded to invalid state: " + *bad);
            } else {
                const EngineState replayed = d.log().replay();
                if (auto bad = state_violation(replayed))
                    record_failure(report, "corrupt log replayed to invalid state: " + *bad);
            }
        } catch (const DecodeError&) {
            // rejected: fine
        } catch (const std::exception& e) {
            record_failure(report, std::string("corrupt blob raised a foreign error: ") + e.what());
        }
    }
    return report;
}

std::vector<SuiteReport> run_all(const SuiteOptions& options) {
    return {run_engine_suite(options), run_preisach_suite(options), run_queries_suite(options),
            run_codec_suite(options)};
}

}  // namespace pstack::verify
