#include "pstack/signals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "pstack/rng.hpp"

namespace pstack {

const char* to_string(StreamKind kind) noexcept {
    switch (kind) {
        case StreamKind::Walk: return "walk";
        case StreamKind::SineDrift: return "sine_drift";
        case StreamKind::MonotoneRuns: return "monotone_runs";
        case StreamKind::PopStorm: return "pop_storm";
    }
    return "?";
}

namespace {

std::vector<GridValue> generate_walk(const GeneratorSpec& spec) {
    Rng rng(spec.seed);
    const std::int64_t top = spec.resolution.steps;
    std::vector<GridValue> out;
    out.reserve(spec.length);
    std::int64_t value = static_cast<std::int64_t>(rng.below(top + 1));
    out.push_back(static_cast<GridValue>(value));
    const std::int64_t bound = spec.step_bound;
    for (std::size_t i = 1; i < spec.length; ++i) {
        value += static_cast<std::int64_t>(rng.below(2 * bound + 1)) - bound;
        value = std::clamp<std::int64_t>(value, 0, top);
        out.push_back(static_cast<GridValue>(value));
    }
    return out;
}

std::vector<GridValue> generate_sine_drift(const GeneratorSpec& spec) {
    if (!(spec.period > 0)) throw std::invalid_argument("sine_drift: period must be positive");
    Rng rng(spec.seed);
    const double phase =
        2.0 * std::numbers::pi * static_cast<double>(rng.below(1u << 20)) / (1u << 20);
    std::vector<GridValue> out;
    out.reserve(spec.length);
    for (std::size_t t = 0; t < spec.length; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / spec.period;
        const double x = 0.5 + spec.amplitude * std::sin(angle + phase) +
                         spec.drift * static_cast<double>(t);
        out.push_back(quantize(std::clamp(x, 0.0, 1.0), spec.resolution));
    }
    return out;
}

// Linear ramp, endpoint included, start excluded.
void emit_ramp(std::vector<GridValue>& out, std::int64_t from, std::int64_t to,
               std::size_t count) {
    for (std::size_t j = 1; j <= count; ++j) {
        const std::int64_t v =
            from + ((to - from) * static_cast<std::int64_t>(j) +
                    (to >= from ? 1 : -1) * static_cast<std::int64_t>(count) / 2) /
                       static_cast<std::int64_t>(count);
        out.push_back(static_cast<GridValue>(v));
    }
}

std::vector<GridValue> generate_monotone_runs(const GeneratorSpec& spec) {
    if (spec.run_count == 0)
        throw std::invalid_argument("monotone_runs: run count must be >= 1");
    Rng rng(spec.seed);
    std::vector<GridValue> out;
    out.reserve(spec.length);
    out.push_back(0);
    if (spec.length == 1) return out;

    // split the remaining samples across the runs
    const std::size_t body = spec.length - 1;
    const std::size_t runs = std::min<std::size_t>(spec.run_count, body);
    std::vector<std::size_t> lens(runs, body / runs);
    for (std::size_t i = 0; i < body % runs; ++i) ++lens[i];

    const std::int64_t top = spec.resolution.steps;
    std::int64_t at = 0;
    for (std::size_t r = 0; r < runs; ++r) {
        const bool rising = r % 2 == 0;
        const std::int64_t margin = std::max<std::int64_t>(1, top / 8);
        std::int64_t target = rising ? top - static_cast<std::int64_t>(rng.below(margin))
                                     : static_cast<std::int64_t>(rng.below(margin));
        if (rising && target <= at) target = std::min(top, at + 1);
        if (!rising && target >= at) target = std::max<std::int64_t>(0, at - 1);
        emit_ramp(out, at, target, lens[r]);
        at = target;
    }
    return out;
}

std::vector<GridValue> generate_pop_storm(const GeneratorSpec& spec) {
    const std::uint32_t d = spec.depth;
    const std::uint32_t top = spec.resolution.steps;
    if (d < 1) throw std::invalid_argument("pop_storm: depth must be >= 1");
    if (top < 2 * d + 2)
        throw std::invalid_argument("pop_storm: resolution too coarse for the depth");
    std::vector<GridValue> out;
    out.reserve(std::max<std::size_t>(spec.length, 2 * d + 3));
    out.push_back(0);
    for (std::uint32_t i = 1; i <= d; ++i) {
        out.push_back(top - i);  // nested maxima: top-1 > top-2 > ...
        out.push_back(i - 1);    // nested minima: 0 < 1 < ...
    }
    out.push_back(top);      // spike above every prior maximum
    out.push_back(top - 1);  // confirm it: this step pops all d vertices
    while (out.size() < spec.length) out.push_back(top - 1);
    return out;
}

}  // namespace

std::vector<GridValue> generate(const GeneratorSpec& spec) {
    if (spec.length < 1) throw std::invalid_argument("generate: length must be >= 1");
    switch (spec.kind) {
        case StreamKind::Walk: return generate_walk(spec);
        case StreamKind::SineDrift: return generate_sine_drift(spec);
        case StreamKind::MonotoneRuns: return generate_monotone_runs(spec);
        case StreamKind::PopStorm: return generate_pop_storm(spec);
    }
    throw std::invalid_argument("generate: unknown kind");
}

void for_each_csv_value(std::istream& in, std::size_t column,
                        const std::function<void(double)>& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;

        std::size_t field_start = 0;
        for (std::size_t field = 0; field < column; ++field) {
            const std::size_t comma = line.find(',', field_start);
            if (comma == std::string::npos)
                throw ParseError("missing column " + std::to_string(column), lineno);
            field_start = comma + 1;
        }
        std::size_t field_end = line.find(',', field_start);
        if (field_end == std::string::npos) field_end = line.size();
        while (field_start < field_end && (line[field_start] == ' ' || line[field_start] == '\t'))
            ++field_start;
        while (field_end > field_start &&
               (line[field_end - 1] == ' ' || line[field_end - 1] == '\t'))
            --field_end;

        double value = 0.0;
        const char* first = line.data() + field_start;
        const char* last = line.data() + field_end;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw ParseError("not a number: \"" + line.substr(field_start, field_end - field_start) +
                                 "\"",
                             lineno);
        if (!std::isfinite(value)) throw ParseError("non-finite value", lineno);
        fn(value);
    }
}

std::vector<GridValue> ingest_csv(std::istream& in, std::size_t column, Resolution res,
                                  RangePolicy policy) {
    std::vector<GridValue> out;
    for_each_csv_value(in, column, [&](double x) { out.push_back(quantize(x, res, policy)); });
    return out;
}

void write_psig(std::ostream& out, Resolution res, std::span<const GridValue> samples) {
    if (res.steps > 0xFFFF)
        throw std::invalid_argument("write_psig: resolution exceeds 16-bit samples");
    out.write(kPsigMagic, 4);
    const std::uint32_t steps = res.steps;
    const std::uint8_t header[4] = {
        static_cast<std::uint8_t>(steps & 0xFF),
        static_cast<std::uint8_t>((steps >> 8) & 0xFF),
        static_cast<std::uint8_t>((steps >> 16) & 0xFF),
        static_cast<std::uint8_t>((steps >> 24) & 0xFF),
    };
    out.write(reinterpret_cast<const char*>(header), 4);
    for (GridValue v : samples) {
        if (!res.contains(v)) throw std::invalid_argument("write_psig: sample off the grid");
        const std::uint8_t le[2] = {static_cast<std::uint8_t>(v & 0xFF),
                                    static_cast<std::uint8_t>((v >> 8) & 0xFF)};
        out.write(reinterpret_cast<const char*>(le), 2);
    }
    if (!out) throw Error("write_psig: write failed");
}

PsigStream read_psig(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() != 4 || !std::equal(magic, magic + 4, kPsigMagic))
        throw ParseError("not a PSIG stream");
    std::uint8_t header[4] = {};
    in.read(reinterpret_cast<char*>(header), 4);
    if (in.gcount() != 4) throw ParseError("truncated PSIG header");
    const std::uint32_t steps = header[0] | (header[1] << 8) | (header[2] << 16) |
                                (static_cast<std::uint32_t>(header[3]) << 24);
    if (steps < 2) throw ParseError("PSIG resolution below 2");
    if (steps > 0xFFFF) throw ParseError("PSIG resolution exceeds 16-bit samples");
    PsigStream result{Resolution(steps), {}};
    std::uint8_t le[2];
    while (in.read(reinterpret_cast<char*>(le), 2)) {
        const GridValue v = le[0] | (static_cast<GridValue>(le[1]) << 8);
        if (!result.resolution.contains(v)) throw ParseError("PSIG sample off the grid");
        result.samples.push_back(v);
    }
    if (in.gcount() != 0) throw ParseError("trailing odd byte in PSIG stream");
    return result;
}

}  // namespace pstack
