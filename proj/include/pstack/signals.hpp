#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pstack/grid.hpp"

namespace pstack {

enum class StreamKind { Walk, SineDrift, MonotoneRuns, PopStorm };

const char* to_string(StreamKind kind) noexcept;

// Deterministic synthetic streams. Same spec, same output, on every run
// and platform (only raw mt19937_64 draws are consumed).
struct GeneratorSpec {
    StreamKind kind = StreamKind::Walk;
    std::size_t length = 0;
    Resolution resolution = Resolution(64);
    std::uint64_t seed = 0;

    std::uint32_t step_bound = 3;   // walk: per-step delta in [-b, b]
    std::uint32_t run_count = 8;    // monotone_runs
    double amplitude = 0.45;        // sine_drift
    double period = 64.0;           // sine_drift, in samples
    double drift = 0.0;             // sine_drift, per-sample offset
    std::uint32_t depth = 8;        // pop_storm: stack depth before the wipe
};

// pop_storm emits a nested staircase reaching the requested depth, a
// spike above every prior maximum, and the one sample that confirms it,
// so a single step pops `depth` vertices. Requires steps >= 2*depth + 2;
// length beyond the pattern is padded with flats.
std::vector<GridValue> generate(const GeneratorSpec& spec);

// One real per selected column (0-based, comma-separated), quantized onto
// the grid. Parse problems report the 1-based line number.
std::vector<GridValue> ingest_csv(std::istream& in, std::size_t column, Resolution res,
                                  RangePolicy policy);

// Streaming form used by the CLI so memory stays proportional to the
// stack depth.
void for_each_csv_value(std::istream& in, std::size_t column,
                        const std::function<void(double)>& fn);

// Binary stream format: magic "PSIG", steps as 4-byte little-endian
// unsigned, then one little-endian 16-bit grid index per sample.
inline constexpr char kPsigMagic[4] = {'P', 'S', 'I', 'G'};

void write_psig(std::ostream& out, Resolution res, std::span<const GridValue> samples);

struct PsigStream {
    Resolution resolution;
    std::vector<GridValue> samples;
};

PsigStream read_psig(std::istream& in);

}  // namespace pstack
