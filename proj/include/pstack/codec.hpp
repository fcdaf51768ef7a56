#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "pstack/grid.hpp"
#include "pstack/stack_engine.hpp"

namespace pstack {

// Blob layout (bit-exact wire contract; conventional file extension ".pstk"):
//
//   bytes:  magic "PSTK" | version 0x01 | mode byte | L as unsigned LEB128
//   bits (MSB-first), FinalState mode 0x00:
//       gamma(k + 1)
//       gamma(L - max[0] + 1), then gamma(max[i-1] - max[i]) for i >= 1
//       gamma(min[0] + 1),     then gamma(min[i] - min[i-1]) for i >= 1
//       pending flag bit; when set, gamma(pending + 1)
//       gamma(current + 1)
//       direction: 00 none, 01 rising, 10 falling
//   bits, EventLog mode 0x01:
//       gamma(count + 1); gamma(value + 1) per confirmed extremum
//       gamma(current + 1); direction as above
//   zero padding to the byte boundary.
//
// The strict stack orderings make every interior gap >= 1, so the deltas
// are gamma-codable with no offset. Gamma codes are self-delimiting, so a
// blob's length is implied by its contents and blobs can be concatenated.

inline constexpr std::array<std::uint8_t, 4> kBlobMagic{'P', 'S', 'T', 'K'};
inline constexpr std::uint8_t kBlobVersion = 0x01;

enum class CodecMode : std::uint8_t { FinalState = 0x00, EventLog = 0x01 };

using EncodedBlob = std::vector<std::uint8_t>;

// Confirmed-extrema log: values alternate maximum, minimum, ... starting
// with a maximum; current is the last observed sample of the partial run
// after the final confirmation.
struct EventLog {
    Resolution resolution;
    std::vector<GridValue> extrema;
    GridValue current = 0;
    Direction direction = Direction::None;

    // State just after the j-th confirmation: the first j extrema are
    // replayed and the following extremum (or current, for the full log)
    // acts as the sample that triggered the confirmation.
    EngineState replay_prefix(std::size_t confirmations) const;
    EngineState replay() const { return replay_prefix(extrema.size()); }

    friend bool operator==(const EventLog&, const EventLog&) = default;
};

EventLog record_eventlog(Resolution res, std::span<const GridValue> samples);

EncodedBlob encode_final(const EngineState& state);
EncodedBlob encode_eventlog(const EventLog& log);

struct DecodedBlob {
    std::variant<EngineState, EventLog> value;
    std::size_t bytes_consumed = 0;

    CodecMode mode() const noexcept {
        return std::holds_alternative<EngineState>(value) ? CodecMode::FinalState
                                                          : CodecMode::EventLog;
    }
    const EngineState& state() const { return std::get<EngineState>(value); }
    const EventLog& log() const { return std::get<EventLog>(value); }
};

// Exact inverse of the encoders. Validates the header, every stack
// invariant, and the zero padding; trailing bytes beyond the blob are
// left untouched (see bytes_consumed). Decoded EngineStates carry
// samples_seen = 0 (the sample count is not serialized).
DecodedBlob decode(std::span<const std::uint8_t> bytes);

// Exact encoded bit count before padding, header included.
std::uint64_t size_bits(const EngineState& state);
std::uint64_t eventlog_size_bits(const EventLog& log);

// Verbatim cost of the raw samples u_0..u_n: (n + 1) * ceil(log2(L + 1)).
std::uint64_t raw_size_bits(std::uint64_t last_index, Resolution res);

}  // namespace pstack
