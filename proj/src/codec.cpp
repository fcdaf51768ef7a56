#include "pstack/codec.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "pstack/bitstream.hpp"

namespace pstack {

namespace {

constexpr unsigned kDirectionBits = 2;

std::uint64_t gamma_bits(std::uint64_t v) {
    return 2 * static_cast<std::uint64_t>(std::bit_width(v)) - 1;
}

void append_uleb128(std::vector<std::uint8_t>& out, std::uint64_t v) {
    while (true) {
        const auto byte = static_cast<std::uint8_t>(v & 0x7F);
        v >>= 7;
        if (v) {
            out.push_back(byte | 0x80);
        } else {
            out.push_back(byte);
            break;
        }
    }
}

std::size_t uleb128_len(std::uint64_t v) {
    std::size_t len = 1;
    while (v >>= 7) ++len;
    return len;
}

std::vector<std::uint8_t> make_header(CodecMode mode, Resolution res) {
    std::vector<std::uint8_t> out(kBlobMagic.begin(), kBlobMagic.end());
    out.push_back(kBlobVersion);
    out.push_back(static_cast<std::uint8_t>(mode));
    append_uleb128(out, res.steps);
    return out;
}

void put_direction(BitWriter& bits, Direction d) {
    bits.put_bits(static_cast<std::uint64_t>(d), kDirectionBits);
}

void check_eventlog(const EventLog& log) {
    const Resolution res = log.resolution;
    if (!res.contains(log.current))
        throw std::invalid_argument("eventlog: current off the grid");
    for (std::size_t i = 0; i < log.extrema.size(); ++i) {
        const GridValue e = log.extrema[i];
        if (!res.contains(e)) throw std::invalid_argument("eventlog: extremum off the grid");
        const bool is_max = i % 2 == 0;
        if (is_max && e == 0) throw std::invalid_argument("eventlog: maximum of 0");
        if (i > 0) {
            const bool rose = e > log.extrema[i - 1];
            if (rose != is_max) throw std::invalid_argument("eventlog: alternation violation");
        }
    }
    Direction expected = Direction::None;
    if (log.extrema.empty()) {
        if (log.current > 0) expected = Direction::Rising;
    } else {
        const GridValue last = log.extrema.back();
        const bool last_is_max = (log.extrema.size() - 1) % 2 == 0;
        if (last_is_max ? log.current >= last : log.current <= last)
            throw std::invalid_argument("eventlog: current does not continue the final run");
        expected = last_is_max ? Direction::Falling : Direction::Rising;
    }
    if (log.direction != expected)
        throw std::invalid_argument("eventlog: direction inconsistent with the log");
}

}  // namespace

EventLog record_eventlog(Resolution res, std::span<const GridValue> samples) {
    if (samples.empty()) throw std::invalid_argument("record_eventlog: empty sequence");
    EventLog log{res, {}, 0, Direction::None};
    EngineState s = initial_state(res, samples[0]);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const StepEvent ev = step(s, samples[i]);
        if (ev.confirmed) log.extrema.push_back(ev.confirmed->value);
    }
    log.current = s.current;
    log.direction = s.direction;
    return log;
}

EngineState EventLog::replay_prefix(std::size_t confirmations) const {
    if (confirmations > extrema.size())
        throw std::invalid_argument("replay_prefix: not that many confirmations");
    check_eventlog(*this);
    if (confirmations == 0 && extrema.empty()) return initial_state(resolution, current);
    EngineState s = initial_state(resolution, extrema.empty() ? current : extrema[0]);
    for (std::size_t i = 1; i < confirmations; ++i) step(s, extrema[i]);
    if (confirmations > 0) {
        const GridValue trigger =
            confirmations < extrema.size() ? extrema[confirmations] : current;
        step(s, trigger);
    }
    return s;
}

EncodedBlob encode_final(const EngineState& state) {
    if (auto bad = state_violation(state))
        throw std::invalid_argument("encode_final: invalid state: " + *bad);
    EncodedBlob blob = make_header(CodecMode::FinalState, state.resolution);
    BitWriter bits;
    const auto& stack = state.stack;
    bits.put_gamma(stack.size() + 1);
    if (!stack.empty()) {
        bits.put_gamma(state.resolution.steps - stack[0].max + 1);
        for (std::size_t i = 1; i < stack.size(); ++i)
            bits.put_gamma(stack[i - 1].max - stack[i].max);
        bits.put_gamma(stack[0].min + 1);
        for (std::size_t i = 1; i < stack.size(); ++i)
            bits.put_gamma(stack[i].min - stack[i - 1].min);
    }
    if (state.pending_max) {
        bits.put_bit(true);
        bits.put_gamma(*state.pending_max + 1);
    } else {
        bits.put_bit(false);
    }
    bits.put_gamma(state.current + 1);
    put_direction(bits, state.direction);
    const auto payload = std::move(bits).take();
    blob.insert(blob.end(), payload.begin(), payload.end());
    return blob;
}

EncodedBlob encode_eventlog(const EventLog& log) {
    check_eventlog(log);
    EncodedBlob blob = make_header(CodecMode::EventLog, log.resolution);
    BitWriter bits;
    bits.put_gamma(log.extrema.size() + 1);
    for (GridValue e : log.extrema) bits.put_gamma(e + 1);
    bits.put_gamma(log.current + 1);
    put_direction(bits, log.direction);
    const auto payload = std::move(bits).take();
    blob.insert(blob.end(), payload.begin(), payload.end());
    return blob;
}

namespace {

GridValue read_grid_value_plus_one(BitReader& bits, Resolution res, const char* what) {
    const std::uint64_t g = bits.get_gamma();
    if (g > res.steps + 1ull)
        throw DecodeError(DecodeErrorKind::InvariantViolation,
                          std::string(what) + " exceeds the grid");
    return static_cast<GridValue>(g - 1);
}

Direction read_direction(BitReader& bits) {
    const auto raw = static_cast<std::uint8_t>(bits.get_bits(kDirectionBits));
    if (raw > 2)
        throw DecodeError(DecodeErrorKind::InvariantViolation, "unknown direction bits");
    return static_cast<Direction>(raw);
}

EngineState decode_final_payload(BitReader& bits, Resolution res) {
    EngineState state{res, {}, std::nullopt, 0, Direction::None, 0};
    const std::uint64_t k = bits.get_gamma() - 1;
    if (k > (res.steps + 1ull) / 2)
        throw DecodeError(DecodeErrorKind::InvariantViolation, "stack depth exceeds the grid");
    state.stack.resize(k);
    if (k > 0) {
        const std::uint64_t first_gap = bits.get_gamma();
        if (first_gap > res.steps)
            throw DecodeError(DecodeErrorKind::InvariantViolation, "top maximum below 1");
        state.stack[0].max = static_cast<GridValue>(res.steps + 1 - first_gap);
        for (std::size_t i = 1; i < k; ++i) {
            const std::uint64_t gap = bits.get_gamma();
            if (gap >= state.stack[i - 1].max)
                throw DecodeError(DecodeErrorKind::InvariantViolation, "maximum underflow");
            state.stack[i].max = static_cast<GridValue>(state.stack[i - 1].max - gap);
        }
        state.stack[0].min = read_grid_value_plus_one(bits, res, "bottom minimum");
        for (std::size_t i = 1; i < k; ++i) {
            const std::uint64_t gap = bits.get_gamma();
            const std::uint64_t next = state.stack[i - 1].min + gap;
            if (next > res.steps)
                throw DecodeError(DecodeErrorKind::InvariantViolation, "minimum overflow");
            state.stack[i].min = static_cast<GridValue>(next);
        }
    }
    if (bits.get_bit()) state.pending_max = read_grid_value_plus_one(bits, res, "pending");
    state.current = read_grid_value_plus_one(bits, res, "current");
    state.direction = read_direction(bits);
    if (auto bad = state_violation(state))
        throw DecodeError(DecodeErrorKind::InvariantViolation, *bad);
    return state;
}

EventLog decode_eventlog_payload(BitReader& bits, Resolution res) {
    EventLog log{res, {}, 0, Direction::None};
    const std::uint64_t count = bits.get_gamma() - 1;
    for (std::uint64_t i = 0; i < count; ++i)
        log.extrema.push_back(read_grid_value_plus_one(bits, res, "extremum"));
    log.current = read_grid_value_plus_one(bits, res, "current");
    log.direction = read_direction(bits);
    try {
        check_eventlog(log);
    } catch (const std::invalid_argument& e) {
        throw DecodeError(DecodeErrorKind::InvariantViolation, e.what());
    }
    return log;
}

}  // namespace

DecodedBlob decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kBlobMagic.size())
        throw DecodeError(DecodeErrorKind::TruncatedBitstream, "shorter than the magic");
    if (!std::equal(kBlobMagic.begin(), kBlobMagic.end(), bytes.begin()))
        throw DecodeError(DecodeErrorKind::BadMagic, "not a PSTK blob");
    std::size_t pos = kBlobMagic.size();
    if (pos >= bytes.size())
        throw DecodeError(DecodeErrorKind::TruncatedBitstream, "missing version byte");
    if (bytes[pos] != kBlobVersion)
        throw DecodeError(DecodeErrorKind::BadVersion,
                          "version " + std::to_string(bytes[pos]));
    ++pos;
    if (pos >= bytes.size())
        throw DecodeError(DecodeErrorKind::TruncatedBitstream, "missing mode byte");
    const std::uint8_t mode = bytes[pos];
    if (mode > 1)
        throw DecodeError(DecodeErrorKind::InvariantViolation,
                          "unknown mode byte " + std::to_string(mode));
    ++pos;

    std::uint64_t steps = 0;
    unsigned shift = 0;
    while (true) {
        if (pos >= bytes.size())
            throw DecodeError(DecodeErrorKind::TruncatedBitstream, "unterminated LEB128");
        const std::uint8_t b = bytes[pos++];
        if (shift >= 64 || (shift == 63 && (b & 0x7E)))
            throw DecodeError(DecodeErrorKind::InvariantViolation, "LEB128 overflow");
        steps |= static_cast<std::uint64_t>(b & 0x7F) << shift;
        if (!(b & 0x80)) break;
        shift += 7;
    }
    if (steps < 2 || steps > 0xFFFFFFFFull)
        throw DecodeError(DecodeErrorKind::InvariantViolation, "resolution out of range");
    const Resolution res(static_cast<std::uint32_t>(steps));

    BitReader bits(bytes.subspan(pos));
    DecodedBlob out{EngineState{res, {}, std::nullopt, 0, Direction::None, 0}, 0};
    if (mode == static_cast<std::uint8_t>(CodecMode::FinalState))
        out.value = decode_final_payload(bits, res);
    else
        out.value = decode_eventlog_payload(bits, res);
    bits.expect_zero_padding();
    out.bytes_consumed = pos + bits.bytes_consumed();
    return out;
}

std::uint64_t size_bits(const EngineState& state) {
    if (auto bad = state_violation(state))
        throw std::invalid_argument("size_bits: invalid state: " + *bad);
    const std::uint64_t header = 8 * (6 + uleb128_len(state.resolution.steps));
    std::uint64_t bits = gamma_bits(state.stack.size() + 1);
    const auto& stack = state.stack;
    if (!stack.empty()) {
        bits += gamma_bits(state.resolution.steps - stack[0].max + 1);
        for (std::size_t i = 1; i < stack.size(); ++i)
            bits += gamma_bits(stack[i - 1].max - stack[i].max);
        bits += gamma_bits(stack[0].min + 1);
        for (std::size_t i = 1; i < stack.size(); ++i)
            bits += gamma_bits(stack[i].min - stack[i - 1].min);
    }
    bits += 1;
    if (state.pending_max) bits += gamma_bits(*state.pending_max + 1);
    bits += gamma_bits(state.current + 1);
    bits += kDirectionBits;
    return header + bits;
}

std::uint64_t eventlog_size_bits(const EventLog& log) {
    check_eventlog(log);
    const std::uint64_t header = 8 * (6 + uleb128_len(log.resolution.steps));
    std::uint64_t bits = gamma_bits(log.extrema.size() + 1);
    for (GridValue e : log.extrema) bits += gamma_bits(e + 1);
    bits += gamma_bits(log.current + 1);
    bits += kDirectionBits;
    return header + bits;
}

std::uint64_t raw_size_bits(std::uint64_t last_index, Resolution res) {
    return (last_index + 1) * res.bits_per_sample();
}

}  // namespace pstack
