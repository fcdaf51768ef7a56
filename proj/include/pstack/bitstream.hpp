#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "pstack/errors.hpp"

namespace pstack {

// MSB-first bit accumulator.
class BitWriter {
public:
    void put_bit(bool bit) {
        if (fill_ == 0) {
            bytes_.push_back(0);
            fill_ = 8;
        }
        --fill_;
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(1u << fill_);
        ++bits_;
    }

    // `count` <= 64, value's low `count` bits, most significant first.
    void put_bits(std::uint64_t value, unsigned count) {
        for (unsigned i = count; i-- > 0;) put_bit((value >> i) & 1u);
    }

    // Elias gamma code of v >= 1: (bit_width - 1) zeros, then v in binary.
    void put_gamma(std::uint64_t v) {
        const unsigned width = static_cast<unsigned>(std::bit_width(v));
        put_bits(0, width - 1);
        put_bits(v, width);
    }

    std::size_t bit_count() const noexcept { return bits_; }

    // Zero padding to the byte boundary is implicit in the representation.
    std::vector<std::uint8_t> take() && { return std::move(bytes_); }
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    unsigned fill_ = 0;  // unused bits left in the last byte
    std::size_t bits_ = 0;
};

// MSB-first reader over a byte span; reading past the end throws
// DecodeError(TruncatedBitstream).
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool get_bit() {
        if (pos_ >= bytes_.size() * 8)
            throw DecodeError(DecodeErrorKind::TruncatedBitstream, "bitstream exhausted");
        const bool bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
        ++pos_;
        return bit;
    }

    std::uint64_t get_bits(unsigned count) {
        std::uint64_t value = 0;
        for (unsigned i = 0; i < count; ++i) value = (value << 1) | (get_bit() ? 1u : 0u);
        return value;
    }

    std::uint64_t get_gamma() {
        unsigned zeros = 0;
        while (!get_bit()) {
            if (++zeros > 63)
                throw DecodeError(DecodeErrorKind::InvariantViolation, "gamma code too wide");
        }
        std::uint64_t value = 1;
        for (unsigned i = 0; i < zeros; ++i) value = (value << 1) | (get_bit() ? 1u : 0u);
        return value;
    }

    std::size_t bits_read() const noexcept { return pos_; }
    std::size_t bytes_consumed() const noexcept { return (pos_ + 7) / 8; }

    // The zero bits that pad the final consumed byte.
    void expect_zero_padding() {
        while (pos_ % 8 != 0)
            if (get_bit())
                throw DecodeError(DecodeErrorKind::InvariantViolation, "nonzero padding");
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace pstack
