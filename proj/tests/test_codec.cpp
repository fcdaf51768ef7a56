#include "doctest.h"

#include <vector>

#include "pstack/bitstream.hpp"
#include "pstack/codec.hpp"
#include "pstack/preisach.hpp"
#include "pstack/queries.hpp"
#include "pstack/rng.hpp"
#include "pstack/verify.hpp"

using namespace pstack;

namespace {

EncodedBlob bytes_of(std::initializer_list<std::uint8_t> list) { return EncodedBlob(list); }

}  // namespace

TEST_CASE("elias gamma round trip and frozen code words") {
    BitWriter w;
    w.put_gamma(1);
    w.put_gamma(2);
    w.put_gamma(3);
    w.put_gamma(4);
    w.put_gamma(10);
    // 1 | 010 | 011 | 00100 | 0001010
    CHECK(w.bit_count() == 1 + 3 + 3 + 5 + 7);
    const auto bytes = std::move(w).take();
    BitReader r(bytes);
    CHECK(r.get_gamma() == 1);
    CHECK(r.get_gamma() == 2);
    CHECK(r.get_gamma() == 3);
    CHECK(r.get_gamma() == 4);
    CHECK(r.get_gamma() == 10);

    for (std::uint64_t v = 1; v <= 300; ++v) {
        BitWriter w2;
        w2.put_gamma(v);
        const auto b2 = std::move(w2).take();
        BitReader r2(b2);
        CHECK(r2.get_gamma() == v);
    }
}

TEST_CASE("golden vectors pin the wire format") {
    const Resolution r(10);

    // fresh state at 0
    const EngineState fresh = initial_state(r, 0);
    CHECK(encode_final(fresh) ==
          bytes_of({0x50, 0x53, 0x54, 0x4B, 0x01, 0x00, 0x0A, 0xA0}));
    CHECK(size_bits(fresh) == 61);

    // two vertices, rising at 6
    const EngineState two = run(r, std::vector<GridValue>{1, 9, 2, 7, 4, 6});
    CHECK(encode_final(two) ==
          bytes_of({0x50, 0x53, 0x54, 0x4B, 0x01, 0x00, 0x0A, 0x69, 0x34, 0x3A}));
    CHECK(size_bits(two) == 79);

    // pending maximum, falling
    const EngineState pend = run(r, std::vector<GridValue>{0, 9, 2});
    REQUIRE(pend.pending_max == GridValue{9});
    CHECK(encode_final(pend) ==
          bytes_of({0x50, 0x53, 0x54, 0x4B, 0x01, 0x00, 0x0A, 0xC5, 0x38}));
    CHECK(size_bits(pend) == 70);

    // event log [max 9, min 2], current 6, rising
    const EventLog log = record_eventlog(r, std::vector<GridValue>{1, 9, 2, 6});
    REQUIRE(log.extrema == std::vector<GridValue>{9, 2});
    CHECK(encode_eventlog(log) ==
          bytes_of({0x50, 0x53, 0x54, 0x4B, 0x01, 0x01, 0x0A, 0x62, 0x99, 0xD0}));
    CHECK(eventlog_size_bits(log) == 76);

    // multi-byte LEB128 resolution
    const EngineState wide = initial_state(Resolution(200), 0);
    CHECK(encode_final(wide) ==
          bytes_of({0x50, 0x53, 0x54, 0x4B, 0x01, 0x00, 0xC8, 0x01, 0xA0}));
    CHECK(size_bits(wide) == 69);
}

TEST_CASE("decode inverts encode on the goldens") {
    const Resolution r(10);
    const EngineState two = run(r, std::vector<GridValue>{1, 9, 2, 7, 4, 6});
    const DecodedBlob round = decode(encode_final(two));
    CHECK(round.mode() == CodecMode::FinalState);
    CHECK(round.state() == two);
    CHECK(round.state().samples_seen == 0);  // not serialized

    // distinct states give distinct blobs
    const EngineState fresh = initial_state(r, 0);
    CHECK(encode_final(fresh) != encode_final(two));
}

TEST_CASE("decode error taxonomy") {
    const auto good = encode_final(initial_state(Resolution(10), 0));

    EncodedBlob bad_magic = good;
    bad_magic[0] = 'X';
    try {
        decode(bad_magic);
        FAIL("expected BadMagic");
    } catch (const DecodeError& e) {
        CHECK(e.kind() == DecodeErrorKind::BadMagic);
    }

    EncodedBlob bad_version = good;
    bad_version[4] = 0x02;
    try {
        decode(bad_version);
        FAIL("expected BadVersion");
    } catch (const DecodeError& e) {
        CHECK(e.kind() == DecodeErrorKind::BadVersion);
    }

    EncodedBlob truncated(good.begin(), good.begin() + 7);
    try {
        decode(truncated);
        FAIL("expected TruncatedBitstream");
    } catch (const DecodeError& e) {
        CHECK(e.kind() == DecodeErrorKind::TruncatedBitstream);
    }

    EncodedBlob tiny(good.begin(), good.begin() + 3);
    CHECK_THROWS_AS(decode(tiny), DecodeError);

    EncodedBlob bad_mode = good;
    bad_mode[5] = 0x07;
    try {
        decode(bad_mode);
        FAIL("expected InvariantViolation");
    } catch (const DecodeError& e) {
        CHECK(e.kind() == DecodeErrorKind::InvariantViolation);
    }

    // nonzero padding is rejected, never silently accepted
    const Resolution r(10);
    EncodedBlob padded = encode_final(run(r, std::vector<GridValue>{1, 9, 2, 7, 4, 6}));
    padded.back() |= 0x01;
    try {
        decode(padded);
        FAIL("expected InvariantViolation");
    } catch (const DecodeError& e) {
        CHECK(e.kind() == DecodeErrorKind::InvariantViolation);
    }
}

TEST_CASE("event log replay reconstructs the stack at any confirmation") {
    const Resolution r(10);
    const EventLog log = record_eventlog(r, std::vector<GridValue>{1, 9, 2, 6});
    CHECK(log.replay().stack == ExtremumStack{{9, 2}});

    const EngineState after_first = log.replay_prefix(1);
    CHECK(after_first.stack.empty());
    CHECK(after_first.pending_max == GridValue{9});

    const EventLog empty{r, {}, 0, Direction::None};
    CHECK(empty.replay() == initial_state(r, 0));

    CHECK_THROWS_AS(log.replay_prefix(3), std::invalid_argument);

    EventLog broken{r, {9, 9}, 6, Direction::Rising};  // no alternation
    CHECK_THROWS_AS(encode_eventlog(broken), std::invalid_argument);
    EventLog wrong_dir{r, {9, 2}, 6, Direction::Falling};
    CHECK_THROWS_AS(encode_eventlog(wrong_dir), std::invalid_argument);
}

TEST_CASE("raw size and size growth") {
    CHECK(raw_size_bits(100000, Resolution(100)) == 700007);
    CHECK(raw_size_bits(0, Resolution(2)) == 2);

    // a monotone stream that has reached its ceiling keeps a constant size
    const Resolution r(10);
    std::vector<GridValue> u{0, 3, 7, 10};
    const std::uint64_t base = size_bits(run(r, u));
    for (int i = 0; i < 40; ++i) {
        u.push_back(10);
        CHECK(size_bits(run(r, u)) == base);
    }

    // adding one vertex costs at most two maximal gamma codes
    const std::uint64_t per_vertex = 2 * (2 * Resolution(64).bits_per_sample() + 1);
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
        const Resolution res(64);
        const EngineState from_run = run(res, verify::fuzz_stream(res, 9, trial, 64));
        // graft a strictly tighter vertex when the geometry allows one
        const GridValue mmax = from_run.stack.empty() ? 64 : from_run.stack.back().max;
        const GridValue mmin = from_run.stack.empty() ? 0 : from_run.stack.back().min;
        if (mmax <= mmin + 2) continue;
        EngineState grown = from_run;
        grown.stack.push_back(
            {static_cast<GridValue>(mmax - 1), static_cast<GridValue>(mmin + 1)});
        grown.pending_max.reset();
        grown.current = static_cast<GridValue>(mmin + 2);
        grown.direction = Direction::Rising;
        grown.samples_seen = 0;
        EngineState shorter = grown;
        shorter.stack.pop_back();
        CHECK(size_bits(grown) <= size_bits(shorter) + per_vertex);
    }
}

TEST_CASE("fuzz: round trip, resume, self-delimiting, corruption") {
    const std::vector<std::uint32_t> resolutions{2, 4, 10, 64, 100};
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        const Resolution res(resolutions[trial % resolutions.size()]);
        const auto u = verify::fuzz_stream(res, 4242, trial, 128);
        CAPTURE(trial);

        const EngineState s = run(res, u);
        const EncodedBlob blob = encode_final(s);
        const DecodedBlob round = decode(blob);
        CHECK(round.state() == s);
        CHECK(round.bytes_consumed == blob.size());
        CHECK((size_bits(s) + 7) / 8 == blob.size());

        // size bound from the format
        const std::uint64_t g = 2ull * res.bits_per_sample() + 1;
        CHECK(size_bits(s) <= 56 + (2 * s.stack.size() + 3) * g + 3);

        // resume equivalence
        const std::size_t cut = 1 + u.size() / 2;
        EngineState head = run(res, std::span<const GridValue>(u.data(), std::min(cut, u.size())));
        EngineState resumed = decode(encode_final(head)).state();
        for (std::size_t i = std::min(cut, u.size()); i < u.size(); ++i) step(resumed, u[i]);
        CHECK(resumed == s);

        // query preservation over the implemented surface
        const EngineState back = round.state();
        CHECK(answer_all(back) == answer_all(s));
        const PreisachMeasure probe = random_measure(res, trial);
        CHECK(staircase_output(probe, back) == staircase_output(probe, s));

        // concatenation: first blob decodes exactly, remainder is intact
        const EventLog log = record_eventlog(res, u);
        const EncodedBlob second = encode_eventlog(log);
        EncodedBlob joined = blob;
        joined.insert(joined.end(), second.begin(), second.end());
        const DecodedBlob first = decode(joined);
        CHECK(first.bytes_consumed == blob.size());
        CHECK(first.state() == s);
        const DecodedBlob rest =
            decode(std::span<const std::uint8_t>(joined).subspan(first.bytes_consumed));
        CHECK(rest.log() == log);
        CHECK(rest.log().replay() == s);

        // corruption never slips an invalid state through
        Rng rng(mix_seed(4242, trial));
        for (int hit = 0; hit < 4; ++hit) {
            EncodedBlob mutated = blob;
            mutated[rng.below(mutated.size())] ^= static_cast<std::uint8_t>(1u << rng.below(8));
            try {
                const DecodedBlob d = decode(mutated);
                if (d.mode() == CodecMode::FinalState)
                    CHECK_FALSE(state_violation(d.state()));
                else
                    CHECK_FALSE(state_violation(d.log().replay()));
            } catch (const DecodeError&) {
                // typed rejection is the expected path
            }
        }
    }
}
