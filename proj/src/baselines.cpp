#include "pstack/baselines.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pstack {

namespace {

using Wide = __int128;

Wide cross(const Rational& a, const Rational& b) {
    return static_cast<Wide>(a.num) * b.den - static_cast<Wide>(b.num) * a.den;
}

}  // namespace

bool operator==(const Rational& a, const Rational& b) { return cross(a, b) == 0; }
bool operator<(const Rational& a, const Rational& b) { return cross(a, b) < 0; }

Rational Rational::from_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty text");
    std::size_t dot = text.find('.');
    std::string digits = dot == std::string::npos
                             ? text
                             : text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("Rational: not a nonnegative decimal: " + text);
    std::int64_t den = 1;
    if (dot != std::string::npos)
        for (std::size_t i = dot + 1; i < text.size(); ++i) {
            if (den > 100000000000000000LL)
                throw std::invalid_argument("Rational: too many decimal places");
            den *= 10;
        }
    std::int64_t num = 0;
    for (char c : digits) {
        if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
            throw std::invalid_argument("Rational: value too large");
        num = num * 10 + (c - '0');
    }
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / (g ? g : 1), den / (g ? g : 1)};
}

std::int64_t round_half_up(Rational r) {
    if (r.den <= 0) throw std::invalid_argument("round_half_up: denominator must be positive");
    if (r.num < 0) throw std::invalid_argument("round_half_up: negative value");
    // floor((2 num + den) / (2 den))
    return (2 * r.num + r.den) / (2 * r.den);
}

PaaModel paa_compress(std::span<const GridValue> samples, std::uint32_t window) {
    if (window == 0) throw std::invalid_argument("paa_compress: window must be >= 1");
    PaaModel model{window, samples.size(), {}};
    model.segment_sums.reserve((samples.size() + window - 1) / window);
    for (std::size_t start = 0; start < samples.size(); start += window) {
        const std::size_t end = std::min(samples.size(), start + window);
        std::uint64_t sum = 0;
        for (std::size_t i = start; i < end; ++i) sum += samples[i];
        model.segment_sums.push_back(sum);
    }
    return model;
}

std::vector<Rational> paa_reconstruct(const PaaModel& model) {
    std::vector<Rational> out;
    out.reserve(model.original_length);
    for (std::size_t seg = 0; seg < model.segment_sums.size(); ++seg) {
        const std::size_t start = seg * model.window;
        const std::size_t end = std::min(model.original_length,
                                         start + static_cast<std::size_t>(model.window));
        const auto count = static_cast<std::int64_t>(end - start);
        for (std::size_t i = start; i < end; ++i)
            out.push_back(Rational{static_cast<std::int64_t>(model.segment_sums[seg]), count});
    }
    return out;
}

SwingingDoorModel sdt_compress(std::span<const GridValue> samples, Rational tolerance) {
    if (tolerance.den <= 0 || tolerance.num < 0)
        throw std::invalid_argument("sdt_compress: tolerance must be a nonnegative rational");
    SwingingDoorModel model{tolerance, samples.size(), {}};
    if (samples.empty()) return model;
    model.pivots.emplace_back(0, samples[0]);
    if (samples.size() == 1) return model;

    // Door slopes to candidate i from the anchor a, hinged at value +- eps:
    //   up_i   = (v_i - (v_a + eps)) / (t_i - t_a)
    //   down_i = (v_i - (v_a - eps)) / (t_i - t_a)
    // The corridor is open while max(up) <= min(down). Slopes are compared
    // exactly via cross-multiplication; den = eps.den * dt > 0.
    const std::int64_t en = tolerance.num, ed = tolerance.den;
    std::size_t anchor = 0;
    bool have_doors = false;
    Wide up_num = 0, up_den = 1, down_num = 0, down_den = 1;

    auto reset_doors = [&] { have_doors = false; };
    auto widen = [&](std::size_t i) {
        const auto dt = static_cast<std::int64_t>(i - anchor);
        const Wide num_up = static_cast<Wide>(samples[i]) * ed -
                            (static_cast<Wide>(samples[anchor]) * ed + en);
        const Wide num_down = static_cast<Wide>(samples[i]) * ed -
                              (static_cast<Wide>(samples[anchor]) * ed - en);
        const Wide den = static_cast<Wide>(ed) * dt;
        if (!have_doors) {
            up_num = num_up; up_den = den;
            down_num = num_down; down_den = den;
            have_doors = true;
            return;
        }
        if (num_up * up_den > up_num * den) { up_num = num_up; up_den = den; }
        if (num_down * down_den < down_num * den) { down_num = num_down; down_den = den; }
    };
    auto corridor_open = [&] { return up_num * down_den <= down_num * up_den; };

    for (std::size_t i = 1; i < samples.size(); ++i) {
        widen(i);
        if (!corridor_open()) {
            model.pivots.emplace_back(i - 1, samples[i - 1]);
            anchor = i - 1;
            reset_doors();
            widen(i);
        }
    }
    if (model.pivots.back().first != samples.size() - 1)
        model.pivots.emplace_back(samples.size() - 1, samples.back());
    return model;
}

std::vector<Rational> sdt_reconstruct(const SwingingDoorModel& model) {
    std::vector<Rational> out;
    out.reserve(model.original_length);
    if (model.pivots.empty()) return out;
    for (std::size_t p = 0; p + 1 < model.pivots.size(); ++p) {
        const auto [t0, v0] = model.pivots[p];
        const auto [t1, v1] = model.pivots[p + 1];
        const auto dt = static_cast<std::int64_t>(t1 - t0);
        for (std::size_t t = t0; t < t1; ++t) {
            const auto off = static_cast<std::int64_t>(t - t0);
            const std::int64_t num = static_cast<std::int64_t>(v0) * dt +
                                     (static_cast<std::int64_t>(v1) -
                                      static_cast<std::int64_t>(v0)) * off;
            out.push_back(Rational{num, dt});
        }
    }
    out.push_back(Rational{static_cast<std::int64_t>(model.pivots.back().second), 1});
    return out;
}

std::vector<GridValue> requantize(std::span<const Rational> values, Resolution res) {
    std::vector<GridValue> out;
    out.reserve(values.size());
    for (const Rational& r : values) {
        std::int64_t v = round_half_up(r);
        if (v < 0) v = 0;
        if (v > res.steps) v = res.steps;
        out.push_back(static_cast<GridValue>(v));
    }
    return out;
}

PreservationResult r_preservation_check(Resolution res,
                                        std::span<const GridValue> original,
                                        std::span<const GridValue> reconstructed) {
    if (original.size() != reconstructed.size())
        throw std::invalid_argument("r_preservation_check: length mismatch");
    const OracleResult a = oracle_stack(res, original);
    const OracleResult b = oracle_stack(res, reconstructed);
    if (a == b) return {true, ""};
    std::ostringstream witness;
    const std::size_t depth = std::min(a.stack.size(), b.stack.size());
    for (std::size_t i = 0; i < depth; ++i) {
        if (a.stack[i] != b.stack[i]) {
            witness << "vertex " << i << ": original (" << a.stack[i].max << ","
                    << a.stack[i].min << ") vs reconstruction (" << b.stack[i].max
                    << "," << b.stack[i].min << ")";
            return {false, witness.str()};
        }
    }
    if (a.stack.size() != b.stack.size()) {
        const auto& longer = a.stack.size() > b.stack.size() ? a : b;
        const char* side = a.stack.size() > b.stack.size() ? "original" : "reconstruction";
        witness << "vertex " << depth << ": (" << longer.stack[depth].max << ","
                << longer.stack[depth].min << ") present only in " << side;
        return {false, witness.str()};
    }
    witness << "pending/direction: original " << to_string(a)
            << " vs reconstruction " << to_string(b);
    return {false, witness.str()};
}

std::uint64_t paa_model_bits(const PaaModel& model, Resolution res) {
    const std::uint64_t per_segment =
        std::bit_width(static_cast<std::uint64_t>(model.window) * res.steps);
    return 64 + per_segment * model.segment_count();
}

std::uint64_t sdt_model_bits(const SwingingDoorModel& model, Resolution res) {
    return 64 + (32 + res.bits_per_sample()) * model.pivots.size();
}

}  // namespace pstack
