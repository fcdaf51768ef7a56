#include "pstack/stack_engine.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace pstack {

EngineState initial_state(Resolution res, GridValue u0) {
    if (!res.contains(u0)) throw std::invalid_argument("initial_state: sample off the grid");
    EngineState s{res, {}, std::nullopt, u0,
                  u0 > 0 ? Direction::Rising : Direction::None, 1};
    return s;
}

StepEvent step(EngineState& s, GridValue u) {
    if (!s.resolution.contains(u)) throw std::invalid_argument("step: sample off the grid");
    StepEvent ev;
    ++s.samples_seen;
    if (u == s.current) return ev;  // flat segment

    const Direction fresh = direction_of(s.current, u);
    if (s.direction != Direction::None && fresh != s.direction) {
        const GridValue confirmed = s.current;
        if (s.direction == Direction::Rising) {
            // confirmed maximum: wipe every corner it dominates
            assert(!s.pending_max);
            while (!s.stack.empty() && s.stack.back().max <= confirmed) {
                s.stack.pop_back();
                ++ev.pops;
            }
            s.pending_max = confirmed;
            ev.confirmed = ConfirmedExtremum{confirmed, ExtremumKind::Maximum};
        } else {
            // confirmed minimum: wipe corners it undercuts, then pair it
            // with the outermost erased maximum (or the pending one when
            // nothing was erased)
            std::optional<GridValue> outermost;
            while (!s.stack.empty() && s.stack.back().min >= confirmed) {
                outermost = s.stack.back().max;
                s.stack.pop_back();
                ++ev.pops;
            }
            GridValue paired_max;
            if (outermost) {
                paired_max = *outermost;
            } else if (s.pending_max) {
                paired_max = *s.pending_max;
            } else {
                // unreachable under the virtual-prehistory convention
                throw std::logic_error("step: minimum confirmed with no maximum to pair");
            }
            s.stack.push_back(VertexPair{paired_max, confirmed});
            s.pending_max.reset();
            ev.pushed = s.stack.back();
            ev.confirmed = ConfirmedExtremum{confirmed, ExtremumKind::Minimum};
        }
    }
    s.current = u;
    s.direction = fresh;
    return ev;
}

EngineState run(Resolution res, std::span<const GridValue> samples) {
    if (samples.empty()) throw std::invalid_argument("run: empty sequence");
    EngineState s = initial_state(res, samples[0]);
    for (std::size_t i = 1; i < samples.size(); ++i) step(s, samples[i]);
    return s;
}

OracleResult oracle_stack(Resolution res, std::span<const GridValue> samples) {
    if (samples.empty()) throw std::invalid_argument("oracle_stack: empty sequence");
    for (GridValue v : samples)
        if (!res.contains(v)) throw std::invalid_argument("oracle_stack: sample off the grid");

    // zero-prefixed, flat-collapsed history
    std::vector<GridValue> w;
    w.reserve(samples.size() + 1);
    w.push_back(0);
    for (GridValue v : samples)
        if (v != w.back()) w.push_back(v);

    OracleResult out;
    if (w.size() >= 2) out.direction = direction_of(w[w.size() - 2], w.back());

    // confirmed extrema = interior turning points (strict, thanks to the
    // collapse), alternating maximum, minimum, ...
    std::vector<GridValue> turns;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const bool is_max = w[i] > w[i - 1] && w[i] > w[i + 1];
        const bool is_min = w[i] < w[i - 1] && w[i] < w[i + 1];
        if (is_max || is_min) turns.push_back(w[i]);
    }

    // dominant-extrema recursion, last attainment on ties
    std::size_t lo = 0;
    while (lo < turns.size()) {
        std::size_t at_max = lo;
        for (std::size_t i = lo; i < turns.size(); ++i)
            if (turns[i] >= turns[at_max]) at_max = i;
        if (at_max + 1 == turns.size()) {
            // dominant maximum with no confirmed minimum after it
            out.pending = turns[at_max];
            break;
        }
        std::size_t at_min = at_max + 1;
        for (std::size_t i = at_max + 1; i < turns.size(); ++i)
            if (turns[i] <= turns[at_min]) at_min = i;
        out.stack.push_back(VertexPair{turns[at_max], turns[at_min]});
        lo = at_min + 1;
    }
    return out;
}

PopProfile pop_count_profile(Resolution res, std::span<const GridValue> samples) {
    if (samples.empty()) throw std::invalid_argument("pop_count_profile: empty sequence");
    PopProfile profile;
    profile.pops_per_step.reserve(samples.size() - 1);
    EngineState s = initial_state(res, samples[0]);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const StepEvent ev = step(s, samples[i]);
        profile.pops_per_step.push_back(ev.pops);
        profile.total_pops += ev.pops;
        if (ev.pushed) ++profile.total_pushes;
        profile.max_single_step_pops = std::max(profile.max_single_step_pops, ev.pops);
    }
    return profile;
}

std::optional<std::string> stack_violation(std::span<const VertexPair> stack, Resolution res) {
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const auto& v = stack[i];
        if (!res.contains(v.max) || !res.contains(v.min))
            return "vertex " + std::to_string(i) + " off the grid";
        if (v.max <= v.min)
            return "vertex " + std::to_string(i) + ": max <= min";
        if (i > 0) {
            if (stack[i - 1].max <= v.max)
                return "maxima not strictly decreasing at " + std::to_string(i);
            if (stack[i - 1].min >= v.min)
                return "minima not strictly increasing at " + std::to_string(i);
        }
    }
    return std::nullopt;
}

std::optional<std::string> state_violation(const EngineState& s) {
    if (auto bad = stack_violation(s.stack, s.resolution)) return bad;
    if (!s.resolution.contains(s.current)) return std::string("current off the grid");
    if (s.pending_max) {
        if (!s.resolution.contains(*s.pending_max)) return std::string("pending off the grid");
        if (*s.pending_max < 1) return std::string("pending maximum is 0");
        if (!s.stack.empty()) {
            if (*s.pending_max >= s.stack.back().max)
                return std::string("pending not below innermost maximum");
            if (*s.pending_max <= s.stack.back().min)
                return std::string("pending not above innermost minimum");
        }
        if (s.direction != Direction::Falling)
            return std::string("pending present but not descending");
        if (s.current >= *s.pending_max)
            return std::string("current not below pending maximum");
    } else if (s.direction == Direction::Falling) {
        return std::string("descending with no pending maximum");
    }
    if (s.direction == Direction::None &&
        (s.current != 0 || !s.stack.empty() || s.pending_max)) {
        return std::string("direction none outside the all-flat-at-zero state");
    }
    if (s.direction == Direction::Rising) {
        const GridValue floor = s.stack.empty() ? 0 : s.stack.back().min;
        if (s.current <= floor) return std::string("rising but current not above last minimum");
    }
    if (s.samples_seen > 0) {
        const std::uint64_t n = s.samples_seen - 1;
        if (s.stack.size() > n / 2 + 1) return std::string("depth bound exceeded");
    }
    return std::nullopt;
}

std::string to_string(const EngineState& s) {
    std::ostringstream os;
    os << "{L=" << s.resolution.steps << " stack=[";
    for (std::size_t i = 0; i < s.stack.size(); ++i)
        os << (i ? " " : "") << "(" << s.stack[i].max << "," << s.stack[i].min << ")";
    os << "] pending=";
    if (s.pending_max) os << *s.pending_max; else os << "-";
    os << " current=" << s.current << " dir=" << to_string(s.direction) << "}";
    return os.str();
}

std::string to_string(const OracleResult& o) {
    std::ostringstream os;
    os << "{stack=[";
    for (std::size_t i = 0; i < o.stack.size(); ++i)
        os << (i ? " " : "") << "(" << o.stack[i].max << "," << o.stack[i].min << ")";
    os << "] pending=";
    if (o.pending) os << *o.pending; else os << "-";
    os << " dir=" << to_string(o.direction) << "}";
    return os.str();
}

}  // namespace pstack
