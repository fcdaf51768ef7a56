#include "pstack/preisach.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pstack/rng.hpp"

namespace pstack {

namespace {

void check_cell(ThresholdCell cell, Resolution res) {
    if (cell.alpha <= cell.beta)
        throw std::invalid_argument("measure cell: alpha must exceed beta");
    if (!res.contains(cell.alpha))
        throw std::invalid_argument("measure cell: alpha off the grid");
}

}  // namespace

void PreisachMeasure::set_weight(ThresholdCell cell, std::uint64_t weight) {
    check_cell(cell, res_);
    if (weight == 0)
        weights_.erase(cell);
    else
        weights_[cell] = weight;
}

void PreisachMeasure::add_weight(ThresholdCell cell, std::uint64_t weight) {
    check_cell(cell, res_);
    if (weight == 0) return;
    weights_[cell] += weight;
}

std::uint64_t PreisachMeasure::weight(ThresholdCell cell) const {
    auto it = weights_.find(cell);
    return it == weights_.end() ? 0 : it->second;
}

std::uint64_t PreisachMeasure::total_weight() const {
    std::uint64_t total = 0;
    for (const auto& [cell, w] : weights_) total += w;
    return total;
}

int relay_step(GridValue alpha, GridValue beta, int state, GridValue input) {
    if (alpha <= beta) throw std::invalid_argument("relay_step: alpha must exceed beta");
    if (state != 1 && state != -1) throw std::invalid_argument("relay_step: state must be +-1");
    if (input >= alpha) return 1;
    if (input <= beta) return -1;
    return state;
}

std::int64_t direct_output(const PreisachMeasure& measure, std::span<const GridValue> samples) {
    if (samples.empty()) throw std::invalid_argument("direct_output: empty sequence");
    const Resolution res = measure.resolution();
    for (GridValue v : samples)
        if (!res.contains(v)) throw GridMismatchError("direct_output: sample off the measure's grid");
    std::int64_t total = 0;
    for (const auto& [cell, w] : measure.cells()) {
        int state = -1;  // virtual input 0: 0 <= beta for every cell
        for (GridValue v : samples) state = relay_step(cell.alpha, cell.beta, state, v);
        total += state * static_cast<std::int64_t>(w);
    }
    return total;
}

std::int64_t staircase_output(const PreisachMeasure& measure, const EngineState& state) {
    if (measure.resolution() != state.resolution)
        throw GridMismatchError("staircase_output: measure and state resolutions differ");
    std::vector<GridValue> reduced;
    reduced.reserve(2 * state.stack.size() + 3);
    reduced.push_back(0);
    for (const VertexPair& v : state.stack) {
        reduced.push_back(v.max);
        reduced.push_back(v.min);
    }
    if (state.pending_max) reduced.push_back(*state.pending_max);
    reduced.push_back(state.current);
    return direct_output(measure, reduced);
}

PreisachMeasure uniform_measure(Resolution res) {
    if (res.steps > 2048)
        throw std::invalid_argument("uniform_measure: steps > 2048 not supported");
    PreisachMeasure m(res);
    for (GridValue alpha = 1; alpha <= res.steps; ++alpha)
        for (GridValue beta = 0; beta < alpha; ++beta)
            m.set_weight({alpha, beta}, 1);
    return m;
}

PreisachMeasure random_measure(Resolution res, std::uint64_t seed) {
    Rng rng(seed);
    PreisachMeasure m(res);
    const std::uint64_t draws = 1 + rng.below(64);
    for (std::uint64_t i = 0; i < draws; ++i) {
        const auto alpha = static_cast<GridValue>(1 + rng.below(res.steps));
        const auto beta = static_cast<GridValue>(rng.below(alpha));
        m.add_weight({alpha, beta}, 1 + rng.below(16));
    }
    return m;
}

PreisachMeasure load_measure(std::istream& in, Resolution res) {
    PreisachMeasure m(res);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line.substr(start));
        std::uint64_t alpha = 0, beta = 0, weight = 0;
        char c1 = 0, c2 = 0;
        if (!(fields >> alpha >> c1 >> beta >> c2 >> weight) || c1 != ',' || c2 != ',')
            throw ParseError("expected \"alpha,beta,weight\"", lineno);
        std::string rest;
        if (fields >> rest && !rest.empty() && rest[0] != '#')
            throw ParseError("trailing data after weight", lineno);
        if (alpha <= beta) throw ParseError("alpha must exceed beta", lineno);
        if (alpha > res.steps) throw ParseError("alpha off the grid", lineno);
        m.add_weight({static_cast<GridValue>(alpha), static_cast<GridValue>(beta)}, weight);
    }
    return m;
}

PreisachMeasure load_measure_file(const std::string& path, Resolution res) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open measure file: " + path);
    return load_measure(in, res);
}

void save_measure(std::ostream& out, const PreisachMeasure& measure) {
    for (const auto& [cell, w] : measure.cells())
        out << cell.alpha << ',' << cell.beta << ',' << w << '\n';
}

}  // namespace pstack
