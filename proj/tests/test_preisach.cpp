#include "doctest.h"

#include <sstream>
#include <vector>

#include "pstack/preisach.hpp"
#include "pstack/queries.hpp"
#include "pstack/rng.hpp"
#include "pstack/verify.hpp"

using namespace pstack;

TEST_CASE("relay switching") {
    CHECK(relay_step(7, 2, -1, 7) == 1);   // upper threshold reached
    CHECK(relay_step(7, 2, +1, 2) == -1);  // lower threshold reached
    CHECK(relay_step(7, 2, +1, 5) == 1);   // hysteretic hold
    CHECK(relay_step(7, 2, -1, 5) == -1);
    CHECK_THROWS_AS(relay_step(2, 2, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(relay_step(2, 7, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(relay_step(7, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("direct output: three-relay hand simulation") {
    const Resolution r(2);
    PreisachMeasure m(r);
    m.set_weight({1, 0}, 1);
    m.set_weight({2, 0}, 1);
    m.set_weight({2, 1}, 1);
    CHECK(direct_output(m, std::vector<GridValue>{0, 2, 1}) == 1);  // states +1,+1,-1
    CHECK(direct_output(m, std::vector<GridValue>{0}) == -3);
    const PreisachMeasure empty(r);
    CHECK(direct_output(empty, std::vector<GridValue>{0, 2, 1}) == 0);
}

TEST_CASE("staircase output equals direct output on the frozen examples") {
    const Resolution r2(2);
    PreisachMeasure m(r2);
    m.set_weight({1, 0}, 1);
    m.set_weight({2, 0}, 1);
    m.set_weight({2, 1}, 1);
    const std::vector<GridValue> u{0, 2, 1};
    const EngineState s = run(r2, u);
    CHECK(s.pending_max == GridValue{2});
    CHECK(staircase_output(m, s) == 1);

    const Resolution r10(10);
    const PreisachMeasure uni10 = uniform_measure(r10);
    const EngineState fresh = initial_state(r10, 0);
    CHECK(staircase_output(uni10, fresh) ==
          -static_cast<std::int64_t>(uni10.total_weight()));

    const std::vector<GridValue> w{1, 9, 2, 7, 4, 6};
    CHECK(staircase_output(uni10, run(r10, w)) == direct_output(uni10, w));
    // staircase picture: up-region {a<=6} + {a<=7,b<=3} + {a<=9,b<=1}
    // = 29 cells up, 26 down
    CHECK(direct_output(uni10, w) == 3);
}

TEST_CASE("measure fixtures") {
    CHECK(uniform_measure(Resolution(2)).cell_count() == 3);
    CHECK(uniform_measure(Resolution(2)).total_weight() == 3);
    CHECK(uniform_measure(Resolution(10)).cell_count() == 55);
    const PreisachMeasure a = random_measure(Resolution(10), 42);
    const PreisachMeasure b = random_measure(Resolution(10), 42);
    CHECK(a == b);
    CHECK(a.cell_count() > 0);
    for (const auto& [cell, w] : a.cells()) {
        CHECK(cell.alpha > cell.beta);
        CHECK(w > 0);
    }
    CHECK(random_measure(Resolution(10), 43).cells() != a.cells());
}

TEST_CASE("grid mismatch is rejected") {
    const PreisachMeasure m = uniform_measure(Resolution(10));
    CHECK_THROWS_AS(direct_output(m, std::vector<GridValue>{0, 11}), GridMismatchError);
    const EngineState s = initial_state(Resolution(20), 0);
    CHECK_THROWS_AS(staircase_output(m, s), GridMismatchError);
    CHECK_THROWS_AS(direct_output(m, std::vector<GridValue>{}), std::invalid_argument);
}

TEST_CASE("measure file round trip and parse errors") {
    const PreisachMeasure m = random_measure(Resolution(10), 7);
    std::ostringstream out;
    save_measure(out, m);
    std::istringstream in(out.str());
    CHECK(load_measure(in, Resolution(10)) == m);

    std::istringstream commented("# header\n2,0,5\n\n  # indented comment\n7,3,1\n");
    const PreisachMeasure c = load_measure(commented, Resolution(10));
    CHECK(c.weight({2, 0}) == 5);
    CHECK(c.weight({7, 3}) == 1);

    std::istringstream bad("2,0,5\nnot,a,number\n");
    try {
        load_measure(bad, Resolution(10));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    std::istringstream inverted("0,2,5\n");
    CHECK_THROWS_AS(load_measure(inverted, Resolution(10)), ParseError);
    std::istringstream off_grid("11,2,5\n");
    CHECK_THROWS_AS(load_measure(off_grid, Resolution(10)), ParseError);
}

TEST_CASE("fuzz: sufficiency, direct == staircase exactly") {
    const std::vector<std::uint32_t> resolutions{2, 4, 10, 64};
    for (std::uint64_t trial = 0; trial < 250; ++trial) {
        const Resolution res(resolutions[trial % resolutions.size()]);
        auto u = verify::fuzz_stream(res, 555, trial, 96);
        const PreisachMeasure m = trial % 5 == 0 ? uniform_measure(res)
                                                 : random_measure(res, mix_seed(555, trial));
        CAPTURE(trial);
        CHECK(direct_output(m, u) == staircase_output(m, run(res, u)));
    }
}

TEST_CASE("fuzz: dilation leaves the direct output unchanged") {
    const Resolution res(10);
    for (std::uint64_t trial = 0; trial < 150; ++trial) {
        auto u = verify::fuzz_stream(res, 999, trial, 64);
        const auto v = dilate(u, mix_seed(999, trial));
        const PreisachMeasure m = random_measure(res, trial);
        CAPTURE(trial);
        CHECK(direct_output(m, u) == direct_output(m, v));
    }
}

TEST_CASE("output bounded by the total weight") {
    const Resolution res(10);
    const PreisachMeasure m = uniform_measure(res);
    const auto total = static_cast<std::int64_t>(m.total_weight());
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const auto u = verify::fuzz_stream(res, 31337, trial, 64);
        const std::int64_t out = direct_output(m, u);
        CHECK(out <= total);
        CHECK(out >= -total);
    }
    CHECK(direct_output(m, std::vector<GridValue>{0, 0, 0}) == -total);
}
