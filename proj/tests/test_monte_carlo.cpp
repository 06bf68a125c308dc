#include <doctest.h>

#include <algorithm>
#include <vector>

#include "nkcsim/monte_carlo.hpp"

using namespace nkcsim;

namespace {

TaskConfig stochastic_cfg() {
    TaskConfig cfg;
    cfg.kind = TaskKind::Modular;
    cfg.agent_h = AgentSpec{Role::Human, 10, 2, RuleKind::HeuristicLinear,
                            UpdateMode::probabilistic()};
    cfg.agent_ai = AgentSpec{Role::AI, 30, 4, RuleKind::RuleUniform,
                             UpdateMode::probabilistic()};
    return cfg;
}

} // namespace

TEST_CASE("a single run aggregates to itself") {
    const TaskConfig cfg = stochastic_cfg();
    std::vector<RunOutcome> runs;
    const MonteCarloResult mc = monte_carlo(cfg, 1, RngPolicy{7}, 3, 1, &runs);
    REQUIRE(runs.size() == 1);
    CHECK(mc.mean_po_h == runs[0].po_h);
    CHECK(mc.mean_po_ai == runs[0].po_ai);
    CHECK(mc.mean_apo == runs[0].apo);
    CHECK(mc.std_error_apo == 0.0);
    CHECK(mc.mean_peaks_step1 == double(runs[0].peaks_step1));
    CHECK(mc.mean_peaks_step2 == double(runs[0].peaks_step2));
}

TEST_CASE("worker count never changes the result") {
    const TaskConfig cfg = stochastic_cfg();
    const MonteCarloResult one = monte_carlo(cfg, 500, RngPolicy{99}, 12, 1);
    const MonteCarloResult four = monte_carlo(cfg, 500, RngPolicy{99}, 12, 4);
    const MonteCarloResult eight = monte_carlo(cfg, 500, RngPolicy{99}, 12, 8);
    CHECK(one.mean_po_h == four.mean_po_h);
    CHECK(one.mean_po_ai == four.mean_po_ai);
    CHECK(one.mean_apo == four.mean_apo);
    CHECK(one.std_error_apo == four.std_error_apo);
    CHECK(one.mean_peaks_step1 == four.mean_peaks_step1);
    CHECK(one.mean_apo == eight.mean_apo);
    CHECK(one.std_error_apo == eight.std_error_apo);
}

TEST_CASE("aggregates derive from the per-run outcomes in any order") {
    const TaskConfig cfg = stochastic_cfg();
    std::vector<RunOutcome> runs;
    const MonteCarloResult mc = monte_carlo(cfg, 400, RngPolicy{31}, 0, 1, &runs);

    std::reverse(runs.begin(), runs.end());
    std::int64_t ones_h = 0, ones_ai = 0;
    for (const auto& run : runs) {
        ones_h += run.ones_h;
        ones_ai += run.ones_ai;
    }
    CHECK(mc.mean_po_h == double(ones_h) / (400.0 * 10.0));
    CHECK(mc.mean_po_ai == double(ones_ai) / (400.0 * 30.0));
    CHECK(mc.mean_apo == (mc.mean_po_h + mc.mean_po_ai) * 0.5);
}

TEST_CASE("standard error shrinks like one over sqrt n") {
    const TaskConfig cfg = stochastic_cfg();
    const MonteCarloResult small = monte_carlo(cfg, 1000, RngPolicy{5}, 0);
    const MonteCarloResult large = monte_carlo(cfg, 4000, RngPolicy{6}, 0);
    REQUIRE(small.std_error_apo > 0.0);
    REQUIRE(large.std_error_apo > 0.0);
    const double shrink = small.std_error_apo / large.std_error_apo;
    CHECK(shrink > 2.0 * 0.8);
    CHECK(shrink < 2.0 * 1.2);
}

TEST_CASE("per-run identity holds bit-exactly across a full batch") {
    const TaskConfig cfg = stochastic_cfg();
    std::vector<RunOutcome> runs;
    monte_carlo(cfg, 1000, RngPolicy{123}, 0, 1, &runs);
    for (const auto& run : runs) {
        CHECK(run.apo == (run.po_h + run.po_ai) * 0.5);
    }
}
