#include "nkcsim/worked.hpp"

#include <cstdio>
#include <vector>

#include "nkcsim/generate.hpp"

namespace nkcsim {

namespace {

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s = "[";
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i) s += ",";
        s += bits[i] ? "1" : "0";
    }
    return s + "]";
}

struct ExpectedRow {
    std::vector<std::uint8_t> window;
    int base_states;
    std::int64_t value_num; // over denominator 4
    int state;
    const char* source;
};

// The seeded-AI tables: n_h = 6, C = 4, n_ai = 8, uniform rule, threshold
// with ties to 0. Rows 1-6 are the memory-fading phase, rows 7-8 the
// rule-based perpetuation.
const std::vector<ExpectedRow>& expected_rows() {
    static const std::vector<ExpectedRow> rows = {
        {{1, 0, 1, 1}, 4, 3, 1, "seed"},
        {{0, 1, 1, 0}, 4, 2, 0, "seed"},
        {{1, 1, 0, 1}, 4, 3, 1, "seed"},
        {{1, 0, 1, 1}, 3, 3, 1, "seed + own states"},
        {{0, 1, 1, 0}, 2, 2, 0, "seed + own states"},
        {{1, 1, 0, 1}, 1, 3, 1, "seed + own states"},
        {{1, 1, 0, 1}, 0, 3, 1, "own states"},
        {{1, 0, 1, 1}, 0, 3, 1, "own states"},
    };
    return rows;
}

const BitSequence& golden_sequence() {
    static const BitSequence seq = {1, 0, 1, 1, 0, 1, 1, 1};
    return seq;
}

void row_line(std::string& text, int index, const std::string& computed,
              const std::string& expected, bool ok) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "  x_%d  computed %-28s expected %-28s %s\n", index,
                  computed.c_str(), expected.c_str(), ok ? "ok" : "MISMATCH");
    text += buf;
}

} // namespace

WorkedReport show_worked_examples() {
    WorkedReport report;
    auto check = [&report](bool ok) {
        if (!ok) report.ok = false;
        return ok;
    };

    const BitSequence base = {1, 0, 1, 1, 0, 1};

    report.text += "Seeded AI search, rule-based perpetuation\n";
    report.text += "  seed " + bits_to_string(base) + ", window 4, target 8, "
                   "uniform rule, threshold (tie -> 0)\n";
    {
        std::vector<StepTrace> trace;
        RngStream rng(0); // threshold mode never consults the stream
        const Generation gen = generate_from_seed_window_traced(
            base, 4, 8, RuleKind::RuleUniform, UpdateMode::threshold(false),
            Perpetuation::RuleBased, rng, &trace);

        for (std::size_t i = 0; i < trace.size(); ++i) {
            const auto& step = trace[i];
            const auto& want = expected_rows()[i];
            char computed[128], expected[128];
            std::snprintf(computed, sizeof computed, "%s %lld/4 -> %d",
                          bits_to_string(step.window).c_str(),
                          static_cast<long long>(step.value.num), int(step.state));
            std::snprintf(expected, sizeof expected, "%s %lld/4 -> %d",
                          bits_to_string(want.window).c_str(),
                          static_cast<long long>(want.value_num), want.state);
            const bool ok = check(step.window == want.window &&
                                  step.base_states == want.base_states &&
                                  step.value == Rational{want.value_num, 4} &&
                                  step.state == want.state);
            row_line(report.text, step.index, computed, expected, ok);
        }
        const bool seq_ok = check(gen.sequence == golden_sequence());
        report.text += "  sequence  computed " + bits_to_string(gen.sequence) +
                       "  expected " + bits_to_string(golden_sequence()) +
                       (seq_ok ? "  ok\n" : "  MISMATCH\n");
    }

    report.text += "\nSeeded AI search, hallucinatory perpetuation\n";
    {
        std::vector<StepTrace> trace;
        RngStream rng(1234);
        const Generation gen = generate_from_seed_window_traced(
            base, 4, 8, RuleKind::RuleUniform, UpdateMode::threshold(false),
            Perpetuation::Hallucinatory, rng, &trace);

        const BitSequence head(gen.sequence.begin(), gen.sequence.begin() + 6);
        const BitSequence want_head(golden_sequence().begin(),
                                    golden_sequence().begin() + 6);
        const bool head_ok = check(head == want_head);
        report.text += "  states 1-6  computed " + bits_to_string(head) +
                       "  expected " + bits_to_string(want_head) +
                       (head_ok ? "  ok\n" : "  MISMATCH\n");
        const bool tail_ok = check(trace[6].random_draw && trace[7].random_draw);
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "  states 7-8  drawn at random: %d, %d (fair coin)%s\n",
                      int(gen.sequence[6]), int(gen.sequence[7]),
                      tail_ok ? "  ok" : "  MISMATCH");
        report.text += buf;
    }

    report.text += "\nWindow value on [0,0,0,1,1]\n";
    {
        const BitSequence window = {0, 0, 0, 1, 1};
        const Rational h = decision_value(window, RuleKind::HeuristicLinear);
        const bool h_ok = check(h.num == 9 && h.den == 15);
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "  recency-weighted  computed %lld/%lld = %g  expected 9/15 = 0.6"
                      "  %s\n",
                      static_cast<long long>(h.num), static_cast<long long>(h.den),
                      h.value(), h_ok ? "ok" : "MISMATCH");
        report.text += buf;

        const Rational u = decision_value(window, RuleKind::RuleUniform);
        const bool u_ok = check(u.num == 2 && u.den == 5);
        std::snprintf(buf, sizeof buf,
                      "  uniform           computed %lld/%lld = %g  expected 2/5 = 0.4"
                      "   %s\n",
                      static_cast<long long>(u.num), static_cast<long long>(u.den),
                      u.value(), u_ok ? "ok" : "MISMATCH");
        report.text += buf;
        report.text +=
            "  hallucinatory     fair coin, Pr(next = 1) = 0.5 by definition\n";
    }

    report.text += report.ok ? "\nall worked examples reproduced\n"
                             : "\nWORKED EXAMPLE MISMATCH\n";
    return report;
}

} // namespace nkcsim
