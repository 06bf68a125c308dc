#pragma once

#include <cstdint>
#include <vector>

#include "nkcsim/agent.hpp"
#include "nkcsim/bitseq.hpp"

namespace nkcsim {

// What the following agent does once the leading agent's states have left
// its window: keep applying the rule to its own output, or abandon
// structure and draw every further state at random.
enum class Perpetuation { RuleBased, Hallucinatory };

// Per-step instrumentation: the exact window a state was computed from and
// how many of those states came from the seeding sequence. random_draw
// marks states that bypassed the rule (initial block, hallucination).
struct StepTrace {
    int index = 0;                     // 1-based generated index
    std::vector<std::uint8_t> window;  // empty for random draws
    int base_states = 0;               // leading-agent states in the window
    Rational value{};                  // decision value; meaningless for random draws
    bool random_draw = false;
    std::uint8_t state = 0;
};

// Sequence plus its decision-value trajectory (one entry per rule-driven
// step, in generation order). The trajectory is what local-peak counting
// operates on.
struct Generation {
    BitSequence sequence;
    std::vector<double> decision_values;
};

// Self-seeded search of length spec.n: the first max(k, 1) states are fair
// Bernoulli draws, every later state comes from the rule applied to the k
// most recent. k = 0 (and the Hallucinatory rule) degenerate to n
// independent fair draws.
BitSequence generate_self_seeded(const AgentSpec& spec, RngStream& rng);
Generation generate_self_seeded_traced(const AgentSpec& spec, RngStream& rng,
                                       std::vector<StepTrace>* trace = nullptr);

// Search seeded by another agent's output. The tape is base followed by the
// generated states. While state i (1-based) still overlaps the base
// (i <= |base|) its window is tape positions i..i+C-1, so the base fades
// from the window one position per step; from i > |base| the window is the
// C most recent own states, i.e. C takes over the role of k. Under
// Perpetuation::Hallucinatory those post-fade states are fair draws instead.
BitSequence generate_from_seed_window(const BitSequence& base, int window_size,
                                      int target_len, RuleKind rule, UpdateMode mode,
                                      Perpetuation perpetuation, RngStream& rng);
Generation generate_from_seed_window_traced(const BitSequence& base, int window_size,
                                            int target_len, RuleKind rule, UpdateMode mode,
                                            Perpetuation perpetuation, RngStream& rng,
                                            std::vector<StepTrace>* trace = nullptr);

} // namespace nkcsim
