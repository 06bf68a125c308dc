#include "nkcsim/generate.hpp"

#include <algorithm>
#include <string>

#include "nkcsim/error.hpp"

namespace nkcsim {

namespace {

void push_random_step(Generation& out, std::vector<StepTrace>* trace, int index,
                      std::uint8_t state) {
    out.sequence.push_back(state);
    if (trace) {
        StepTrace t;
        t.index = index;
        t.random_draw = true;
        t.state = state;
        trace->push_back(std::move(t));
    }
}

void push_rule_step(Generation& out, std::vector<StepTrace>* trace, int index,
                    std::span<const std::uint8_t> window, int base_states,
                    const Rational& value, std::uint8_t state) {
    out.sequence.push_back(state);
    out.decision_values.push_back(value.value());
    if (trace) {
        StepTrace t;
        t.index = index;
        t.window.assign(window.begin(), window.end());
        t.base_states = base_states;
        t.value = value;
        t.state = state;
        trace->push_back(std::move(t));
    }
}

} // namespace

Generation generate_self_seeded_traced(const AgentSpec& spec, RngStream& rng,
                                       std::vector<StepTrace>* trace) {
    spec.validate();
    Generation out;
    out.sequence.reserve(static_cast<std::size_t>(spec.n));

    if (spec.rule == RuleKind::Hallucinatory || spec.k == 0) {
        // Memoryless search or an interdependence-free landscape: every
        // state is an independent fair draw.
        for (int i = 1; i <= spec.n; ++i) {
            push_random_step(out, trace, i, static_cast<std::uint8_t>(rng.fair_bit()));
        }
        return out;
    }

    for (int i = 1; i <= spec.k && i <= spec.n; ++i) {
        push_random_step(out, trace, i, static_cast<std::uint8_t>(rng.fair_bit()));
    }
    for (int i = spec.k + 1; i <= spec.n; ++i) {
        const auto window = std::span<const std::uint8_t>(out.sequence)
                                .subspan(out.sequence.size() - static_cast<std::size_t>(spec.k));
        const Rational value = decision_value(window, spec.rule);
        const auto state = static_cast<std::uint8_t>(apply_mode(value, spec.mode, rng));
        push_rule_step(out, trace, i, window, 0, value, state);
    }
    return out;
}

BitSequence generate_self_seeded(const AgentSpec& spec, RngStream& rng) {
    return generate_self_seeded_traced(spec, rng).sequence;
}

Generation generate_from_seed_window_traced(const BitSequence& base, int window_size,
                                            int target_len, RuleKind rule, UpdateMode mode,
                                            Perpetuation perpetuation, RngStream& rng,
                                            std::vector<StepTrace>* trace) {
    require_bits(base, "seed sequence");
    if (window_size < 1) {
        throw SimError(ErrorCode::InvalidInput,
                       "seed window size must be >= 1 (got " +
                           std::to_string(window_size) + ")");
    }
    if (static_cast<std::size_t>(window_size) > base.size()) {
        throw SimError(ErrorCode::InvalidSeed,
                       "seed window size " + std::to_string(window_size) +
                           " exceeds the seed sequence length " +
                           std::to_string(base.size()));
    }
    if (target_len < 1) {
        throw SimError(ErrorCode::InvalidInput,
                       "target length must be >= 1 (got " +
                           std::to_string(target_len) + ")");
    }

    const auto base_len = static_cast<int>(base.size());
    const auto width = static_cast<std::size_t>(window_size);

    // Virtual tape: the seed followed by everything generated so far.
    BitSequence tape = base;
    tape.reserve(base.size() + static_cast<std::size_t>(target_len));

    Generation out;
    out.sequence.reserve(static_cast<std::size_t>(target_len));

    for (int i = 1; i <= target_len; ++i) {
        const bool fading = i <= base_len;
        if (!fading && perpetuation == Perpetuation::Hallucinatory) {
            const auto state = static_cast<std::uint8_t>(rng.fair_bit());
            push_random_step(out, trace, i, state);
            tape.push_back(state);
            continue;
        }
        // While the seed is still in scope the window slides across the
        // tape from the front (positions i..i+C-1); once the seed is
        // exhausted the window is the C most recent own states.
        const std::size_t start = fading ? static_cast<std::size_t>(i - 1)
                                         : tape.size() - width;
        const auto window = std::span<const std::uint8_t>(tape).subspan(start, width);
        const int base_states =
            fading ? std::min(window_size, base_len - (i - 1)) : 0;
        const Rational value = decision_value(window, rule);
        const auto state = static_cast<std::uint8_t>(apply_mode(value, mode, rng));
        push_rule_step(out, trace, i, window, base_states, value, state);
        tape.push_back(state);
    }
    return out;
}

BitSequence generate_from_seed_window(const BitSequence& base, int window_size,
                                      int target_len, RuleKind rule, UpdateMode mode,
                                      Perpetuation perpetuation, RngStream& rng) {
    return generate_from_seed_window_traced(base, window_size, target_len, rule, mode,
                                            perpetuation, rng)
        .sequence;
}

} // namespace nkcsim
