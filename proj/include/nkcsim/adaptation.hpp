#pragma once

#include <cstdint>
#include <span>

#include "nkcsim/bitseq.hpp"
#include "nkcsim/rational.hpp"
#include "nkcsim/rng.hpp"

namespace nkcsim {

// How an agent turns its recent decision states into the next one.
//   HeuristicLinear: recency-weighted average, weights 1..W, newest heaviest.
//   RuleUniform:     plain average over the window.
//   Hallucinatory:   no memory at all; every state is a fair coin flip.
enum class RuleKind {
    HeuristicLinear,
    RuleUniform,
    Hallucinatory,
};

// The model's equations read "1 if value >= 0.5" while the worked tables map
// a value of exactly 0.5 to 0; both tie conventions are supported and the
// table's one (tie -> 0) is the default. Probabilistic updating instead
// treats the value as a Bernoulli success probability.
struct UpdateMode {
    enum class Kind { Threshold, Probabilistic };

    Kind kind = Kind::Probabilistic;
    bool tie_maps_to_one = false;

    static UpdateMode threshold(bool tie_to_one = false) {
        return UpdateMode{Kind::Threshold, tie_to_one};
    }
    static UpdateMode probabilistic() {
        return UpdateMode{Kind::Probabilistic, false};
    }

    bool operator==(const UpdateMode&) const = default;
};

const char* rule_name(RuleKind rule);

// Weighted window mean, exact. Window is oldest-first; HeuristicLinear gives
// weight j to position j so the newest state carries weight W. Rejects empty
// windows and the Hallucinatory rule (which has no decision value).
Rational decision_value(std::span<const std::uint8_t> window, RuleKind rule);

// Applies an update mode to an already-computed decision value.
int apply_mode(const Rational& value, UpdateMode mode, RngStream& rng);

// Next decision state. Consults the RNG only for Probabilistic mode or the
// Hallucinatory rule; Threshold mode is a pure function of the window.
int next_state(std::span<const std::uint8_t> window, RuleKind rule,
               UpdateMode mode, RngStream& rng);

} // namespace nkcsim
