#include "nkcsim/adaptation.hpp"

#include "nkcsim/error.hpp"

namespace nkcsim {

const char* rule_name(RuleKind rule) {
    switch (rule) {
        case RuleKind::HeuristicLinear: return "heuristic_linear";
        case RuleKind::RuleUniform: return "rule_uniform";
        case RuleKind::Hallucinatory: return "hallucinatory";
    }
    return "unknown";
}

Rational decision_value(std::span<const std::uint8_t> window, RuleKind rule) {
    if (rule == RuleKind::Hallucinatory) {
        throw SimError(ErrorCode::UnsupportedRule,
                       "the hallucinatory rule has no decision value");
    }
    require_bits(window, "window");

    const auto w = static_cast<std::int64_t>(window.size());
    std::int64_t num = 0;
    if (rule == RuleKind::HeuristicLinear) {
        for (std::int64_t j = 1; j <= w; ++j) {
            num += j * window[static_cast<std::size_t>(j - 1)];
        }
        return Rational{num, w * (w + 1) / 2};
    }
    for (auto b : window) num += b;
    return Rational{num, w};
}

int apply_mode(const Rational& value, UpdateMode mode, RngStream& rng) {
    if (mode.kind == UpdateMode::Kind::Threshold) {
        const int cmp = value.compare_half();
        if (cmp > 0) return 1;
        if (cmp < 0) return 0;
        return mode.tie_maps_to_one ? 1 : 0;
    }
    return rng.bernoulli(value.value()) ? 1 : 0;
}

int next_state(std::span<const std::uint8_t> window, RuleKind rule,
               UpdateMode mode, RngStream& rng) {
    if (rule == RuleKind::Hallucinatory) {
        return rng.fair_bit();
    }
    return apply_mode(decision_value(window, rule), mode, rng);
}

} // namespace nkcsim
