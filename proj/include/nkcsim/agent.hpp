#pragma once

#include "nkcsim/adaptation.hpp"

namespace nkcsim {

enum class Role { Human, AI };

// One agent's search parameters: search-space size n, interdependence
// window k (how many recent states feed the next update), adaptation rule
// and update mode. Humans adapt heuristically; AI agents adapt by rule or
// hallucinate.
struct AgentSpec {
    Role role = Role::Human;
    int n = 1;
    int k = 0;
    RuleKind rule = RuleKind::HeuristicLinear;
    UpdateMode mode = UpdateMode::probabilistic();

    void validate() const;
};

} // namespace nkcsim
