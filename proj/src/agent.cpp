#include "nkcsim/agent.hpp"

#include <string>

#include "nkcsim/error.hpp"

namespace nkcsim {

void AgentSpec::validate() const {
    if (n < 1) {
        throw SimError(ErrorCode::ConstraintViolation,
                       "agent search-space size n must be >= 1 (got " +
                           std::to_string(n) + ")");
    }
    if (k < 0 || k > n - 1) {
        throw SimError(ErrorCode::ConstraintViolation,
                       "agent window k must satisfy 0 <= k <= n-1 (got k=" +
                           std::to_string(k) + ", n=" + std::to_string(n) + ")");
    }
    if (role == Role::Human && rule != RuleKind::HeuristicLinear) {
        throw SimError(ErrorCode::ConstraintViolation,
                       "human agents adapt with the heuristic_linear rule");
    }
    if (role == Role::AI && rule == RuleKind::HeuristicLinear) {
        throw SimError(ErrorCode::ConstraintViolation,
                       "AI agents adapt with rule_uniform or hallucinatory");
    }
}

} // namespace nkcsim
