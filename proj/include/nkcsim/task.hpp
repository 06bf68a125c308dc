#pragma once

#include <cstdint>

#include "nkcsim/generate.hpp"

namespace nkcsim {

// Modular: both agents search independently in parallel.
// AiToH:   AI searches first; H refines the first C AI states.
// HToAi:   H searches first; AI refines H's whole sequence with window C.
enum class TaskKind { Modular, AiToH, HToAi };

const char* task_kind_name(TaskKind kind);

struct TaskConfig {
    TaskKind kind = TaskKind::Modular;
    AgentSpec agent_h;
    AgentSpec agent_ai;
    int c = 0;                                          // sequenced tasks only
    Perpetuation perpetuation = Perpetuation::RuleBased; // HToAi only

    void validate() const;
};

// One simulated run. Payoffs are stored both as exact one-counts (for
// order-insensitive aggregation) and as doubles. step1/step2 follow the
// task's generation order: AiToH counts AI peaks as step 1 and H peaks as
// step 2, HToAi the reverse; for modular tasks step 1 is H and step 2 AI by
// convention. h_capability_payoff is the leading agent's payoff when
// sequenced (po_h for modular runs); capability conditioning keys off it.
struct RunOutcome {
    std::int64_t ones_h = 0;
    std::int64_t len_h = 0;
    std::int64_t ones_ai = 0;
    std::int64_t len_ai = 0;
    double po_h = 0.0;
    double po_ai = 0.0;
    double apo = 0.0;
    double h_capability_payoff = 0.0;
    int peaks_step1 = 0;
    int peaks_step2 = 0;
};

RunOutcome run_modular(const TaskConfig& cfg, RngStream& rng);
RunOutcome run_ai_to_h(const TaskConfig& cfg, RngStream& rng);
RunOutcome run_h_to_ai(const TaskConfig& cfg, RngStream& rng);

// Dispatches on cfg.kind.
RunOutcome run_task(const TaskConfig& cfg, RngStream& rng);

} // namespace nkcsim
