#include "nkcsim/task.hpp"

#include <string>

#include "nkcsim/error.hpp"
#include "nkcsim/trajectory.hpp"

namespace nkcsim {

const char* task_kind_name(TaskKind kind) {
    switch (kind) {
        case TaskKind::Modular: return "modular";
        case TaskKind::AiToH: return "ai_to_h";
        case TaskKind::HToAi: return "h_to_ai";
    }
    return "unknown";
}

void TaskConfig::validate() const {
    AgentSpec h = agent_h;
    h.role = Role::Human;
    AgentSpec ai = agent_ai;
    ai.role = Role::AI;
    h.validate();
    ai.validate();

    if (agent_ai.n <= agent_h.n) {
        throw SimError(ErrorCode::ConstraintViolation,
                       "cardinality constraint |N_AI| > |N_H| violated (n_ai=" +
                           std::to_string(agent_ai.n) +
                           ", n_h=" + std::to_string(agent_h.n) + ")");
    }
    switch (kind) {
        case TaskKind::Modular:
            if (c != 0) {
                throw SimError(ErrorCode::ConstraintViolation,
                               "modular tasks have no seed window; c must be 0");
            }
            break;
        case TaskKind::AiToH:
            if (c < 1 || c > agent_ai.n - 1) {
                throw SimError(ErrorCode::ConstraintViolation,
                               "ai_to_h requires 1 <= c <= n_ai-1 (got c=" +
                                   std::to_string(c) + ", n_ai=" +
                                   std::to_string(agent_ai.n) + ")");
            }
            break;
        case TaskKind::HToAi:
            if (c < 1 || c > agent_h.n) {
                throw SimError(ErrorCode::ConstraintViolation,
                               "h_to_ai requires 1 <= c <= n_h (got c=" +
                                   std::to_string(c) + ", n_h=" +
                                   std::to_string(agent_h.n) + ")");
            }
            break;
    }
}

namespace {

int peaks_or_zero(const std::vector<double>& values) {
    return values.empty() ? 0 : count_local_peaks(values);
}

RunOutcome assemble(const Generation& step1, const Generation& step2,
                    bool step1_is_h) {
    const Generation& h = step1_is_h ? step1 : step2;
    const Generation& ai = step1_is_h ? step2 : step1;

    RunOutcome out;
    out.len_h = static_cast<std::int64_t>(h.sequence.size());
    out.len_ai = static_cast<std::int64_t>(ai.sequence.size());
    for (auto b : h.sequence) out.ones_h += b;
    for (auto b : ai.sequence) out.ones_ai += b;
    out.po_h = static_cast<double>(out.ones_h) / static_cast<double>(out.len_h);
    out.po_ai = static_cast<double>(out.ones_ai) / static_cast<double>(out.len_ai);
    out.apo = (out.po_h + out.po_ai) * 0.5;
    out.h_capability_payoff = step1_is_h ? out.po_h : out.po_ai;
    out.peaks_step1 = peaks_or_zero(step1.decision_values);
    out.peaks_step2 = peaks_or_zero(step2.decision_values);
    return out;
}

} // namespace

RunOutcome run_modular(const TaskConfig& cfg, RngStream& rng) {
    cfg.validate();
    // H's sequence is generated first; both searches are independent.
    const Generation h = generate_self_seeded_traced(cfg.agent_h, rng);
    const Generation ai = generate_self_seeded_traced(cfg.agent_ai, rng);
    return assemble(h, ai, /*step1_is_h=*/true);
}

RunOutcome run_ai_to_h(const TaskConfig& cfg, RngStream& rng) {
    cfg.validate();
    const Generation ai = generate_self_seeded_traced(cfg.agent_ai, rng);
    const BitSequence seed(ai.sequence.begin(), ai.sequence.begin() + cfg.c);
    // H refines the first C AI states; its effective window is C with
    // linear recency weights, and k_h plays no role in this step.
    const Generation h = generate_from_seed_window_traced(
        seed, cfg.c, cfg.agent_h.n, RuleKind::HeuristicLinear, cfg.agent_h.mode,
        Perpetuation::RuleBased, rng);
    return assemble(ai, h, /*step1_is_h=*/false);
}

RunOutcome run_h_to_ai(const TaskConfig& cfg, RngStream& rng) {
    cfg.validate();
    const Generation h = generate_self_seeded_traced(cfg.agent_h, rng);
    // The AI reads H's whole sequence as its tape with window width C;
    // H's memory fades as generation proceeds, then cfg.perpetuation
    // governs the remainder.
    const Generation ai = generate_from_seed_window_traced(
        h.sequence, cfg.c, cfg.agent_ai.n, RuleKind::RuleUniform, cfg.agent_ai.mode,
        cfg.perpetuation, rng);
    return assemble(h, ai, /*step1_is_h=*/true);
}

RunOutcome run_task(const TaskConfig& cfg, RngStream& rng) {
    switch (cfg.kind) {
        case TaskKind::Modular: return run_modular(cfg, rng);
        case TaskKind::AiToH: return run_ai_to_h(cfg, rng);
        case TaskKind::HToAi: return run_h_to_ai(cfg, rng);
    }
    throw SimError(ErrorCode::InvalidInput, "unknown task kind");
}

} // namespace nkcsim
