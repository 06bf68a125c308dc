#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nkcsim/monte_carlo.hpp"

namespace nkcsim {

// Recognized axis names:
//   n_ai_over_n_h  -> n_ai = round(v * n_h), bumped to n_h + 1 when the
//                     rounded size would violate |N_AI| > |N_H|
//   k_h_over_k_ai  -> k_h = round(v * k_ai), clamped into [0, n_h - 1]
//   c_over_k_ai    -> c   = round(v * k_ai), clamped into its task range
//   perpetuation   -> 0 = rule-based, 1 = hallucinatory (HToAi only)
// Rounding is half-away-from-zero; the realized integers are recorded per
// cell next to the requested ratio.
struct AxisSpec {
    std::string name;
    std::vector<double> values;
};

struct ConditionalStats {
    double hi = 0.6;
    double lo = 0.4;
    int n_high = 0;
    int n_low = 0;
    int n_mid = 0;
    double mean_apo_high = 0.0;
    double se_apo_high = 0.0;
    double mean_apo_low = 0.0;
    double se_apo_low = 0.0;
};

struct SweepSpec {
    TaskConfig base;
    AxisSpec axis1;
    AxisSpec axis2;
    int n_runs = 1000;
    RngPolicy policy;
    int workers = 1;
    bool conditional = false; // attach capability-conditioned stats per cell
    double hi = 0.6;
    double lo = 0.4;

    void validate() const;
};

struct CellResult {
    double axis1_value = 0.0;
    double axis2_value = 0.0;
    int realized_n_ai = 0;
    int realized_k_h = 0;
    int realized_c = 0;
    TaskKind kind = TaskKind::Modular;
    Perpetuation perpetuation = Perpetuation::RuleBased;
    MonteCarloResult mc;
    std::optional<ConditionalStats> conditional;
};

// Cells are stored in row-major grid order (axis1 outer, axis2 inner)
// regardless of the execution schedule. The in-memory timestamp is captured
// for logging only and never serialized, keeping result files a pure
// function of (spec, master seed).
struct SweepResult {
    AxisSpec axis1;
    AxisSpec axis2;
    int n_runs = 0;
    std::uint64_t master_seed = 0;
    std::string generator = kGeneratorId;
    std::string timestamp;
    std::vector<CellResult> cells;
};

// Resolves one grid cell to a concrete TaskConfig. Throws with the
// offending coordinates in the message when a cell cannot form a valid
// configuration.
TaskConfig resolve_cell(const SweepSpec& spec, double axis1_value, double axis2_value,
                        CellResult& record);

SweepResult sweep(const SweepSpec& spec);

} // namespace nkcsim
