#pragma once

#include <map>
#include <string>

#include "nkcsim/serialize.hpp"

namespace nkcsim {

// Canonical replication experiments for the figures that carry data:
//   3 - modular joint payoff over (n_ai/n_h, k_h/k_ai)
//   4 - AI-to-H joint payoff over (n_ai/n_h, c/k_ai)
//   5 - H-to-AI joint payoff, rule-based vs hallucinatory perpetuation
//   6 - sequencing comparison: H-to-AI with expert H vs AI-to-H
//   8 - AI wastage: step-1 vs step-2 local peak counts (AI-to-H)
// Figures 1, 2 and 7 are conceptual illustrations and are rejected; the
// worked-examples report covers Figure 2's numbers.
struct FigureOutput {
    int fig_id = 0;
    ResultEnvelope envelope;
    std::string svg;
};

// overrides: n_h, k_ai, k_h, c, hi, lo (all optional). Defaults are n_h=10,
// k_ai=4, k_h=2, c = k_ai/2 for AI-to-H and c = n_h for H-to-AI, hi=0.6,
// lo=0.4.
FigureOutput replicate_figure(int fig_id, const std::map<std::string, double>& overrides,
                              const RngPolicy& policy, int n_runs = 1000, int workers = 1);

} // namespace nkcsim
