#pragma once

#include <cstdint>
#include <vector>

#include "nkcsim/task.hpp"

namespace nkcsim {

// Aggregate over n_runs independent runs of one configuration. Every run's
// stream is derived from (master_seed, cell_id, run index), and aggregation
// happens over exact one-counts in run-index order, so the result is
// bit-identical for any worker count or execution order.
struct MonteCarloResult {
    int n_runs = 0;
    double mean_po_h = 0.0;
    double mean_po_ai = 0.0;
    double mean_apo = 0.0;
    double std_error_apo = 0.0;
    double mean_peaks_step1 = 0.0;
    double mean_peaks_step2 = 0.0;
    std::uint64_t master_seed = 0; // RNG provenance
    std::uint64_t cell_id = 0;
};

// run_log, when given, receives all n_runs outcomes in run-index order.
MonteCarloResult monte_carlo(const TaskConfig& cfg, int n_runs, const RngPolicy& policy,
                             std::uint64_t cell_id = 0, int workers = 1,
                             std::vector<RunOutcome>* run_log = nullptr);

} // namespace nkcsim
