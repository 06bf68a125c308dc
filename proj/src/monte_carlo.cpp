#include "nkcsim/monte_carlo.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "nkcsim/error.hpp"

namespace nkcsim {

MonteCarloResult monte_carlo(const TaskConfig& cfg, int n_runs, const RngPolicy& policy,
                             std::uint64_t cell_id, int workers,
                             std::vector<RunOutcome>* run_log) {
    cfg.validate();
    if (n_runs < 1) {
        throw SimError(ErrorCode::InvalidInput,
                       "n_runs must be >= 1 (got " + std::to_string(n_runs) + ")");
    }
    if (workers < 1) workers = 1;

    // Every run writes into its own slot; the reduction below walks the
    // slots in index order, so the outcome cannot depend on scheduling.
    std::vector<RunOutcome> outcomes(static_cast<std::size_t>(n_runs));
    auto work = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            RngStream rng(derive_stream_seed(policy.master_seed, cell_id,
                                             static_cast<std::uint64_t>(i)));
            outcomes[static_cast<std::size_t>(i)] = run_task(cfg, rng);
        }
    };

    if (workers == 1 || n_runs == 1) {
        work(0, n_runs);
    } else {
        const int used = std::min(workers, n_runs);
        const int chunk = (n_runs + used - 1) / used;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(used));
        for (int w = 0; w < used; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(n_runs, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    // Sequence lengths are fixed by the configuration, so the exact
    // aggregates below are integers; per-run apo has the common denominator
    // 2 * len_h * len_ai.
    const std::int64_t len_h = outcomes.front().len_h;
    const std::int64_t len_ai = outcomes.front().len_ai;
    std::int64_t sum_ones_h = 0;
    std::int64_t sum_ones_ai = 0;
    std::int64_t sum_peaks1 = 0;
    std::int64_t sum_peaks2 = 0;
    std::int64_t sum_r = 0;     // r_i = ones_h * len_ai + ones_ai * len_h
    __int128 sum_r2 = 0;
    for (const auto& run : outcomes) {
        sum_ones_h += run.ones_h;
        sum_ones_ai += run.ones_ai;
        sum_peaks1 += run.peaks_step1;
        sum_peaks2 += run.peaks_step2;
        const std::int64_t r = run.ones_h * len_ai + run.ones_ai * len_h;
        sum_r += r;
        sum_r2 += static_cast<__int128>(r) * r;
    }

    MonteCarloResult res;
    res.n_runs = n_runs;
    res.master_seed = policy.master_seed;
    res.cell_id = cell_id;
    const double n = static_cast<double>(n_runs);
    res.mean_po_h = static_cast<double>(sum_ones_h) / (n * static_cast<double>(len_h));
    res.mean_po_ai = static_cast<double>(sum_ones_ai) / (n * static_cast<double>(len_ai));
    res.mean_apo = (res.mean_po_h + res.mean_po_ai) * 0.5;
    if (n_runs > 1) {
        const double denom = 2.0 * static_cast<double>(len_h) * static_cast<double>(len_ai);
        const double mean_r = static_cast<double>(sum_r) / n;
        const double ss = static_cast<double>(sum_r2) -
                          n * mean_r * mean_r; // sum of squared deviations of r
        const double var_apo = (ss > 0.0 ? ss : 0.0) / (n - 1.0) / (denom * denom);
        res.std_error_apo = std::sqrt(var_apo / n);
    }
    res.mean_peaks_step1 = static_cast<double>(sum_peaks1) / n;
    res.mean_peaks_step2 = static_cast<double>(sum_peaks2) / n;

    if (run_log) *run_log = std::move(outcomes);
    return res;
}

} // namespace nkcsim
