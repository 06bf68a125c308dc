#include "nkcsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <string>
#include <thread>

#include "nkcsim/error.hpp"

namespace nkcsim {

namespace {

int round_half_away(double v) {
    return static_cast<int>(std::llround(v));
}

bool known_axis(const std::string& name) {
    return name == "n_ai_over_n_h" || name == "k_h_over_k_ai" ||
           name == "c_over_k_ai" || name == "perpetuation";
}

void validate_axis(const AxisSpec& axis, const char* which) {
    if (axis.name.empty() || axis.values.empty()) {
        throw SimError(ErrorCode::InvalidInput,
                       std::string(which) + " must name a parameter and list values");
    }
    if (!known_axis(axis.name)) {
        throw SimError(ErrorCode::UnknownKey,
                       std::string(which) + " references unknown parameter '" +
                           axis.name + "'");
    }
    for (std::size_t i = 1; i < axis.values.size(); ++i) {
        if (!(axis.values[i] > axis.values[i - 1])) {
            throw SimError(ErrorCode::InvalidInput,
                           std::string(which) + " values must be strictly increasing");
        }
    }
}

void apply_axis(const std::string& name, double value, TaskConfig& cfg,
                const SweepSpec& spec, const std::string& where) {
    if (name == "n_ai_over_n_h") {
        if (!(value > 0.0)) {
            throw SimError(ErrorCode::ConstraintViolation,
                           where + ": n_ai_over_n_h must be positive");
        }
        cfg.agent_ai.n = round_half_away(value * spec.base.agent_h.n);
    } else if (name == "k_h_over_k_ai") {
        if (value < 0.0) {
            throw SimError(ErrorCode::ConstraintViolation,
                           where + ": k_h_over_k_ai must be non-negative");
        }
        cfg.agent_h.k = round_half_away(value * spec.base.agent_ai.k);
    } else if (name == "c_over_k_ai") {
        if (!(value > 0.0)) {
            throw SimError(ErrorCode::ConstraintViolation,
                           where + ": c_over_k_ai must be positive");
        }
        cfg.c = round_half_away(value * spec.base.agent_ai.k);
    } else if (name == "perpetuation") {
        if (value == 0.0) {
            cfg.perpetuation = Perpetuation::RuleBased;
        } else if (value == 1.0) {
            cfg.perpetuation = Perpetuation::Hallucinatory;
        } else {
            throw SimError(ErrorCode::ConstraintViolation,
                           where + ": perpetuation axis values must be 0 or 1");
        }
    }
}

} // namespace

void SweepSpec::validate() const {
    validate_axis(axis1, "axis1");
    validate_axis(axis2, "axis2");
    if (n_runs < 1) {
        throw SimError(ErrorCode::InvalidInput, "n_runs must be >= 1");
    }
    if (!(0.0 <= lo && lo < hi && hi <= 1.0)) {
        throw SimError(ErrorCode::InvalidInput,
                       "capability thresholds require 0 <= lo < hi <= 1");
    }
}

TaskConfig resolve_cell(const SweepSpec& spec, double axis1_value, double axis2_value,
                        CellResult& record) {
    const std::string where = "cell (" + spec.axis1.name + "=" +
                              std::to_string(axis1_value) + ", " + spec.axis2.name +
                              "=" + std::to_string(axis2_value) + ")";
    TaskConfig cfg = spec.base;
    apply_axis(spec.axis1.name, axis1_value, cfg, spec, where);
    apply_axis(spec.axis2.name, axis2_value, cfg, spec, where);

    // Ratio axes sweep past what small default sizes admit; realize the
    // nearest feasible integers and record them next to the request.
    if (spec.axis1.name == "n_ai_over_n_h" || spec.axis2.name == "n_ai_over_n_h") {
        cfg.agent_ai.n = std::max(cfg.agent_ai.n, cfg.agent_h.n + 1);
    }
    if (spec.axis1.name == "k_h_over_k_ai" || spec.axis2.name == "k_h_over_k_ai") {
        cfg.agent_h.k = std::clamp(cfg.agent_h.k, 0, cfg.agent_h.n - 1);
    }
    if (spec.axis1.name == "c_over_k_ai" || spec.axis2.name == "c_over_k_ai") {
        const int c_max = cfg.kind == TaskKind::AiToH ? cfg.agent_ai.n - 1
                                                      : cfg.agent_h.n;
        cfg.c = std::clamp(cfg.c, 1, c_max);
    }

    try {
        cfg.validate();
    } catch (const SimError& e) {
        throw SimError(e.code(), where + ": " + e.what());
    }

    record.axis1_value = axis1_value;
    record.axis2_value = axis2_value;
    record.realized_n_ai = cfg.agent_ai.n;
    record.realized_k_h = cfg.agent_h.k;
    record.realized_c = cfg.c;
    record.kind = cfg.kind;
    record.perpetuation = cfg.perpetuation;
    return cfg;
}

namespace {

// Mean and standard error of apo over a subset, accumulated in run-index
// order so the result is schedule-independent.
void subset_stats(const std::vector<RunOutcome>& runs, double threshold, bool high_side,
                  int& count, double& mean, double& se) {
    count = 0;
    double sum = 0.0;
    double sum2 = 0.0;
    for (const auto& run : runs) {
        const bool in = high_side ? run.h_capability_payoff >= threshold
                                  : run.h_capability_payoff <= threshold;
        if (!in) continue;
        ++count;
        sum += run.apo;
        sum2 += run.apo * run.apo;
    }
    if (count == 0) {
        mean = 0.0;
        se = 0.0;
        return;
    }
    mean = sum / count;
    if (count > 1) {
        const double ss = sum2 - sum * sum / count;
        se = std::sqrt((ss > 0.0 ? ss : 0.0) / (count - 1) / count);
    } else {
        se = 0.0;
    }
}

std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace

SweepResult sweep(const SweepSpec& spec) {
    spec.validate();

    const std::size_t n1 = spec.axis1.values.size();
    const std::size_t n2 = spec.axis2.values.size();
    const std::size_t n_cells = n1 * n2;

    // Resolve the whole grid first so an infeasible cell aborts before any
    // simulation work starts.
    std::vector<CellResult> cells(n_cells);
    std::vector<TaskConfig> configs(n_cells);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            const std::size_t idx = i1 * n2 + i2;
            configs[idx] = resolve_cell(spec, spec.axis1.values[i1],
                                        spec.axis2.values[i2], cells[idx]);
        }
    }

    auto evaluate = [&](std::size_t idx) {
        std::vector<RunOutcome> runs;
        cells[idx].mc = monte_carlo(configs[idx], spec.n_runs, spec.policy,
                                    static_cast<std::uint64_t>(idx), 1,
                                    spec.conditional ? &runs : nullptr);
        if (spec.conditional) {
            ConditionalStats cs;
            cs.hi = spec.hi;
            cs.lo = spec.lo;
            subset_stats(runs, spec.hi, true, cs.n_high, cs.mean_apo_high, cs.se_apo_high);
            subset_stats(runs, spec.lo, false, cs.n_low, cs.mean_apo_low, cs.se_apo_low);
            cs.n_mid = spec.n_runs - cs.n_high - cs.n_low;
            cells[idx].conditional = cs;
        }
    };

    const int workers = std::max(1, spec.workers);
    if (workers == 1 || n_cells == 1) {
        for (std::size_t idx = 0; idx < n_cells; ++idx) evaluate(idx);
    } else {
        // Cells are independent; strided assignment keeps every worker's
        // slot set disjoint and the stored order row-major.
        const std::size_t used = std::min<std::size_t>(workers, n_cells);
        std::vector<std::thread> pool;
        pool.reserve(used);
        for (std::size_t w = 0; w < used; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t idx = w; idx < n_cells; idx += used) evaluate(idx);
            });
        }
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    result.axis1 = spec.axis1;
    result.axis2 = spec.axis2;
    result.n_runs = spec.n_runs;
    result.master_seed = spec.policy.master_seed;
    result.generator = kGeneratorId;
    result.timestamp = now_iso8601();
    result.cells = std::move(cells);
    return result;
}

} // namespace nkcsim
