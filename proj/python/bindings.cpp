#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nkcsim/error.hpp"
#include "nkcsim/generate.hpp"
#include "nkcsim/monte_carlo.hpp"
#include "nkcsim/partition.hpp"
#include "nkcsim/polyfit.hpp"
#include "nkcsim/trajectory.hpp"

namespace py = pybind11;
using namespace nkcsim;

namespace {

RuleKind rule_from(const std::string& s) {
    if (s == "heuristic_linear") return RuleKind::HeuristicLinear;
    if (s == "rule_uniform") return RuleKind::RuleUniform;
    if (s == "hallucinatory") return RuleKind::Hallucinatory;
    throw SimError(ErrorCode::InvalidInput, "unknown rule '" + s + "'");
}

UpdateMode mode_from(const std::string& update, bool tie) {
    if (update == "probabilistic") return UpdateMode::probabilistic();
    if (update == "threshold") return UpdateMode::threshold(tie);
    throw SimError(ErrorCode::InvalidInput, "unknown update mode '" + update + "'");
}

Perpetuation perp_from(const std::string& s) {
    if (s == "rule_based") return Perpetuation::RuleBased;
    if (s == "hallucinatory") return Perpetuation::Hallucinatory;
    throw SimError(ErrorCode::InvalidInput, "unknown perpetuation '" + s + "'");
}

TaskConfig make_task(const std::string& task, int n_h, int k_h, int n_ai, int k_ai,
                     int c, const std::string& perpetuation, const std::string& update,
                     bool tie, const std::string& ai_rule) {
    TaskConfig cfg;
    if (task == "modular") {
        cfg.kind = TaskKind::Modular;
    } else if (task == "ai_to_h") {
        cfg.kind = TaskKind::AiToH;
    } else if (task == "h_to_ai") {
        cfg.kind = TaskKind::HToAi;
    } else {
        throw SimError(ErrorCode::InvalidInput, "unknown task '" + task + "'");
    }
    const UpdateMode mode = mode_from(update, tie);
    cfg.agent_h = AgentSpec{Role::Human, n_h, k_h, RuleKind::HeuristicLinear, mode};
    cfg.agent_ai = AgentSpec{Role::AI, n_ai, k_ai, rule_from(ai_rule), mode};
    cfg.c = c;
    cfg.perpetuation = perp_from(perpetuation);
    cfg.validate();
    return cfg;
}

} // namespace

PYBIND11_MODULE(nkcsim, m) {
    m.doc() = "Agent-based simulator of AI-human joint adaptive search on binary "
              "decision sequences";

    py::register_exception<SimError>(m, "SimError");

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next_unit", &RngStream::next_unit)
        .def("bernoulli", &RngStream::bernoulli, py::arg("p"))
        .def("fair_bit", &RngStream::fair_bit);

    m.def("derive_stream_seed", &derive_stream_seed, py::arg("master_seed"),
          py::arg("cell_id"), py::arg("run_index"));

    m.def(
        "decision_value",
        [](const BitSequence& window, const std::string& rule) {
            return decision_value(window, rule_from(rule)).value();
        },
        py::arg("window"), py::arg("rule"));
    m.def(
        "decision_value_parts",
        [](const BitSequence& window, const std::string& rule) {
            const Rational r = decision_value(window, rule_from(rule));
            return py::make_tuple(r.num, r.den);
        },
        py::arg("window"), py::arg("rule"));

    m.def(
        "next_state",
        [](const BitSequence& window, const std::string& rule, const std::string& update,
           bool tie, RngStream& rng) {
            return next_state(window, rule_from(rule), mode_from(update, tie), rng);
        },
        py::arg("window"), py::arg("rule"), py::arg("update") = "probabilistic",
        py::arg("tie_maps_to_one") = false, py::arg("rng"));

    m.def(
        "payoff", [](const BitSequence& seq) { return payoff(seq); }, py::arg("seq"));

    m.def(
        "generate_self_seeded",
        [](int n, int k, const std::string& rule, const std::string& update, bool tie,
           RngStream& rng) {
            const RuleKind kind = rule_from(rule);
            const Role role =
                kind == RuleKind::HeuristicLinear ? Role::Human : Role::AI;
            return generate_self_seeded(
                AgentSpec{role, n, k, kind, mode_from(update, tie)}, rng);
        },
        py::arg("n"), py::arg("k"), py::arg("rule"),
        py::arg("update") = "probabilistic", py::arg("tie_maps_to_one") = false,
        py::arg("rng"));

    m.def(
        "generate_from_seed_window",
        [](const BitSequence& base, int window_size, int target_len,
           const std::string& rule, const std::string& update, bool tie,
           const std::string& perpetuation, RngStream& rng) {
            return generate_from_seed_window(base, window_size, target_len,
                                             rule_from(rule), mode_from(update, tie),
                                             perp_from(perpetuation), rng);
        },
        py::arg("base"), py::arg("window_size"), py::arg("target_len"), py::arg("rule"),
        py::arg("update") = "probabilistic", py::arg("tie_maps_to_one") = false,
        py::arg("perpetuation") = "rule_based", py::arg("rng"));

    py::class_<RunOutcome>(m, "RunOutcome")
        .def_readonly("po_h", &RunOutcome::po_h)
        .def_readonly("po_ai", &RunOutcome::po_ai)
        .def_readonly("apo", &RunOutcome::apo)
        .def_readonly("h_capability_payoff", &RunOutcome::h_capability_payoff)
        .def_readonly("peaks_step1", &RunOutcome::peaks_step1)
        .def_readonly("peaks_step2", &RunOutcome::peaks_step2);

    py::class_<MonteCarloResult>(m, "MonteCarloResult")
        .def_readonly("n_runs", &MonteCarloResult::n_runs)
        .def_readonly("mean_po_h", &MonteCarloResult::mean_po_h)
        .def_readonly("mean_po_ai", &MonteCarloResult::mean_po_ai)
        .def_readonly("mean_apo", &MonteCarloResult::mean_apo)
        .def_readonly("std_error_apo", &MonteCarloResult::std_error_apo)
        .def_readonly("mean_peaks_step1", &MonteCarloResult::mean_peaks_step1)
        .def_readonly("mean_peaks_step2", &MonteCarloResult::mean_peaks_step2)
        .def_readonly("master_seed", &MonteCarloResult::master_seed)
        .def_readonly("cell_id", &MonteCarloResult::cell_id);

    m.def(
        "run_task",
        [](const std::string& task, int n_h, int k_h, int n_ai, int k_ai,
           std::uint64_t seed, int c, const std::string& perpetuation,
           const std::string& update, bool tie, const std::string& ai_rule) {
            RngStream rng(seed);
            return run_task(make_task(task, n_h, k_h, n_ai, k_ai, c, perpetuation,
                                      update, tie, ai_rule),
                            rng);
        },
        py::arg("task"), py::arg("n_h"), py::arg("k_h"), py::arg("n_ai"),
        py::arg("k_ai"), py::arg("seed"), py::arg("c") = 0,
        py::arg("perpetuation") = "rule_based", py::arg("update") = "probabilistic",
        py::arg("tie_maps_to_one") = false, py::arg("ai_rule") = "rule_uniform");

    m.def(
        "monte_carlo",
        [](const std::string& task, int n_h, int k_h, int n_ai, int k_ai,
           std::uint64_t seed, int runs, int c, const std::string& perpetuation,
           const std::string& update, bool tie, const std::string& ai_rule,
           std::uint64_t cell_id, int workers) {
            return monte_carlo(make_task(task, n_h, k_h, n_ai, k_ai, c, perpetuation,
                                         update, tie, ai_rule),
                               runs, RngPolicy{seed}, cell_id, workers);
        },
        py::arg("task"), py::arg("n_h"), py::arg("k_h"), py::arg("n_ai"),
        py::arg("k_ai"), py::arg("seed"), py::arg("runs") = 1000, py::arg("c") = 0,
        py::arg("perpetuation") = "rule_based", py::arg("update") = "probabilistic",
        py::arg("tie_maps_to_one") = false, py::arg("ai_rule") = "rule_uniform",
        py::arg("cell_id") = 0, py::arg("workers") = 1);

    m.def(
        "monte_carlo_runs",
        [](const std::string& task, int n_h, int k_h, int n_ai, int k_ai,
           std::uint64_t seed, int runs, int c, const std::string& perpetuation,
           const std::string& update, bool tie, const std::string& ai_rule) {
            std::vector<RunOutcome> log;
            const MonteCarloResult mc =
                monte_carlo(make_task(task, n_h, k_h, n_ai, k_ai, c, perpetuation,
                                      update, tie, ai_rule),
                            runs, RngPolicy{seed}, 0, 1, &log);
            return py::make_tuple(mc, log);
        },
        py::arg("task"), py::arg("n_h"), py::arg("k_h"), py::arg("n_ai"),
        py::arg("k_ai"), py::arg("seed"), py::arg("runs") = 1000, py::arg("c") = 0,
        py::arg("perpetuation") = "rule_based", py::arg("update") = "probabilistic",
        py::arg("tie_maps_to_one") = false, py::arg("ai_rule") = "rule_uniform");

    m.def(
        "count_local_peaks",
        [](const std::vector<double>& values) { return count_local_peaks(values); },
        py::arg("values"));

    m.def(
        "fit_polynomial",
        [](const std::vector<double>& x, const std::vector<double>& y, int degree) {
            const PolyFit fit = fit_polynomial(x, y, degree);
            return py::make_tuple(fit.coeffs, fit.residual_norm);
        },
        py::arg("x"), py::arg("y"), py::arg("degree"));

    m.def(
        "argmax_on_interval",
        [](const std::vector<double>& coeffs, double lo, double hi) {
            const ArgmaxResult r = argmax_on_interval(coeffs, lo, hi);
            return py::make_tuple(r.x, r.y);
        },
        py::arg("coeffs"), py::arg("lo"), py::arg("hi"));

    m.def(
        "capability_partition",
        [](const std::vector<RunOutcome>& runs, double hi, double lo) {
            const Partition p = capability_partition(runs, hi, lo);
            return py::make_tuple(p.high, p.low, p.mid);
        },
        py::arg("runs"), py::arg("hi") = 0.6, py::arg("lo") = 0.4);
}
