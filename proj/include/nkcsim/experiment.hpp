#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "nkcsim/sweep.hpp"

namespace nkcsim {

enum class OutputFormat { Csv, Json };

// A fully validated experiment document. Experiments are JSON so they diff
// cleanly under version control; the grammar is documented in the README.
// Unknown keys are hard errors and master_seed is mandatory — results must
// never depend on a wall clock.
struct ExperimentFile {
    TaskConfig task;
    int n_runs = 1000;
    std::uint64_t master_seed = 0;
    bool has_sweep = false;
    AxisSpec axis1;
    AxisSpec axis2;
    bool conditional = false;
    double hi = 0.6;
    double lo = 0.4;
    std::string out_path;
    OutputFormat out_format = OutputFormat::Csv;
    bool has_output = false;

    // Canonical echo with all defaults filled in; hashed for provenance and
    // embedded in result files so they fully determine a re-run.
    nlohmann::ordered_json canonical;

    SweepSpec to_sweep_spec(int workers = 1) const;
};

ExperimentFile parse_experiment(const std::string& text);

// Rebuilds the experiment from a canonical echo (the `spec` block of a
// result file).
ExperimentFile experiment_from_canonical(const nlohmann::ordered_json& canonical);

std::uint64_t fnv1a_hash(const std::string& bytes);

} // namespace nkcsim
