#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "nkcsim/sweep.hpp"

namespace nkcsim {

enum class Format { Csv, Json };

struct Provenance {
    std::string tool_version;
    std::string generator;
    std::uint64_t master_seed = 0;
    std::string config_hash; // fnv1a-64 of the canonical spec, hex
};

// Payload plus everything needed to reproduce it. Serialization is a pure
// function of the contents: fixed key order, shortest round-trip number
// formatting, no timestamps.
struct ResultEnvelope {
    Provenance provenance;
    nlohmann::ordered_json spec; // canonical experiment echo
    std::optional<MonteCarloResult> single;
    std::optional<SweepResult> sweep;
};

ResultEnvelope make_envelope(const nlohmann::ordered_json& canonical_spec,
                             std::uint64_t master_seed);

std::string envelope_to_json(const ResultEnvelope& env);
std::string envelope_to_csv(const ResultEnvelope& env);
ResultEnvelope envelope_from_json(const std::string& text);

// Writes to a temp file in the destination directory and renames into
// place; partial result files are never observable. Returns bytes written.
std::size_t emit_results(const ResultEnvelope& env, Format format,
                         const std::filesystem::path& destination);

// Full-precision decimal formatting used by the CSV writer ("%.17g").
std::string format_double(double v);

} // namespace nkcsim
