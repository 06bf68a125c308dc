#include "nkcsim/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "nkcsim/error.hpp"
#include "nkcsim/experiment.hpp"
#include "nkcsim/version.hpp"

namespace nkcsim {

using Json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
    return std::string(buf, ptr);
}

namespace {

double checked(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw SimError(ErrorCode::Io,
                       std::string("internal error: non-finite value for ") + what);
    }
    return v;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

Json mc_to_json(const MonteCarloResult& mc) {
    Json j;
    j["n_runs"] = mc.n_runs;
    j["mean_po_h"] = checked(mc.mean_po_h, "mean_po_h");
    j["mean_po_ai"] = checked(mc.mean_po_ai, "mean_po_ai");
    j["mean_apo"] = checked(mc.mean_apo, "mean_apo");
    j["std_error_apo"] = checked(mc.std_error_apo, "std_error_apo");
    j["mean_peaks_step1"] = checked(mc.mean_peaks_step1, "mean_peaks_step1");
    j["mean_peaks_step2"] = checked(mc.mean_peaks_step2, "mean_peaks_step2");
    j["wastage"] = checked(mc.mean_peaks_step1 - mc.mean_peaks_step2, "wastage");
    j["master_seed"] = mc.master_seed;
    j["cell_id"] = mc.cell_id;
    return j;
}

MonteCarloResult mc_from_json(const Json& j) {
    MonteCarloResult mc;
    mc.n_runs = j.at("n_runs").get<int>();
    mc.mean_po_h = j.at("mean_po_h").get<double>();
    mc.mean_po_ai = j.at("mean_po_ai").get<double>();
    mc.mean_apo = j.at("mean_apo").get<double>();
    mc.std_error_apo = j.at("std_error_apo").get<double>();
    mc.mean_peaks_step1 = j.at("mean_peaks_step1").get<double>();
    mc.mean_peaks_step2 = j.at("mean_peaks_step2").get<double>();
    mc.master_seed = j.at("master_seed").get<std::uint64_t>();
    mc.cell_id = j.at("cell_id").get<std::uint64_t>();
    return mc;
}

Json axis_to_json(const AxisSpec& axis) {
    return Json{{"name", axis.name}, {"values", axis.values}};
}

AxisSpec axis_from_json(const Json& j) {
    AxisSpec axis;
    axis.name = j.at("name").get<std::string>();
    axis.values = j.at("values").get<std::vector<double>>();
    return axis;
}

Json cell_to_json(const CellResult& cell) {
    Json j;
    j["axis1"] = checked(cell.axis1_value, "axis1");
    j["axis2"] = checked(cell.axis2_value, "axis2");
    j["realized_n_ai"] = cell.realized_n_ai;
    j["realized_k_h"] = cell.realized_k_h;
    j["realized_c"] = cell.realized_c;
    j["kind"] = task_kind_name(cell.kind);
    j["perpetuation"] =
        cell.perpetuation == Perpetuation::RuleBased ? "rule_based" : "hallucinatory";
    j["mc"] = mc_to_json(cell.mc);
    if (cell.conditional) {
        const auto& c = *cell.conditional;
        j["conditional"] = Json{{"hi", c.hi},
                                {"lo", c.lo},
                                {"n_high", c.n_high},
                                {"n_low", c.n_low},
                                {"n_mid", c.n_mid},
                                {"mean_apo_high", checked(c.mean_apo_high, "mean_apo_high")},
                                {"se_apo_high", checked(c.se_apo_high, "se_apo_high")},
                                {"mean_apo_low", checked(c.mean_apo_low, "mean_apo_low")},
                                {"se_apo_low", checked(c.se_apo_low, "se_apo_low")}};
    }
    return j;
}

CellResult cell_from_json(const Json& j) {
    CellResult cell;
    cell.axis1_value = j.at("axis1").get<double>();
    cell.axis2_value = j.at("axis2").get<double>();
    cell.realized_n_ai = j.at("realized_n_ai").get<int>();
    cell.realized_k_h = j.at("realized_k_h").get<int>();
    cell.realized_c = j.at("realized_c").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    cell.kind = kind == "modular" ? TaskKind::Modular
                : kind == "ai_to_h" ? TaskKind::AiToH
                                    : TaskKind::HToAi;
    cell.perpetuation = j.at("perpetuation").get<std::string>() == "hallucinatory"
                            ? Perpetuation::Hallucinatory
                            : Perpetuation::RuleBased;
    cell.mc = mc_from_json(j.at("mc"));
    if (auto it = j.find("conditional"); it != j.end()) {
        ConditionalStats c;
        c.hi = it->at("hi").get<double>();
        c.lo = it->at("lo").get<double>();
        c.n_high = it->at("n_high").get<int>();
        c.n_low = it->at("n_low").get<int>();
        c.n_mid = it->at("n_mid").get<int>();
        c.mean_apo_high = it->at("mean_apo_high").get<double>();
        c.se_apo_high = it->at("se_apo_high").get<double>();
        c.mean_apo_low = it->at("mean_apo_low").get<double>();
        c.se_apo_low = it->at("se_apo_low").get<double>();
        cell.conditional = c;
    }
    return cell;
}

} // namespace

ResultEnvelope make_envelope(const nlohmann::ordered_json& canonical_spec,
                             std::uint64_t master_seed) {
    ResultEnvelope env;
    env.provenance.tool_version = kToolVersion;
    env.provenance.generator = kGeneratorId;
    env.provenance.master_seed = master_seed;
    env.provenance.config_hash = hash_hex(fnv1a_hash(canonical_spec.dump()));
    env.spec = canonical_spec;
    return env;
}

std::string envelope_to_json(const ResultEnvelope& env) {
    Json doc;
    doc["provenance"] = Json{{"tool_version", env.provenance.tool_version},
                             {"generator", env.provenance.generator},
                             {"master_seed", env.provenance.master_seed},
                             {"config_hash", env.provenance.config_hash}};
    doc["spec"] = env.spec;
    Json payload;
    if (env.sweep) {
        payload["type"] = "sweep";
        payload["axis1"] = axis_to_json(env.sweep->axis1);
        payload["axis2"] = axis_to_json(env.sweep->axis2);
        payload["n_runs"] = env.sweep->n_runs;
        payload["master_seed"] = env.sweep->master_seed;
        payload["generator"] = env.sweep->generator;
        Json cells = Json::array();
        for (const auto& cell : env.sweep->cells) {
            cells.push_back(cell_to_json(cell));
        }
        payload["cells"] = std::move(cells);
    } else if (env.single) {
        payload["type"] = "monte_carlo";
        payload.update(mc_to_json(*env.single));
    } else {
        throw SimError(ErrorCode::Io, "internal error: empty result envelope");
    }
    doc["payload"] = std::move(payload);
    return doc.dump(2) + "\n";
}

ResultEnvelope envelope_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SimError(ErrorCode::TypeMismatch,
                       std::string("result file is not valid JSON: ") + e.what());
    }
    ResultEnvelope env;
    try {
        const Json& prov = doc.at("provenance");
        env.provenance.tool_version = prov.at("tool_version").get<std::string>();
        env.provenance.generator = prov.at("generator").get<std::string>();
        env.provenance.master_seed = prov.at("master_seed").get<std::uint64_t>();
        env.provenance.config_hash = prov.at("config_hash").get<std::string>();
        env.spec = doc.at("spec");
        const Json& payload = doc.at("payload");
        if (payload.at("type").get<std::string>() == "sweep") {
            SweepResult sweep;
            sweep.axis1 = axis_from_json(payload.at("axis1"));
            sweep.axis2 = axis_from_json(payload.at("axis2"));
            sweep.n_runs = payload.at("n_runs").get<int>();
            sweep.master_seed = payload.at("master_seed").get<std::uint64_t>();
            sweep.generator = payload.at("generator").get<std::string>();
            for (const auto& cell : payload.at("cells")) {
                sweep.cells.push_back(cell_from_json(cell));
            }
            env.sweep = std::move(sweep);
        } else {
            env.single = mc_from_json(payload);
        }
    } catch (const nlohmann::json::exception& e) {
        throw SimError(ErrorCode::TypeMismatch,
                       std::string("malformed result envelope: ") + e.what());
    }
    return env;
}

namespace {

void csv_row(std::string& out, const std::string& axis1, const std::string& axis2,
             const std::string& n_ai, const std::string& k_h_or_c,
             const MonteCarloResult& mc) {
    out += axis1;
    out += ',';
    out += axis2;
    out += ',';
    out += n_ai;
    out += ',';
    out += k_h_or_c;
    out += ',';
    out += format_double(checked(mc.mean_po_h, "mean_po_h"));
    out += ',';
    out += format_double(checked(mc.mean_po_ai, "mean_po_ai"));
    out += ',';
    out += format_double(checked(mc.mean_apo, "mean_apo"));
    out += ',';
    out += format_double(checked(mc.std_error_apo, "std_error_apo"));
    out += ',';
    out += format_double(checked(mc.mean_peaks_step1, "mean_peaks_step1"));
    out += ',';
    out += format_double(checked(mc.mean_peaks_step2, "mean_peaks_step2"));
    out += '\n';
}

} // namespace

std::string envelope_to_csv(const ResultEnvelope& env) {
    std::string out =
        "axis1,axis2,realized_n_ai,realized_k_h_or_c,mean_po_h,mean_po_ai,"
        "mean_apo,std_error_apo,mean_peaks_step1,mean_peaks_step2\n";
    if (env.sweep) {
        for (const auto& cell : env.sweep->cells) {
            const bool modular = cell.kind == TaskKind::Modular;
            csv_row(out, format_double(cell.axis1_value), format_double(cell.axis2_value),
                    std::to_string(cell.realized_n_ai),
                    std::to_string(modular ? cell.realized_k_h : cell.realized_c),
                    cell.mc);
        }
    } else if (env.single) {
        std::string n_ai;
        std::string k_h_or_c;
        if (env.spec.is_object() && env.spec.contains("agents")) {
            n_ai = std::to_string(env.spec["agents"]["ai"]["n"].get<int>());
            if (env.spec["task"].get<std::string>() == "modular") {
                k_h_or_c = std::to_string(env.spec["agents"]["h"]["k"].get<int>());
            } else {
                k_h_or_c = std::to_string(env.spec["sequence"]["c"].get<int>());
            }
        }
        csv_row(out, "", "", n_ai, k_h_or_c, *env.single);
    } else {
        throw SimError(ErrorCode::Io, "internal error: empty result envelope");
    }
    return out;
}

std::size_t emit_results(const ResultEnvelope& env, Format format,
                         const std::filesystem::path& destination) {
    const std::string body =
        format == Format::Csv ? envelope_to_csv(env) : envelope_to_json(env);

    // Stage next to the destination, then rename: a crash mid-write leaves
    // no partial result file behind.
    std::filesystem::path dir = destination.parent_path();
    if (dir.empty()) dir = ".";
    std::filesystem::path tmp =
        dir / (".tmp-" + destination.filename().string());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw SimError(ErrorCode::Io,
                           "cannot write to '" + tmp.string() + "'");
        }
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw SimError(ErrorCode::Io, "write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, destination, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw SimError(ErrorCode::Io,
                       "cannot move results into place at '" + destination.string() + "'");
    }
    return body.size();
}

} // namespace nkcsim
