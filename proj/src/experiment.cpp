#include "nkcsim/experiment.hpp"

#include <algorithm>
#include <string>

#include "nkcsim/error.hpp"

namespace nkcsim {

using Json = nlohmann::ordered_json;

namespace {

std::string join_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void check_keys(const Json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return it.key() == k; });
        if (!known) {
            throw SimError(ErrorCode::UnknownKey,
                           "unknown key '" + join_path(path, it.key()) + "'");
        }
    }
}

const Json* find(const Json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
    const Json* v = find(obj, key);
    if (!v) {
        throw SimError(ErrorCode::MissingField,
                       "missing mandatory field '" + join_path(path, key) + "'");
    }
    return *v;
}

long long as_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        throw SimError(ErrorCode::TypeMismatch,
                       "expected an integer for '" + path + "'");
    }
    return v.get<long long>();
}

double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) {
        throw SimError(ErrorCode::TypeMismatch, "expected a number for '" + path + "'");
    }
    return v.get<double>();
}

std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) {
        throw SimError(ErrorCode::TypeMismatch, "expected a string for '" + path + "'");
    }
    return v.get<std::string>();
}

bool as_bool(const Json& v, const std::string& path) {
    if (!v.is_boolean()) {
        throw SimError(ErrorCode::TypeMismatch, "expected a boolean for '" + path + "'");
    }
    return v.get<bool>();
}

UpdateMode::Kind parse_update(const std::string& s, const std::string& path) {
    if (s == "probabilistic") return UpdateMode::Kind::Probabilistic;
    if (s == "threshold") return UpdateMode::Kind::Threshold;
    throw SimError(ErrorCode::TypeMismatch,
                   "'" + path + "' must be \"probabilistic\" or \"threshold\"");
}

AxisSpec parse_axis(const Json& obj, const std::string& path) {
    if (!obj.is_object()) {
        throw SimError(ErrorCode::TypeMismatch, "expected an object for '" + path + "'");
    }
    check_keys(obj, path, {"name", "values"});
    AxisSpec axis;
    axis.name = as_string(require(obj, path, "name"), join_path(path, "name"));
    const Json& values = require(obj, path, "values");
    if (!values.is_array() || values.empty()) {
        throw SimError(ErrorCode::TypeMismatch,
                       "'" + join_path(path, "values") + "' must be a non-empty array");
    }
    for (const auto& v : values) {
        axis.values.push_back(as_number(v, join_path(path, "values[]")));
    }
    return axis;
}

bool axis_covers(const ExperimentFile& exp, const char* name) {
    return exp.has_sweep && (exp.axis1.name == name || exp.axis2.name == name);
}

const char* update_name(UpdateMode::Kind kind) {
    return kind == UpdateMode::Kind::Threshold ? "threshold" : "probabilistic";
}

const char* perpetuation_name(Perpetuation p) {
    return p == Perpetuation::RuleBased ? "rule_based" : "hallucinatory";
}

Json canonical_echo(const ExperimentFile& exp) {
    Json doc;
    doc["task"] = task_kind_name(exp.task.kind);
    Json agents;
    agents["h"] = Json{{"n", exp.task.agent_h.n}, {"k", exp.task.agent_h.k}};
    agents["ai"] = Json{{"n", exp.task.agent_ai.n},
                        {"k", exp.task.agent_ai.k},
                        {"rule", rule_name(exp.task.agent_ai.rule)}};
    doc["agents"] = std::move(agents);
    doc["mode"] = Json{{"update_h", update_name(exp.task.agent_h.mode.kind)},
                       {"update_ai", update_name(exp.task.agent_ai.mode.kind)},
                       {"tie_maps_to_one", exp.task.agent_h.mode.tie_maps_to_one}};
    if (exp.task.kind != TaskKind::Modular) {
        doc["sequence"] = Json{{"c", exp.task.c},
                               {"perpetuation", perpetuation_name(exp.task.perpetuation)}};
    }
    doc["runs"] = exp.n_runs;
    doc["seed"] = exp.master_seed;
    if (exp.has_sweep) {
        doc["sweep"] = Json{
            {"axis1", Json{{"name", exp.axis1.name}, {"values", exp.axis1.values}}},
            {"axis2", Json{{"name", exp.axis2.name}, {"values", exp.axis2.values}}}};
    }
    doc["diagnostics"] = Json{{"conditional", exp.conditional},
                              {"hi", exp.hi},
                              {"lo", exp.lo}};
    if (exp.has_output) {
        doc["output"] = Json{{"path", exp.out_path},
                             {"format", exp.out_format == OutputFormat::Json ? "json" : "csv"}};
    }
    return doc;
}

} // namespace

ExperimentFile parse_experiment(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SimError(ErrorCode::TypeMismatch,
                       std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SimError(ErrorCode::TypeMismatch,
                       "configuration root must be a JSON object");
    }
    check_keys(doc, "",
               {"task", "agents", "mode", "sequence", "runs", "seed", "sweep",
                "diagnostics", "output"});

    ExperimentFile exp;

    const std::string task = as_string(require(doc, "", "task"), "task");
    if (task == "modular") {
        exp.task.kind = TaskKind::Modular;
    } else if (task == "ai_to_h") {
        exp.task.kind = TaskKind::AiToH;
    } else if (task == "h_to_ai") {
        exp.task.kind = TaskKind::HToAi;
    } else {
        throw SimError(ErrorCode::TypeMismatch,
                       "'task' must be \"modular\", \"ai_to_h\" or \"h_to_ai\"");
    }

    // Reproducibility guard: a wall-clock default would make results
    // impossible to regenerate, so the seed is mandatory.
    const Json& seed = require(doc, "", "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
        throw SimError(ErrorCode::TypeMismatch, "expected an integer for 'seed'");
    }
    exp.master_seed = seed.get<std::uint64_t>();

    if (const Json* runs = find(doc, "runs")) {
        const long long r = as_int(*runs, "runs");
        if (r < 1) {
            throw SimError(ErrorCode::ConstraintViolation, "'runs' must be >= 1");
        }
        exp.n_runs = static_cast<int>(r);
    }

    if (const Json* sw = find(doc, "sweep")) {
        if (!sw->is_object()) {
            throw SimError(ErrorCode::TypeMismatch, "expected an object for 'sweep'");
        }
        check_keys(*sw, "sweep", {"axis1", "axis2"});
        exp.axis1 = parse_axis(require(*sw, "sweep", "axis1"), "sweep.axis1");
        exp.axis2 = parse_axis(require(*sw, "sweep", "axis2"), "sweep.axis2");
        exp.has_sweep = true;
    }

    const Json& agents = require(doc, "", "agents");
    if (!agents.is_object()) {
        throw SimError(ErrorCode::TypeMismatch, "expected an object for 'agents'");
    }
    check_keys(agents, "agents", {"h", "ai"});
    const Json& h = require(agents, "agents", "h");
    const Json& ai = require(agents, "agents", "ai");
    check_keys(h, "agents.h", {"n", "k"});
    check_keys(ai, "agents.ai", {"n", "k", "rule"});

    exp.task.agent_h.role = Role::Human;
    exp.task.agent_h.rule = RuleKind::HeuristicLinear;
    exp.task.agent_h.n =
        static_cast<int>(as_int(require(h, "agents.h", "n"), "agents.h.n"));
    if (const Json* k = find(h, "k")) {
        exp.task.agent_h.k = static_cast<int>(as_int(*k, "agents.h.k"));
    } else if (!axis_covers(exp, "k_h_over_k_ai")) {
        throw SimError(ErrorCode::MissingField,
                       "missing mandatory field 'agents.h.k' (no sweep axis derives it)");
    }

    exp.task.agent_ai.role = Role::AI;
    exp.task.agent_ai.rule = RuleKind::RuleUniform;
    exp.task.agent_ai.k =
        static_cast<int>(as_int(require(ai, "agents.ai", "k"), "agents.ai.k"));
    if (const Json* n = find(ai, "n")) {
        exp.task.agent_ai.n = static_cast<int>(as_int(*n, "agents.ai.n"));
    } else if (axis_covers(exp, "n_ai_over_n_h")) {
        exp.task.agent_ai.n = exp.task.agent_h.n + 1; // placeholder; cells override
    } else {
        throw SimError(ErrorCode::MissingField,
                       "missing mandatory field 'agents.ai.n' (no sweep axis derives it)");
    }
    if (const Json* rule = find(ai, "rule")) {
        const std::string r = as_string(*rule, "agents.ai.rule");
        if (r == "rule_uniform") {
            exp.task.agent_ai.rule = RuleKind::RuleUniform;
        } else if (r == "hallucinatory") {
            if (exp.task.kind != TaskKind::Modular) {
                throw SimError(ErrorCode::ConstraintViolation,
                               "'agents.ai.rule': sequenced tasks express hallucination "
                               "via 'sequence.perpetuation'");
            }
            exp.task.agent_ai.rule = RuleKind::Hallucinatory;
        } else {
            throw SimError(ErrorCode::TypeMismatch,
                           "'agents.ai.rule' must be \"rule_uniform\" or \"hallucinatory\"");
        }
    }

    UpdateMode mode_h = UpdateMode::probabilistic();
    UpdateMode mode_ai = UpdateMode::probabilistic();
    if (const Json* mode = find(doc, "mode")) {
        if (!mode->is_object()) {
            throw SimError(ErrorCode::TypeMismatch, "expected an object for 'mode'");
        }
        check_keys(*mode, "mode", {"update", "update_h", "update_ai", "tie_maps_to_one"});
        if (const Json* u = find(*mode, "update")) {
            mode_h.kind = mode_ai.kind = parse_update(as_string(*u, "mode.update"),
                                                      "mode.update");
        }
        if (const Json* u = find(*mode, "update_h")) {
            mode_h.kind = parse_update(as_string(*u, "mode.update_h"), "mode.update_h");
        }
        if (const Json* u = find(*mode, "update_ai")) {
            mode_ai.kind = parse_update(as_string(*u, "mode.update_ai"), "mode.update_ai");
        }
        if (const Json* t = find(*mode, "tie_maps_to_one")) {
            const bool tie = as_bool(*t, "mode.tie_maps_to_one");
            mode_h.tie_maps_to_one = tie;
            mode_ai.tie_maps_to_one = tie;
        }
    }
    exp.task.agent_h.mode = mode_h;
    exp.task.agent_ai.mode = mode_ai;

    if (const Json* seq = find(doc, "sequence")) {
        if (exp.task.kind == TaskKind::Modular) {
            throw SimError(ErrorCode::ConstraintViolation,
                           "'sequence' is only valid for sequenced tasks");
        }
        if (!seq->is_object()) {
            throw SimError(ErrorCode::TypeMismatch, "expected an object for 'sequence'");
        }
        check_keys(*seq, "sequence", {"c", "perpetuation"});
        if (const Json* c = find(*seq, "c")) {
            exp.task.c = static_cast<int>(as_int(*c, "sequence.c"));
        } else if (!axis_covers(exp, "c_over_k_ai")) {
            throw SimError(ErrorCode::MissingField,
                           "missing mandatory field 'sequence.c' (no sweep axis derives it)");
        } else {
            exp.task.c = 1; // placeholder; cells override
        }
        if (const Json* p = find(*seq, "perpetuation")) {
            const std::string s = as_string(*p, "sequence.perpetuation");
            if (s == "rule_based") {
                exp.task.perpetuation = Perpetuation::RuleBased;
            } else if (s == "hallucinatory") {
                if (exp.task.kind == TaskKind::AiToH) {
                    throw SimError(ErrorCode::ConstraintViolation,
                                   "ai_to_h always perpetuates rule-based; "
                                   "'sequence.perpetuation' must be \"rule_based\"");
                }
                exp.task.perpetuation = Perpetuation::Hallucinatory;
            } else {
                throw SimError(ErrorCode::TypeMismatch,
                               "'sequence.perpetuation' must be \"rule_based\" or "
                               "\"hallucinatory\"");
            }
        }
    } else if (exp.task.kind != TaskKind::Modular) {
        if (!axis_covers(exp, "c_over_k_ai")) {
            throw SimError(ErrorCode::MissingField,
                           "missing mandatory field 'sequence' for a sequenced task");
        }
        exp.task.c = 1; // placeholder; cells override
    }

    if (const Json* diag = find(doc, "diagnostics")) {
        if (!diag->is_object()) {
            throw SimError(ErrorCode::TypeMismatch, "expected an object for 'diagnostics'");
        }
        check_keys(*diag, "diagnostics", {"conditional", "hi", "lo"});
        if (const Json* c = find(*diag, "conditional")) {
            exp.conditional = as_bool(*c, "diagnostics.conditional");
        }
        if (const Json* v = find(*diag, "hi")) exp.hi = as_number(*v, "diagnostics.hi");
        if (const Json* v = find(*diag, "lo")) exp.lo = as_number(*v, "diagnostics.lo");
        if (!(0.0 <= exp.lo && exp.lo < exp.hi && exp.hi <= 1.0)) {
            throw SimError(ErrorCode::ConstraintViolation,
                           "'diagnostics' thresholds require 0 <= lo < hi <= 1");
        }
    }

    if (const Json* out = find(doc, "output")) {
        if (!out->is_object()) {
            throw SimError(ErrorCode::TypeMismatch, "expected an object for 'output'");
        }
        check_keys(*out, "output", {"path", "format"});
        exp.out_path = as_string(require(*out, "output", "path"), "output.path");
        if (const Json* f = find(*out, "format")) {
            const std::string s = as_string(*f, "output.format");
            if (s == "csv") {
                exp.out_format = OutputFormat::Csv;
            } else if (s == "json") {
                exp.out_format = OutputFormat::Json;
            } else {
                throw SimError(ErrorCode::TypeMismatch,
                               "'output.format' must be \"csv\" or \"json\"");
            }
        }
        exp.has_output = true;
    }

    // Validate the concrete task now unless a sweep derives parts of it; a
    // sweep validates every resolved cell before simulating.
    if (!exp.has_sweep) {
        exp.task.validate();
    }

    exp.canonical = canonical_echo(exp);
    return exp;
}

ExperimentFile experiment_from_canonical(const nlohmann::ordered_json& canonical) {
    return parse_experiment(canonical.dump());
}

SweepSpec ExperimentFile::to_sweep_spec(int workers) const {
    SweepSpec spec;
    spec.base = task;
    spec.axis1 = axis1;
    spec.axis2 = axis2;
    spec.n_runs = n_runs;
    spec.policy.master_seed = master_seed;
    spec.workers = workers;
    spec.conditional = conditional;
    spec.hi = hi;
    spec.lo = lo;
    return spec;
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace nkcsim
