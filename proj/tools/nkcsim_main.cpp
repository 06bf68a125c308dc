#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nkcsim/error.hpp"
#include "nkcsim/experiment.hpp"
#include "nkcsim/figures.hpp"
#include "nkcsim/monte_carlo.hpp"
#include "nkcsim/serialize.hpp"
#include "nkcsim/sweep.hpp"
#include "nkcsim/version.hpp"
#include "nkcsim/worked.hpp"

namespace {

using nkcsim::ErrorCode;
using nkcsim::SimError;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::GoldenMismatch: return 2;
        case ErrorCode::Io: return 3;
        default: return 1;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SimError(ErrorCode::Io, "cannot read configuration file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Flag overrides are applied to the raw JSON before parsing so the
// canonical echo (and therefore the provenance hash) reflects them.
nkcsim::ExperimentFile load_experiment(const std::string& path, bool has_seed,
                                       std::uint64_t seed, int runs) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw SimError(ErrorCode::TypeMismatch,
                       std::string("configuration is not valid JSON: ") + e.what());
    }
    if (has_seed && doc.is_object()) doc["seed"] = seed;
    if (runs > 0 && doc.is_object()) doc["runs"] = runs;
    return nkcsim::parse_experiment(doc.dump());
}

nkcsim::Format resolve_format(const std::string& flag, const nkcsim::ExperimentFile& exp) {
    if (flag == "csv") return nkcsim::Format::Csv;
    if (flag == "json") return nkcsim::Format::Json;
    return exp.out_format == nkcsim::OutputFormat::Json ? nkcsim::Format::Json
                                                        : nkcsim::Format::Csv;
}

void deliver(const nkcsim::ResultEnvelope& env, nkcsim::Format format,
             const std::string& out_flag, const nkcsim::ExperimentFile& exp) {
    std::string path = !out_flag.empty() ? out_flag : exp.out_path;
    if (path.empty()) {
        std::cout << (format == nkcsim::Format::Csv ? nkcsim::envelope_to_csv(env)
                                                    : nkcsim::envelope_to_json(env));
        return;
    }
    const std::size_t bytes = nkcsim::emit_results(env, format, path);
    std::cerr << "wrote " << bytes << " bytes to " << path << "\n";
}

std::map<std::string, double> parse_overrides(const std::vector<std::string>& sets) {
    std::map<std::string, double> overrides;
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw SimError(ErrorCode::InvalidInput,
                           "--set expects key=value (got '" + kv + "')");
        }
        try {
            overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw SimError(ErrorCode::InvalidInput,
                           "--set value for '" + kv.substr(0, eq) + "' is not a number");
        }
    }
    return overrides;
}

void write_text_atomic(const std::filesystem::path& destination, const std::string& body) {
    std::filesystem::path dir = destination.parent_path();
    if (dir.empty()) dir = ".";
    const std::filesystem::path tmp = dir / (".tmp-" + destination.filename().string());
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw SimError(ErrorCode::Io, "cannot write to '" + tmp.string() + "'");
    }
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.close();
    std::error_code ec;
    std::filesystem::rename(tmp, destination, ec);
    if (ec) {
        throw SimError(ErrorCode::Io,
                       "cannot move output into place at '" + destination.string() + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NKC-style simulator of AI-human joint adaptive search"};
    app.set_version_flag("--version", nkcsim::kToolVersion);
    app.require_subcommand(1);

    struct Common {
        std::string config;
        std::string format;
        std::string out;
        std::uint64_t seed = 0;
        bool has_seed = false;
        int runs = 0;
        int workers = 1;
    };

    auto add_common = [](CLI::App* cmd, Common& c, bool with_config) {
        if (with_config) {
            cmd->add_option("config", c.config, "experiment configuration (JSON)")
                ->required();
        }
        cmd->add_option("--format", c.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", c.out, "output path (default from config, else stdout)");
        cmd->add_option("--seed", c.seed, "master seed override")
            ->each([&c](const std::string&) { c.has_seed = true; });
        cmd->add_option("--runs", c.runs, "runs per cell override")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--workers", c.workers, "worker threads")
            ->check(CLI::PositiveNumber);
    };

    Common run_opts;
    CLI::App* cmd_run = app.add_subcommand("run", "single Monte Carlo cell");
    add_common(cmd_run, run_opts, true);

    Common sweep_opts;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "parameter grid sweep");
    add_common(cmd_sweep, sweep_opts, true);

    Common fig_opts;
    int fig_id = 0;
    std::vector<std::string> fig_sets;
    CLI::App* cmd_fig = app.add_subcommand("figure", "canonical figure replication");
    cmd_fig->add_option("id", fig_id, "figure id (3, 4, 5, 6 or 8)")->required();
    cmd_fig->add_option("--set", fig_sets, "parameter override key=value");
    add_common(cmd_fig, fig_opts, false);

    CLI::App* cmd_examples =
        app.add_subcommand("examples", "recompute the worked examples (golden check)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (cmd_run->parsed()) {
            const auto exp = load_experiment(run_opts.config, run_opts.has_seed,
                                             run_opts.seed, run_opts.runs);
            if (exp.has_sweep) {
                throw SimError(ErrorCode::InvalidInput,
                               "config declares a sweep; use the sweep subcommand");
            }
            auto env = nkcsim::make_envelope(exp.canonical, exp.master_seed);
            env.single = nkcsim::monte_carlo(exp.task, exp.n_runs,
                                             {exp.master_seed}, 0, run_opts.workers);
            deliver(env, resolve_format(run_opts.format, exp), run_opts.out, exp);
        } else if (cmd_sweep->parsed()) {
            const auto exp = load_experiment(sweep_opts.config, sweep_opts.has_seed,
                                             sweep_opts.seed, sweep_opts.runs);
            if (!exp.has_sweep) {
                throw SimError(ErrorCode::InvalidInput,
                               "config declares no sweep; use the run subcommand");
            }
            auto env = nkcsim::make_envelope(exp.canonical, exp.master_seed);
            const auto result = nkcsim::sweep(exp.to_sweep_spec(sweep_opts.workers));
            std::cerr << "sweep of " << result.cells.size() << " cells finished at "
                      << result.timestamp << "\n";
            env.sweep = result;
            deliver(env, resolve_format(sweep_opts.format, exp), sweep_opts.out, exp);
        } else if (cmd_fig->parsed()) {
            const auto overrides = parse_overrides(fig_sets);
            nkcsim::RngPolicy policy{fig_opts.has_seed ? fig_opts.seed : 42};
            const int runs = fig_opts.runs > 0 ? fig_opts.runs : 1000;
            const auto fig = nkcsim::replicate_figure(fig_id, overrides, policy, runs,
                                                      fig_opts.workers);
            const std::string prefix =
                !fig_opts.out.empty() ? fig_opts.out : "figure" + std::to_string(fig_id);
            const bool json = fig_opts.format != "csv";
            const std::string data_path = prefix + (json ? ".json" : ".csv");
            const std::size_t bytes = nkcsim::emit_results(
                fig.envelope, json ? nkcsim::Format::Json : nkcsim::Format::Csv,
                data_path);
            write_text_atomic(prefix + ".svg", fig.svg);
            std::cerr << "wrote " << bytes << " bytes to " << data_path << " and plot to "
                      << prefix << ".svg\n";
        } else if (cmd_examples->parsed()) {
            const auto report = nkcsim::show_worked_examples();
            std::cout << report.text;
            if (!report.ok) {
                throw SimError(ErrorCode::GoldenMismatch,
                               "worked examples do not match their pinned values");
            }
        }
    } catch (const SimError& e) {
        std::cerr << "error (" << nkcsim::error_code_name(e.code()) << "): " << e.what()
                  << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
