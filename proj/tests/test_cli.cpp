#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const char* cli_path() {
    const char* path = std::getenv("NKCSIM_CLI");
    REQUIRE_MESSAGE(path != nullptr, "NKCSIM_CLI must point at the cli binary");
    return path;
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "nkcsim_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    const auto dir = scratch_dir();
    const auto out_file = dir / "stdout.txt";
    const auto err_file = dir / "stderr.txt";
    const std::string cmd = std::string(cli_path()) + " " + args + " > " +
                            out_file.string() + " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    return path;
}

} // namespace

TEST_CASE("examples subcommand reproduces the worked tables") {
    const CliResult r = run_cli("examples");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("9/15") != std::string::npos);
    CHECK(r.out.find("2/5") != std::string::npos);
    CHECK(r.out.find("MISMATCH") == std::string::npos);
    CHECK(r.out.find("all worked examples reproduced") != std::string::npos);
}

TEST_CASE("run subcommand emits csv to stdout") {
    const auto cfg = write_config("modular.json", R"({
      "task": "modular",
      "agents": {"h": {"n": 10, "k": 2}, "ai": {"n": 50, "k": 4}},
      "runs": 20,
      "seed": 42
    })");
    const CliResult r = run_cli("run " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("axis1,axis2,", 0) == 0);

    const CliResult json = run_cli("run " + cfg.string() + " --format json");
    CHECK(json.exit_code == 0);
    CHECK(json.out.find("\"provenance\"") != std::string::npos);
    CHECK(json.out.find("\"mean_apo\"") != std::string::npos);
}

TEST_CASE("validation failures exit with code 1") {
    const auto cfg = write_config("no_seed.json", R"({
      "task": "modular",
      "agents": {"h": {"n": 10, "k": 2}, "ai": {"n": 50, "k": 4}}
    })");
    const CliResult r = run_cli("run " + cfg.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("seed") != std::string::npos);

    const CliResult not_sweep = run_cli("sweep " + cfg.string() + " --seed 3");
    CHECK(not_sweep.exit_code == 1);
}

TEST_CASE("io failures exit with code 3") {
    const CliResult r = run_cli("run /definitely/not/a/config.json");
    CHECK(r.exit_code == 3);
}

TEST_CASE("conceptual figures are rejected with an explanation") {
    const CliResult r = run_cli("figure 7");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("conceptual") != std::string::npos);
}

TEST_CASE("figure 6 output bytes are identical across invocations") {
    const auto dir = scratch_dir();
    const std::string prefix_a = (dir / "fig6_a").string();
    const std::string prefix_b = (dir / "fig6_b").string();
    const std::string args = " --runs 2 --seed 11 --format json --out ";
    const CliResult a = run_cli("figure 6" + args + prefix_a);
    const CliResult b = run_cli("figure 6" + args + prefix_b);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp(prefix_a + ".json") == slurp(prefix_b + ".json"));
    const std::string svg = slurp(prefix_a + ".svg");
    CHECK(svg == slurp(prefix_b + ".svg"));
    CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("sweep subcommand writes the requested file") {
    const auto cfg = write_config("sweep.json", R"({
      "task": "modular",
      "agents": {"h": {"n": 10}, "ai": {"k": 4}},
      "runs": 5,
      "seed": 21,
      "sweep": {
        "axis1": {"name": "n_ai_over_n_h", "values": [2, 5]},
        "axis2": {"name": "k_h_over_k_ai", "values": [0.25, 1]}
      }
    })");
    const auto out = scratch_dir() / "sweep_out.csv";
    const CliResult r = run_cli("sweep " + cfg.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("axis1,axis2,", 0) == 0);
    // 1 header + 4 cells.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
