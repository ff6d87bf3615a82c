#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// End-to-end checks of the command-line front end and its exit-code contract:
// 0 success, 2 configuration error, 3 Newton failure, 4 steady threshold not
// reached.

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SPINROD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string write_cfg(const std::string& name, const std::string& body) {
    const auto path = fs::temp_directory_path() / name;
    std::ofstream os(path);
    os << body;
    return path.string();
}

const char* kBase =
    "setup = b\n"
    "dim = 2\n"
    "Re = 1\n"
    "Rb = 1\n"
    "Fr = inf\n"
    "eps = 0.1\n"
    "ell = 1\n"
    "ds = 0.1\n"
    "t_end = 0.2\n";

}  // namespace

TEST_CASE("cli simulate succeeds and honors overrides") {
    const auto cfg = write_cfg("spinrod_cli_ok.cfg", kBase);
    CHECK(run_cli("simulate --config " + cfg) == 0);
    CHECK(run_cli("simulate --config " + cfg + " --radau_stages 1") == 0);
    std::remove(cfg.c_str());
}

TEST_CASE("cli reports configuration errors with exit code 2") {
    const auto bad = write_cfg("spinrod_cli_bad.cfg", std::string(kBase) + "bogus = 1\n");
    CHECK(run_cli("simulate --config " + bad) == 2);
    std::remove(bad.c_str());
    const auto cfg = write_cfg("spinrod_cli_ok2.cfg", kBase);
    CHECK(run_cli("simulate --config " + cfg + " --ds 0.3") == 2);  // non-integer cell count
    CHECK(run_cli("simulate --config /nonexistent.cfg") == 2);
    std::remove(cfg.c_str());
}

TEST_CASE("cli steady exit codes") {
    const auto cfg = write_cfg("spinrod_cli_steady.cfg",
                               std::string(kBase) + "t_end = 30\nsteady_threshold = 1e-8\n");
    CHECK(run_cli("steady --config " + cfg) == 0);
    // an unreachable threshold exits with code 4 at t_end
    CHECK(run_cli("steady --config " + cfg + " --steady_threshold 0 --t_end 0.3") == 4);
    std::remove(cfg.c_str());
}

TEST_CASE("cli reports Newton failure with exit code 3") {
    // extreme forcing with a huge step and a starved iteration budget
    const auto cfg = write_cfg("spinrod_cli_newton.cfg",
                               "setup = b\ndim = 2\nRe = 1e-4\nRb = 1e-3\nFr = inf\n"
                               "eps = 0.1\nell = 1\nds = 0.1\ndt = 0.5\nt_end = 1\n"
                               "newton_max_iterations = 2\n");
    CHECK(run_cli("simulate --config " + cfg) == 3);
    std::remove(cfg.c_str());
}
