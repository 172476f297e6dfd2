#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(COOPEMIT_CLI) + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST_CASE("evolve is deterministic and metadata re-ingests") {
    fs::remove_all("cli_a");
    fs::remove_all("cli_c");
    write("cli_evolve.json", R"({"mode": "evolve", "bath": {"ferromagnet": {"k0": 0.003, "N": 4}},
                                 "integrator": {"t_end": 3, "dt_out": 0.01}})");
    REQUIRE(run_cli("evolve --config cli_evolve.json --out cli_a") == 0);
    const std::string a = slurp("cli_a/trajectory.csv");
    const std::string meta = slurp("cli_a/metadata.json");
    REQUIRE(run_cli("run --config cli_evolve.json --out cli_a") == 0);
    CHECK(a.size() > 1000);
    CHECK(a == slurp("cli_a/trajectory.csv"));
    CHECK(meta == slurp("cli_a/metadata.json"));
    CHECK(a.find('\r') == std::string::npos);

    REQUIRE(run_cli("evolve --config cli_a/metadata.json --out cli_c") == 0);
    CHECK(slurp("cli_c/trajectory.csv") == a);
}

TEST_CASE("other subcommands") {
    fs::remove_all("cli_d");
    write("cli_tq.json", R"({"two_qubit": {"gs": 0.3, "Ja": 0.3}, "integrator": {"t_end": 5, "dt_out": 0.05}})");
    CHECK(run_cli("two-qubit --config cli_tq.json --out cli_d/tq") == 0);
    const std::string tq = slurp("cli_d/tq/trajectory.csv");
    CHECK(tq.rfind("tau,R_1,R_2,R_tot,delta_1N,pop_1,pop_2,rho_EE,rho_11,rho_22,rho_GG,re_rho_21\n", 0) == 0);

    write("cli_bath.json", R"({"bath": {"ferromagnet": {"N": 5}}})");
    CHECK(run_cli("couplings --config cli_bath.json --out cli_d/c") == 0);
    CHECK(fs::exists("cli_d/c/couplings.json"));
    CHECK(run_cli("modes --config cli_bath.json --out cli_d/m") == 0);
    CHECK(fs::exists("cli_d/m/modes.json"));

    write("cli_sweep.json", R"({"bath": {"ferromagnet": {"N": 3}}, "integrator": {"t_end": 2, "dt_out": 0.1},
                                "sweep": {"variable": "N", "values": [2, 3]}})");
    CHECK(run_cli("sweep --config cli_sweep.json --out cli_d/s --workers 2 --t-end 1") == 0);
    CHECK(fs::exists("cli_d/s/summary.csv"));
    CHECK(fs::exists("cli_d/s/point_001/trajectory.csv"));
}

TEST_CASE("exit codes") {
    write("cli_bad.json", R"({"mode": "evolve", "bath": {"ferromagnet": {}}, "bogus": 1})");
    CHECK(run_cli("evolve --config cli_bad.json --out cli_e") == 2);
    CHECK(slurp("cli_stderr.txt").find("bogus") != std::string::npos);
    CHECK(run_cli("evolve --config does_not_exist.json") == 2);
    CHECK(run_cli("evolve --config cli_evolve.json --rtol -1 --out cli_e") == 2);

    write("cli_big.json", R"({"mode": "evolve", "bath": {"couplings": {"gamma0": 1}}})");
    CHECK(run_cli("run --config cli_big.json") == 2);

    write("cli_cap.json", R"({"mode": "evolve", "bath": {"ferromagnet": {"N": 13}}})");
    CHECK(run_cli("evolve --config cli_cap.json --out cli_e") == 3);
    CHECK(slurp("cli_stderr.txt").find("cap") != std::string::npos);
    write("cli_cap.json", R"({"mode": "evolve", "bath": {"ferromagnet": {"N": 4}}, "qubit_cap": 3})");
    CHECK(run_cli("evolve --config cli_cap.json --out cli_e") == 3);
    CHECK(run_cli("frobnicate") != 0);
}
