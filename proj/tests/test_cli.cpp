#include <doctest.h>
#include <fstream>
#include <string>

#include "cli_helpers.hpp"

using testutil::fixture;
using testutil::run_cli;
using testutil::slurp;
using testutil::temp_path;

namespace {

int line_count(const std::string& text) {
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

} // namespace

TEST_CASE("list prints the six builtin names") {
    const auto result = run_cli("list");
    CHECK(result.exit_code == 0);
    CHECK(line_count(result.out) == 6);
    CHECK(result.out.find("config3") != std::string::npos);
    CHECK(result.out.find("secrecy_sweep") != std::string::npos);
}

TEST_CASE("run emits a CSV with one row per sweep point") {
    const std::string out = temp_path("config3.csv");
    const auto result = run_cli("run --builtin config3 --out " + out);
    CHECK(result.exit_code == 0);
    CHECK(result.out.empty());  // data went to the file, not stdout
    const std::string csv = slurp(out);
    CHECK(line_count(csv) == 8);  // header + 7 rows
    CHECK(csv.rfind("sweep_value,", 0) == 0);
    std::remove(out.c_str());
}

TEST_CASE("run without --out streams CSV to stdout only") {
    const auto result = run_cli("run --builtin config5");
    CHECK(result.exit_code == 0);
    CHECK(line_count(result.out) == 14);
    CHECK(result.err.empty());
}

TEST_CASE("unknown builtin fails with the valid names listed") {
    const auto result = run_cli("run --builtin nope");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("config1") != std::string::npos);
}

TEST_CASE("unknown flag fails with usage") {
    const auto result = run_cli("run --builtin config1 --frobnicate");
    CHECK(result.exit_code == 1);
}

TEST_CASE("missing source fails") {
    const auto result = run_cli("run");
    CHECK(result.exit_code == 1);
}

TEST_CASE("validate accepts good files and rejects each malformed fixture") {
    CHECK(run_cli("validate " + fixture("good_minimal.toml")).exit_code == 0);
    CHECK(run_cli("validate " + fixture("good_config1_noise.toml")).exit_code == 0);
    for (const char* name : {"bad_missing_tx.toml", "bad_duplicate_node.toml",
                             "bad_step.toml", "bad_conductivity.toml",
                             "bad_topology.toml"}) {
        const auto result = run_cli("validate " + fixture(name));
        CHECK(result.exit_code == 1);
        CHECK(!result.err.empty());
    }
    const auto missing_tx = run_cli("validate " + fixture("bad_missing_tx.toml"));
    CHECK(missing_tx.err.find("tx") != std::string::npos);
}

TEST_CASE("noise override equals the same value written in a file") {
    const std::string from_file = temp_path("file.csv");
    const std::string from_flag = temp_path("flag.csv");
    CHECK(run_cli("run --file " + fixture("good_config1_noise.toml") + " --out " + from_file)
              .exit_code == 0);
    CHECK(run_cli("run --builtin config1 --noise 5e-12 --out " + from_flag).exit_code == 0);
    CHECK(slurp(from_file) == slurp(from_flag));
    std::remove(from_file.c_str());
    std::remove(from_flag.c_str());
}

TEST_CASE("threshold override changes the verdict column") {
    const auto strict = run_cli("run --builtin config3 --threshold 0.001");
    CHECK(strict.exit_code == 0);
    // with a 0.1% threshold every orientation perturbs the link enough
    CHECK(strict.out.find("suspected") != std::string::npos);
}

TEST_CASE("freq-sweep default grid brackets the resonance") {
    const std::string out = temp_path("freq.csv");
    const auto result = run_cli("freq-sweep --builtin config1 --out " + out);
    CHECK(result.exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(line_count(csv) == 402);  // header + 401 grid points
    CHECK(csv.rfind("frequency_Hz,", 0) == 0);
    std::remove(out.c_str());
}

TEST_CASE("freq-sweep custom grid") {
    const auto result = run_cli("freq-sweep --builtin config1 --grid 99000:101000:1000");
    CHECK(result.exit_code == 0);
    CHECK(line_count(result.out) == 4);
    const auto bad = run_cli("freq-sweep --builtin config1 --grid oops");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("report names the strongest eavesdropper position") {
    const auto result = run_cli("report --builtin config1");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("(0, 3, 0) ft") != std::string::npos);
    CHECK(result.out.find("max |V_E|") != std::string::npos);
}

TEST_CASE("report flags the config3 null angle as the minimum") {
    const auto result = run_cli("report --builtin config3");
    CHECK(result.exit_code == 0);
    const std::size_t pos = result.out.find("min |V_E|");
    REQUIRE(pos != std::string::npos);
    const std::string line = result.out.substr(pos, result.out.find('\n', pos) - pos);
    CHECK(line.find("sweep_value 90") != std::string::npos);
}
