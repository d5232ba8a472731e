#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef TREEDIST_CLI_PATH
#define TREEDIST_CLI_PATH "treedist"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(TREEDIST_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const char* kTree29 = R"({"nodes":[
  {"id":"a","height":0,"children":[]},
  {"id":"b","height":1,"children":[]},
  {"id":"c","height":2,"children":[]},
  {"id":"m","height":3,"children":["a","b"]},
  {"id":"r","height":5,"children":["m","c"]}],"root":"r"})";

const char* kStrand = R"({"nodes":[{"id":"s","height":0,"children":[]}],"root":"s"})";

const char* kInstabilityN = R"({"nodes":[
  {"id":"a","height":0,"children":[]},
  {"id":"b","height":0,"children":[]},
  {"id":"c","height":0,"children":[]},
  {"id":"j","height":1,"children":["a","b","c"]}],"root":"j"})";

} // namespace

TEST_CASE("cli end to end") {
    write_text("/tmp/cli_t29.json", kTree29);
    write_text("/tmp/cli_strand.json", kStrand);
    write_text("/tmp/cli_n52.json", kInstabilityN);

    SUBCASE("validate accepts and rejects") {
        CHECK(run_cli("validate /tmp/cli_t29.json").code == 0);
        write_text("/tmp/cli_bad.json", R"({"nodes":[{"id":"p","height":1,"children":["c"]},
            {"id":"c","height":3,"children":[]}],"root":"p"})");
        auto r = run_cli("validate /tmp/cli_bad.json");
        CHECK(r.code == 2);
        CHECK(r.out.find("height-order") != std::string::npos);
    }

    SUBCASE("malformed json exits 2") {
        write_text("/tmp/cli_garbage.json", "{not json");
        CHECK(run_cli("validate /tmp/cli_garbage.json").code == 2);
        CHECK(run_cli("barcode /tmp/cli_garbage.json").code == 2);
    }

    SUBCASE("barcode counts bars and writes the file") {
        auto r = run_cli("barcode /tmp/cli_t29.json --out /tmp/cli_b29.json");
        CHECK(r.code == 0);
        CHECK(r.out.find("bars: 3") != std::string::npos);
        auto rs = run_cli("barcode /tmp/cli_strand.json --out /tmp/cli_bs.json");
        CHECK(rs.out.find("bars: 1") != std::string::npos);
    }

    SUBCASE("wasserstein from barcode files") {
        run_cli("barcode /tmp/cli_t29.json --out /tmp/cli_b29.json");
        run_cli("barcode /tmp/cli_strand.json --out /tmp/cli_bs.json");
        auto r = run_cli("wasserstein /tmp/cli_b29.json /tmp/cli_bs.json --p 1");
        CHECK(r.code == 0);
        CHECK(r.out.find("5") == 0);
    }

    SUBCASE("cophenetic reproduces the instability value") {
        auto r = run_cli("cophenetic /tmp/cli_strand.json /tmp/cli_n52.json --p 1");
        CHECK(r.code == 0);
        CHECK(r.out.find("3") == 0);
    }

    SUBCASE("presentation bracket with pivot and deterministic reports") {
        auto r = run_cli(
            "presentation /tmp/cli_t29.json /tmp/cli_strand.json --p 1 --out /tmp/cli_rep1.json");
        CHECK(r.code == 0);
        CHECK(r.out.find("lower 5 upper") != std::string::npos);
        run_cli("presentation /tmp/cli_t29.json /tmp/cli_strand.json --p 1 --out /tmp/cli_rep2.json");
        std::ifstream f1("/tmp/cli_rep1.json"), f2("/tmp/cli_rep2.json");
        std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
        std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
        CHECK(s1 == s2);
        CHECK(!s1.empty());
    }

    SUBCASE("interleaving equals the collapsed bracket") {
        auto r = run_cli("interleaving /tmp/cli_strand.json /tmp/cli_n52.json");
        CHECK(r.code == 0);
        CHECK(r.out.find("0.5") == 0);
        auto b = run_cli("presentation /tmp/cli_strand.json /tmp/cli_n52.json --p inf");
        CHECK(b.out.find("lower 0.5 upper 0.5") != std::string::npos);
    }

    SUBCASE("lift and filtrate round trip") {
        write_text("/tmp/cli_pm.json", R"({"generators":[0,0.25],"relations":[{"birth":0.25,"f":0,"g":1}]})");
        write_text("/tmp/cli_pn.json", R"({"generators":[0,0],"relations":[{"birth":1,"f":0,"g":1}]})");
        auto r = run_cli("lift /tmp/cli_pm.json /tmp/cli_pn.json --out /tmp/cli_lift.json");
        CHECK(r.code == 0);
        // feed the lifted f back through the sublevel filtration
        std::ifstream in("/tmp/cli_lift.json");
        std::string lift((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        write_text("/tmp/cli_filt.json", lift);
        auto fr = run_cli("filtrate /tmp/cli_filt.json --out /tmp/cli_forest.json");
        CHECK(fr.code == 0);
        CHECK(fr.out.find("trees: 1") != std::string::npos);
    }

    SUBCASE("scale guard exits 3") {
        // interleaving on wide trees trips the critical-set guard
        std::string nodes = R"({"nodes":[)";
        for (int i = 0; i < 14; ++i)
            nodes += R"({"id":"l)" + std::to_string(i) + R"(","height":0,"children":[]},)";
        nodes += R"({"id":"r","height":1,"children":[)";
        for (int i = 0; i < 14; ++i)
            nodes += (i ? "," : std::string()) + "\"l" + std::to_string(i) + "\"";
        nodes += R"(]}],"root":"r"})";
        write_text("/tmp/cli_wide.json", nodes);
        auto r = run_cli("interleaving /tmp/cli_wide.json /tmp/cli_strand.json");
        CHECK(r.code == 3);
        CHECK(r.out.find("scale guard") != std::string::npos);
    }

    SUBCASE("fuzz passes and the mutant fails") {
        auto r = run_cli("fuzz --budget 10 --seed 5 --out /tmp");
        CHECK(r.code == 0);
        CHECK(r.out.find("pass") != std::string::npos);
        auto z = run_cli("fuzz --budget 0");
        CHECK(z.code == 0);
        CHECK(z.out.find("vacuous") != std::string::npos);
        auto mu = run_cli("fuzz --budget 50 --seed 7 --mutate skip-triangle --out /tmp");
        CHECK(mu.code == 1);
        CHECK(mu.out.find("reproducer") != std::string::npos);
    }
}
