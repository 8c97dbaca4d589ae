// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + DISCORDLAB_CLI_PATH + " " + args +
                            " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliRun result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<double> split_csv_row(const std::string& line, std::size_t numeric_fields) {
    std::vector<double> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k < numeric_fields; ++k) {
        const std::size_t end = line.find(',', start);
        out.push_back(std::stod(line.substr(start, end - start)));
        start = end == std::string::npos ? line.size() : end + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("evolve emits the pinned CSV schema") {
    const CliRun r = run_cli("evolve --c 0.1,0.2,0.3 --channel gad --steps 1000");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.front() == "param,c1p,c2p,c3p,dg1,dg2");
    REQUIRE(lines.size() == 1001);  // header + 1000 samples
    // every row round-trips through a parser
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split_csv_row(lines[i], 6);
        REQUIRE(row.size() == 6);
        REQUIRE(row[0] >= 0.0);
        REQUIRE(row[0] <= 1.0);
    }
    const auto first = split_csv_row(lines[1], 6);
    REQUIRE(first[4] == Catch::Approx(0.2).margin(1e-12));  // D_G(0)
    const auto last = split_csv_row(lines.back(), 6);
    REQUIRE(last[0] == 1.0);
    REQUIRE(last[4] == 0.0);
    // kinks of the dg1 column sit at 1/3 and 2/3 (within two grid cells)
    std::vector<double> dg;
    for (std::size_t i = 1; i < lines.size(); ++i) dg.push_back(split_csv_row(lines[i], 6)[4]);
    const double h = 1.0 / 999.0;
    std::vector<double> kinks;
    for (std::size_t i = 1; i + 1 < dg.size(); ++i) {
        const double d2 = std::abs(dg[i + 1] - 2.0 * dg[i] + dg[i - 1]) / (h * h);
        if (d2 > 50.0) kinks.push_back(i * h);
    }
    REQUIRE(kinks.size() == 2);
    REQUIRE(std::abs(kinks[0] - 1.0 / 3.0) <= 2.0 * h);
    REQUIRE(std::abs(kinks[1] - 2.0 / 3.0) <= 2.0 * h);
}

TEST_CASE("evolve reproduces the freezing plateau") {
    const CliRun r = run_cli("evolve --c 1,-0.1,0.1 --channel pf --steps 1000");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    const double sc = 1.0 - std::sqrt(0.1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split_csv_row(lines[i], 6);
        if (row[0] < sc - 2e-3) REQUIRE(std::abs(row[4] - 0.1) < 1e-9);
    }
}

TEST_CASE("evolve of the zero state is identically zero") {
    const CliRun r = run_cli("evolve --c 0,0,0 --channel bf --steps 200");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    for (std::size_t i = 1; i < lines.size(); ++i) REQUIRE(split_csv_row(lines[i], 6)[4] == 0.0);
}

TEST_CASE("evolve svg output is generated") {
    const CliRun r = run_cli("evolve --c 0.1,0.2,0.3 --channel gad --steps 100 --format svg");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.rfind("<svg", 0) == 0);
    REQUIRE(r.output.find("polyline") != std::string::npos);
}

TEST_CASE("evolve json output carries the same samples") {
    const CliRun r = run_cli("evolve --c 0.1,0.2,0.3 --channel gad --steps 100 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    REQUIRE(doc["channel"] == "gad");
    REQUIRE(doc["samples"].size() == 100);
    REQUIRE(doc["samples"][0]["dg1"].get<double>() == Catch::Approx(0.2).margin(1e-12));
    REQUIRE(doc["samples"][99]["param"].get<double>() == 1.0);
}

TEST_CASE("critical subcommand serializes the analytic report") {
    SECTION("double sudden change") {
        const CliRun r = run_cli("critical --c 0.1,0.2,0.3 --channel gad --format json");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.output);
        REQUIRE(doc["double"].get<bool>());
        REQUIRE_FALSE(doc["degenerate"].get<bool>());
        REQUIRE(doc["points"].size() == 2);
        REQUIRE(std::abs(doc["points"][0].get<double>() - 1.0 / 3.0) < 1e-9);
        REQUIRE(std::abs(doc["points"][1].get<double>() - 2.0 / 3.0) < 1e-9);
        REQUIRE(doc["channel"] == "gad");
    }
    SECTION("symmetric state yields an empty report") {
        const CliRun r = run_cli("critical --c 0.5,0.5,0.5 --channel bf");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.output);
        REQUIRE_FALSE(doc["double"].get<bool>());
        REQUIRE(doc["points"].empty());
    }
    SECTION("degenerate single crossing") {
        const CliRun r = run_cli("critical --c 1,-0.1,0.1 --channel pf");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.output);
        REQUIRE(doc["degenerate"].get<bool>());
        REQUIRE(doc["points"].size() == 1);
        REQUIRE(std::abs(doc["points"][0].get<double>() - 0.683772233983) < 1e-9);
    }
}

TEST_CASE("region scan output") {
    SECTION("include-point anchors the first row") {
        const CliRun r = run_cli("region --channel gad --samples 5 --seed 7 --include-point 0.1,0.2,0.3");
        REQUIRE(r.exit_code == 0);
        const auto lines = split_lines(r.output);
        REQUIRE(lines[0] == "c1,c2,c3,class");
        REQUIRE(lines[1] == "0.1,0.2,0.3,double");
        REQUIRE(lines.size() == 7);
    }
    SECTION("byte-identical across runs and worker counts") {
        const CliRun a = run_cli("region --channel gad --samples 400 --seed 11");
        const CliRun b = run_cli("region --channel gad --samples 400 --seed 11");
        const CliRun c = run_cli("region --channel gad --samples 400 --seed 11",
                                 "DISCORDLAB_THREADS=3");
        const CliRun d = run_cli("region --channel gad --samples 400 --seed 11",
                                 "DISCORDLAB_THREADS=1");
        REQUIRE(a.exit_code == 0);
        REQUIRE(a.output == b.output);
        REQUIRE(a.output == c.output);
        REQUIRE(a.output == d.output);
    }
    SECTION("zero samples is a usage error") {
        REQUIRE(run_cli("region --channel gad --samples 0 --seed 1").exit_code == 2);
    }
}

TEST_CASE("xxz subcommand") {
    SECTION("json report for the polarized phase") {
        const CliRun r = run_cli("xxz --delta 2 --length 8 --channel gad");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.output);
        REQUIRE(std::abs(doc["c"][0].get<double>()) < 1e-9);
        REQUIRE(std::abs(doc["c"][1].get<double>()) < 1e-9);
        REQUIRE(doc["c"][2].get<double>() == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(doc["cells"].size() == 1);
        REQUIRE(doc["cells"][0]["analytic_count"].get<int>() == 0);
        REQUIRE(doc["cells"][0]["numeric_count"].get<int>() == 0);
        REQUIRE(doc["length"].get<int>() == 8);
    }
    SECTION("csv trajectory of the ground-state correlations") {
        const CliRun r = run_cli("xxz --delta 2 --length 8 --channel bf --steps 100 --format csv");
        REQUIRE(r.exit_code == 0);
        const auto lines = split_lines(r.output);
        REQUIRE(lines.front() == "param,c1p,c2p,c3p,dg1,dg2");
        REQUIRE(lines.size() == 101);
        // c = (0,0,1): discord identically zero along the sweep
        for (std::size_t i = 1; i < lines.size(); ++i)
            REQUIRE(split_csv_row(lines[i], 6)[4] == 0.0);
    }
    SECTION("csv needs a single channel") {
        REQUIRE(run_cli("xxz --delta 2 --length 8 --channel all --format csv").exit_code == 2);
    }
}

TEST_CASE("verify subcommand prints per-suite summaries") {
    const CliRun r = run_cli("verify --suite oracle --samples 5 --resolution 1000");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("suite oracle: PASS") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    REQUIRE(run_cli("evolve --c 0.1,0.2 --channel gad").exit_code == 2);
    REQUIRE(run_cli("evolve --c 0.1,0.2,0.3 --channel zz").exit_code == 2);
    REQUIRE(run_cli("evolve --c 2,0,0 --channel bf").exit_code == 2);
    REQUIRE(run_cli("evolve --c 0.9,0.9,0.9 --channel bf").exit_code == 2);  // unphysical
    REQUIRE(run_cli("critical --channel gad").exit_code == 2);              // missing --c
    REQUIRE(run_cli("nonsense").exit_code == 2);
}
