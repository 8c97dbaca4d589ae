// SPDX-License-Identifier: Apache-2.0
//
// discordlab: trace-norm geometric discord of Bell-diagonal two-qubit states
// under local Markovian channels, plus ground-state correlations of the
// periodic XXZ ring. Subcommands:
//
//   evolve    sweep a channel parameter and tabulate |c_i'|, D_G and D_2
//   critical  analytic sudden-change report for one state and channel
//   region    classify sampled states by sudden-change count
//   xxz       ground-state correlations and their sudden-change census
//   verify    run the library's cross-validation suites
//
// Exit codes: 0 success, 1 numeric failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "discordlab/channels.hpp"
#include "discordlab/discord.hpp"
#include "discordlab/dynamics.hpp"
#include "discordlab/format.hpp"
#include "discordlab/verify.hpp"
#include "discordlab/xxz.hpp"

namespace {

using json = nlohmann::json;  // map-backed objects keep keys in lexicographic order

discordlab::CorrelationVector parse_c(const std::string& text) {
    std::istringstream is(text);
    double a, b, c;
    char comma1 = 0, comma2 = 0;
    if (!(is >> a >> comma1 >> b >> comma2 >> c) || comma1 != ',' || comma2 != ',')
        throw std::invalid_argument("expected --c as three comma-separated reals, e.g. 0.1,0.2,0.3");
    std::string rest;
    if (is >> rest) throw std::invalid_argument("trailing characters in --c value");
    return discordlab::CorrelationVector(a, b, c);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

std::string trajectory_csv(const discordlab::Trajectory& t) {
    using discordlab::format_number;
    std::string out = "param,c1p,c2p,c3p,dg1,dg2\n";
    for (const auto& s : t.samples) {
        out += format_number(s.param);
        out += ',';
        out += format_number(std::abs(s.c.c1));
        out += ',';
        out += format_number(std::abs(s.c.c2));
        out += ',';
        out += format_number(std::abs(s.c.c3));
        out += ',';
        out += format_number(s.dg);
        out += ',';
        out += format_number(s.d2);
        out += '\n';
    }
    return out;
}

json trajectory_json(const discordlab::Trajectory& t) {
    using discordlab::round_to_output_precision;
    json rows = json::array();
    for (const auto& s : t.samples) {
        json row;
        row["c1p"] = round_to_output_precision(std::abs(s.c.c1));
        row["c2p"] = round_to_output_precision(std::abs(s.c.c2));
        row["c3p"] = round_to_output_precision(std::abs(s.c.c3));
        row["dg1"] = round_to_output_precision(s.dg);
        row["dg2"] = round_to_output_precision(s.d2);
        row["param"] = round_to_output_precision(s.param);
        rows.push_back(std::move(row));
    }
    json doc;
    doc["channel"] = discordlab::channel_name(t.kind);
    doc["samples"] = std::move(rows);
    return doc;
}

/// Minimal polyline plot, enough to eyeball a trajectory without tooling.
std::string trajectory_svg(const discordlab::Trajectory& t) {
    const int width = 640, height = 400, margin = 40;
    double ymax = 1e-12;
    for (const auto& s : t.samples) ymax = std::max({ymax, s.dg, s.d2});
    const auto xpix = [&](double p) { return margin + p * (width - 2 * margin); };
    const auto ypix = [&](double v) { return height - margin - (v / ymax) * (height - 2 * margin); };
    const auto polyline = [&](auto accessor, const char* color) {
        std::string pts;
        for (const auto& s : t.samples) {
            pts += discordlab::format_number(xpix(s.param));
            pts += ',';
            pts += discordlab::format_number(ypix(accessor(s)));
            pts += ' ';
        }
        return "  <polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    };
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                      "viewBox=\"0 0 640 400\">\n";
    svg += "  <rect x=\"40\" y=\"40\" width=\"560\" height=\"320\" fill=\"white\" "
           "stroke=\"black\"/>\n";
    for (int i = 1; i < 10; ++i) {
        const double x = xpix(i / 10.0);
        svg += "  <line x1=\"" + discordlab::format_number(x) + "\" y1=\"356\" x2=\"" +
               discordlab::format_number(x) + "\" y2=\"360\" stroke=\"black\"/>\n";
    }
    for (int i = 1; i <= 3; ++i)
        svg += polyline([i](const discordlab::TrajectorySample& s) { return std::abs(s.c[i - 1]); },
                        "#bbbbbb");
    svg += polyline([](const discordlab::TrajectorySample& s) { return s.dg; }, "#1f77b4");
    svg += polyline([](const discordlab::TrajectorySample& s) { return s.d2; }, "#d62728");
    svg += "</svg>\n";
    return svg;
}

json critical_json(const discordlab::CriticalPointReport& rep) {
    using discordlab::round_to_output_precision;
    json conditions;
    conditions["distinct"] = rep.cond_distinct;
    conditions["nonzero"] = rep.cond_nonzero;
    conditions["ordering"] = rep.cond_ordering;
    json doc;
    doc["channel"] = discordlab::channel_name(rep.kind);
    doc["conditions"] = std::move(conditions);
    doc["degenerate"] = rep.degenerate;
    doc["double"] = rep.double_sc;
    json pts = json::array();
    for (double p : rep.points) pts.push_back(round_to_output_precision(p));
    doc["points"] = std::move(pts);
    return doc;
}

int run(int argc, char** argv) {
    CLI::App app{"1-norm geometric quantum discord under local decoherence"};
    app.require_subcommand(1);

    std::string c_text, channel_text = "gad", out_path;
    std::string evolve_format = "csv", critical_format = "json", xxz_format = "json";
    std::size_t steps = 1000, samples = 10000, resolution = 10000;
    std::uint64_t seed = 1;
    double delta = 0.0;
    int length = 12;
    std::vector<std::string> include_points;
    std::string suite = "all";

    auto* evolve = app.add_subcommand("evolve", "sweep the decoherence parameter for one state");
    evolve->add_option("--c", c_text, "correlation triple c1,c2,c3")->required();
    evolve->add_option("--channel", channel_text, "bf, pf, bpf or gad");
    evolve->add_option("--steps", steps, "number of parameter samples (>= 2)");
    evolve->add_option("--format", evolve_format, "csv, json or svg");
    evolve->add_option("--out", out_path, "output path (default: stdout)");

    auto* critical = app.add_subcommand("critical", "analytic sudden-change report");
    critical->add_option("--c", c_text, "correlation triple c1,c2,c3")->required();
    critical->add_option("--channel", channel_text, "bf, pf, bpf or gad");
    critical->add_option("--format", critical_format, "json");
    critical->add_option("--out", out_path, "output path (default: stdout)");

    auto* region = app.add_subcommand("region", "classify sampled states by sudden-change count");
    region->add_option("--channel", channel_text, "bf, pf, bpf or gad");
    region->add_option("--samples", samples, "number of sampled states");
    region->add_option("--seed", seed, "sampling seed");
    region->add_option("--include-point", include_points,
                       "extra state(s) c1,c2,c3 prepended to the scan");
    region->add_option("--out", out_path, "output path (default: stdout)");

    auto* xxz = app.add_subcommand("xxz", "XXZ ground-state correlations under decoherence");
    xxz->add_option("--delta", delta, "anisotropy")->required();
    xxz->add_option("--length", length, "even chain length, 2..16");
    xxz->add_option("--channel", channel_text, "bf, pf, bpf, gad or all");
    xxz->add_option("--steps", steps, "trajectory samples for kink detection");
    xxz->add_option("--format", xxz_format, "json report or csv trajectory (single channel)");
    xxz->add_option("--out", out_path, "output path (default: stdout)");

    auto* verify = app.add_subcommand("verify", "run cross-validation suites");
    verify->add_option("--suite", suite, "all, qstate, channels, oracle, proposition1, dynamics, xxz");
    verify->add_option("--samples", samples, "states per suite");
    verify->add_option("--resolution", resolution, "oracle sphere resolution");
    verify->add_option("--seed", seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    using namespace discordlab;

    if (evolve->parsed()) {
        const Trajectory t = trajectory(parse_c(c_text), parse_channel(channel_text), steps);
        if (evolve_format == "csv")
            write_output(out_path, trajectory_csv(t));
        else if (evolve_format == "json")
            write_output(out_path, trajectory_json(t).dump(2) + "\n");
        else if (evolve_format == "svg")
            write_output(out_path, trajectory_svg(t));
        else
            throw std::invalid_argument("unsupported format '" + evolve_format + "' for evolve");
        return 0;
    }

    if (critical->parsed()) {
        if (critical_format != "json")
            throw std::invalid_argument("unsupported format '" + critical_format + "' for critical");
        const CriticalPointReport rep = critical_points(parse_c(c_text), parse_channel(channel_text));
        write_output(out_path, critical_json(rep).dump(2) + "\n");
        return 0;
    }

    if (region->parsed()) {
        const ChannelKind kind = parse_channel(channel_text);
        if (samples < 1) throw std::invalid_argument("region scan needs --samples >= 1");
        std::string csv = "c1,c2,c3,class\n";
        const auto emit = [&](const CorrelationVector& c, RegionClass cls) {
            csv += format_number(c.c1);
            csv += ',';
            csv += format_number(c.c2);
            csv += ',';
            csv += format_number(c.c3);
            csv += ',';
            csv += region_class_name(cls);
            csv += '\n';
        };
        for (const auto& text : include_points) {
            const CorrelationVector c = parse_c(text);
            emit(c, classify_sudden_changes(c, kind));
        }
        for (const auto& s : double_sc_region(kind, samples, seed)) emit(s.c, s.cls);
        write_output(out_path, csv);
        return 0;
    }

    if (xxz->parsed()) {
        std::vector<ChannelKind> kinds;
        if (channel_text == "all" || channel_text == "ALL")
            kinds = {ChannelKind::bf, ChannelKind::pf, ChannelKind::bpf, ChannelKind::gad};
        else
            kinds = {parse_channel(channel_text)};
        if (xxz_format == "csv") {
            if (kinds.size() != 1)
                throw std::invalid_argument("csv trajectory output needs a single --channel");
            const GroundStateResult gs = ground_state(ChainSpec(length, delta));
            write_output(out_path, trajectory_csv(trajectory(gs.c, kinds.front(),
                                                             std::max<std::size_t>(steps, 50))));
            return 0;
        }
        if (xxz_format != "json")
            throw std::invalid_argument("unsupported format '" + xxz_format + "' for xxz");
        const auto rows = xxz_sudden_change_table({delta}, length, kinds, std::max<std::size_t>(steps, 50));
        const SuddenChangeRow& row = rows.front();
        json doc;
        doc["c"] = {round_to_output_precision(row.gs.c.c1), round_to_output_precision(row.gs.c.c2),
                    round_to_output_precision(row.gs.c.c3)};
        json cells = json::array();
        for (const auto& cell : row.cells) {
            json jc;
            jc["analytic_count"] = cell.analytic_count;
            jc["channel"] = channel_name(cell.kind);
            jc["degenerate"] = cell.degenerate;
            jc["numeric_count"] = cell.numeric_count;
            json pts = json::array();
            for (double p : cell.points) pts.push_back(round_to_output_precision(p));
            jc["points"] = std::move(pts);
            cells.push_back(std::move(jc));
        }
        doc["cells"] = std::move(cells);
        doc["degeneracy"] = row.gs.degeneracy;
        doc["delta"] = round_to_output_precision(row.delta);
        doc["energy_density"] = round_to_output_precision(row.gs.energy_density);
        doc["g_xx"] = round_to_output_precision(row.gs.g_xx);
        doc["g_zz"] = round_to_output_precision(row.gs.g_zz);
        doc["length"] = length;
        write_output(out_path, doc.dump(2) + "\n");
        return 0;
    }

    // verify
    VerifyOptions opt;
    opt.samples = samples == 10000 ? 100 : samples;  // region default is too big here
    opt.resolution = resolution;
    opt.seed = seed;
    bool all_pass = true;
    for (const auto& r : run_verification(suite, opt)) {
        all_pass = all_pass && r.pass;
        std::cout << "suite " << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail
                  << ")\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
}
