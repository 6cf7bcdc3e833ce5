// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include "output.hpp"
#include "scenario.hpp"
#include "tasks.hpp"

#include <nhzm/version.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace nhzm::cli {

namespace {

int do_run(const std::string& path, const std::string& out_dir, std::optional<std::uint64_t> seed,
           std::ostream& out, std::ostream& err) {
    Scenario sc;
    try {
        sc = load_scenario(path);
    } catch (const ScenarioError& e) {
        err << e.report();
        return kExitScenario;
    }
    if (seed) {
        sc.seed = *seed;
        sc.resolved["seed"] = *seed;
    }
    const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path("out") / sc.name
                                                        : std::filesystem::path(out_dir);
    try {
        const OutputDir od(dir, sc);
        const json results = run_task(sc, od);
        od.write_json("summary.json", {{"results", results}});
        json doc = {{"metadata", od.metadata()}, {"results", results}};
        out << format_report(doc);
        out << "outputs written to " << dir.string() << '\n';
    } catch (const nhzm::Error& e) {
        err << path << ": numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "cannot write outputs: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

int do_report(const std::string& dir, std::ostream& out, std::ostream& err) {
    const std::filesystem::path file = std::filesystem::path(dir) / "summary.json";
    std::ifstream in(file);
    if (!in) {
        err << file.string() << ": no such file; run a scenario into this directory first\n";
        return kExitScenario;
    }
    try {
        const json doc = json::parse(in);
        out << format_report(doc);
    } catch (const json::exception& e) {
        err << file.string() << ": unreadable summary: " << e.what() << '\n';
        return kExitScenario;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-Hermitian zero modes in a system chain coupled to a gain/loss reservoir"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    CLI::App* run = app.add_subcommand("run", "Run a scenario file and write its data files");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory (default: out/<scenario name>)");
    run->add_option("--seed", seed, "Override the scenario seed");

    std::string report_dir;
    CLI::App* report = app.add_subcommand("report", "Summarise a finished run");
    report->add_option("dir", report_dir, "Output directory of a run")->required();

    CLI::App* schema = app.add_subcommand("schema", "Print the scenario JSON schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream r;
        const int code = app.exit(e, o, r);
        out << o.str();
        err << r.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*run) return do_run(scenario_path, out_dir, seed, out, err);
    if (*report) return do_report(report_dir, out, err);
    if (*schema) {
        out << scenario_schema_text();
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace nhzm::cli
