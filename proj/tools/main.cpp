// main.cpp - miseclab command line front end
//
// Subcommands: list, run, freq-sweep, validate, report. Machine-readable
// data goes to stdout or --out; diagnostics go to stderr. Exit codes:
// 0 success, 1 usage/validation error, 2 numeric or solver error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "miseclab/errors.hpp"
#include "miseclab/scenario.hpp"

namespace {

struct SourceOptions {
    std::string builtin;
    std::string file;
};

struct Overrides {
    std::optional<double> noise;
    std::optional<double> sigma;
    std::optional<double> threshold;
    std::optional<double> frequency;
};

void add_source_options(CLI::App* cmd, SourceOptions& source) {
    auto* builtin = cmd->add_option("--builtin", source.builtin, "built-in scenario name");
    auto* file = cmd->add_option("--file", source.file, "scenario config file");
    builtin->excludes(file);
}

void add_override_options(CLI::App* cmd, Overrides& overrides) {
    cmd->add_option("--noise", overrides.noise, "noise power override, W");
    cmd->add_option("--sigma", overrides.sigma, "medium conductivity override, S/m");
    cmd->add_option("--threshold", overrides.threshold, "detector relative threshold override");
    cmd->add_option("--freq", overrides.frequency, "drive frequency override, Hz");
}

miseclab::Scenario load_source(const SourceOptions& source, const Overrides& overrides) {
    if (source.builtin.empty() && source.file.empty())
        throw miseclab::config_error("one of --builtin or --file is required");
    miseclab::Scenario scenario = source.builtin.empty()
                                      ? miseclab::load_scenario(source.file)
                                      : miseclab::builtin_scenario(source.builtin);
    // overrides land after parsing and before validation, so they can
    // repair an out-of-range file value
    if (overrides.noise) scenario.medium.noise_power = *overrides.noise;
    if (overrides.sigma) scenario.medium.conductivity = *overrides.sigma;
    if (overrides.threshold) scenario.detector_threshold = *overrides.threshold;
    if (overrides.frequency) scenario.drive.frequency = *overrides.frequency;
    miseclab::validate_scenario(scenario);
    return scenario;
}

struct FreqGrid {
    double start = 80e3;
    double stop = 120e3;
    double step = 100.0;
};

FreqGrid parse_grid(const std::string& text) {
    FreqGrid grid;
    if (text.empty()) return grid;
    const std::size_t a = text.find(':');
    const std::size_t b = text.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw miseclab::config_error("--grid expects start:stop:step in Hz");
    try {
        grid.start = std::stod(text.substr(0, a));
        grid.stop = std::stod(text.substr(a + 1, b - a - 1));
        grid.step = std::stod(text.substr(b + 1));
    } catch (const std::exception&) {
        throw miseclab::config_error("--grid expects numeric start:stop:step");
    }
    return grid;
}

void emit_warnings(const miseclab::ResultTable& table) {
    for (const std::string& warning : table.warnings)
        std::cerr << "warning: " << warning << "\n";
}

int run_command(const SourceOptions& source, const Overrides& overrides,
                const std::string& out_path) {
    const miseclab::Scenario scenario = load_source(source, overrides);
    const miseclab::ResultTable table = miseclab::run(scenario);
    emit_warnings(table);
    if (out_path.empty())
        miseclab::write_csv(table, std::cout);
    else
        miseclab::write_csv(table, out_path);
    return 0;
}

int freq_sweep_command(const SourceOptions& source, const Overrides& overrides,
                       const std::string& grid_text, const std::string& out_path) {
    const miseclab::Scenario scenario = load_source(source, overrides);
    const FreqGrid grid = parse_grid(grid_text);
    const auto points = miseclab::frequency_sweep(scenario, grid.start, grid.stop, grid.step);
    if (out_path.empty())
        miseclab::write_freq_csv(points, std::cout);
    else
        miseclab::write_freq_csv(points, out_path);
    return 0;
}

int validate_command(const std::string& path) {
    miseclab::load_scenario(path);
    std::cerr << path << ": ok\n";
    return 0;
}

int report_command(const SourceOptions& source, const Overrides& overrides) {
    const miseclab::Scenario scenario = load_source(source, overrides);
    const miseclab::ResultTable table = miseclab::run(scenario);
    emit_warnings(table);
    std::cout << miseclab::report_text(table);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"miseclab: magnetic-induction link eavesdropping simulator"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "list built-in scenarios");

    SourceOptions run_source;
    Overrides run_overrides;
    std::string run_out;
    auto* run_cmd = app.add_subcommand("run", "run a scenario sweep, emit CSV");
    add_source_options(run_cmd, run_source);
    add_override_options(run_cmd, run_overrides);
    run_cmd->add_option("--out", run_out, "CSV output path (default stdout)");

    SourceOptions freq_source;
    Overrides freq_overrides;
    std::string freq_out, freq_grid;
    auto* freq_cmd = app.add_subcommand("freq-sweep",
                                        "sweep the drive frequency at the base geometry");
    add_source_options(freq_cmd, freq_source);
    add_override_options(freq_cmd, freq_overrides);
    freq_cmd->add_option("--grid", freq_grid, "frequency grid start:stop:step, Hz "
                                              "(default 80000:120000:100)");
    freq_cmd->add_option("--out", freq_out, "CSV output path (default stdout)");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "check a scenario config file");
    validate_cmd->add_option("file", validate_path, "scenario config file")->required();

    SourceOptions report_source;
    Overrides report_overrides;
    auto* report_cmd = app.add_subcommand("report", "run a scenario and print a summary");
    add_source_options(report_cmd, report_source);
    add_override_options(report_cmd, report_overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (list_cmd->parsed()) {
            for (const std::string& name : miseclab::builtin_scenario_names())
                std::cout << name << "\n";
            return 0;
        }
        if (run_cmd->parsed()) return run_command(run_source, run_overrides, run_out);
        if (freq_cmd->parsed())
            return freq_sweep_command(freq_source, freq_overrides, freq_grid, freq_out);
        if (validate_cmd->parsed()) return validate_command(validate_path);
        if (report_cmd->parsed()) return report_command(report_source, report_overrides);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const miseclab::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const miseclab::degenerate_geometry_error& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 2;
    } catch (const miseclab::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
