// tavis — command-line front end: figure presets, config runs, closed-form residual report

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tavis/tavis.hpp"

namespace {

constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;

int cmd_run(const std::string& preset_name, const std::string& config_path, const std::string& method,
            const std::string& format, const std::string& output_path) {
    tavis::ScenarioConfig config;
    try {
        if (!preset_name.empty()) {
            const auto p = tavis::preset(preset_name);
            if (!p) {
                std::cerr << "error: unknown preset '" << preset_name << "' (see list-presets)\n";
                return exit_usage;
            }
            config = *p;
        } else {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read config '" << config_path << "'\n";
                return exit_usage;
            }
            std::ostringstream text;
            text << in.rdbuf();
            config = tavis::parse_config(text.str());
        }
        if (!method.empty()) {
            const auto m = tavis::method_from_string(method);
            if (!m) throw tavis::ValidationError("method = '" + method + "' not one of analytic, spectral, rk");
            config.method = *m;
        }
        if (format == "csv") config.format = tavis::OutputFormat::csv;
        else if (format == "json") config.format = tavis::OutputFormat::json;
        else if (!format.empty()) throw tavis::ValidationError("format = '" + format + "' not one of csv, json");
    } catch (const tavis::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    if (output_path.empty()) return tavis::run(config, std::cout, std::cerr);
    std::ofstream out(output_path);
    if (!out) {
        std::cerr << "error: cannot write '" << output_path << "'\n";
        return exit_usage;
    }
    return tavis::run(config, out, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-atom Tavis-Cummings dynamics: purity, dipole squeezing and negativity of atom 1"};
    app.require_subcommand(1);

    std::string preset_name, config_path, method, format, output_path;
    auto* run = app.add_subcommand("run", "Evolve a preset or config file and emit the observable series");
    auto* preset_opt = run->add_option("--preset", preset_name, "Figure preset (fig1a ... fig3d)");
    auto* config_opt = run->add_option("--config", config_path, "Path to a key = value config file");
    preset_opt->excludes(config_opt);
    config_opt->excludes(preset_opt);
    run->add_option("--method", method, "Override backend: analytic, spectral or rk");
    run->add_option("--format", format, "Override output format: csv or json");
    run->add_option("-o,--output", output_path, "Write to a file instead of stdout");

    tavis::ModelParams vp{1.0, 0.1, 0.0, 1.0, 0.0};
    int vn = 0;
    double t_max = 30.0, tolerance = 1e-6;
    int t_steps = 301;
    bool as_printed = false;
    std::string report_format = "csv";
    auto* val = app.add_subcommand("validate-appendix", "Compare the closed-form propagator with the spectral oracle");
    val->add_option("--lambda1", vp.lambda1)->capture_default_str();
    val->add_option("--lambda2", vp.lambda2)->capture_default_str();
    val->add_option("--delta1", vp.delta1)->capture_default_str();
    val->add_option("--delta2", vp.delta2)->capture_default_str();
    val->add_option("--omega", vp.omega)->capture_default_str();
    val->add_option("--n", vn, "Sector index, M - 2")->capture_default_str()->check(CLI::NonNegativeNumber);
    val->add_option("--t-max", t_max)->capture_default_str()->check(CLI::PositiveNumber);
    val->add_option("--t-steps", t_steps)->capture_default_str()->check(CLI::Range(2, 1000000));
    val->add_option("--tolerance", tolerance)->capture_default_str()->check(CLI::PositiveNumber);
    val->add_flag("--as-printed", as_printed, "Use the coefficient formulas exactly as typeset");
    val->add_option("--format", report_format)->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

    auto* list = app.add_subcommand("list-presets", "Show the figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    if (*run) {
        if (preset_name.empty() && config_path.empty()) {
            std::cerr << "error: run needs --preset or --config\n";
            return exit_usage;
        }
        return cmd_run(preset_name, config_path, method, format, output_path);
    }

    if (*list) {
        for (const auto& p : tavis::presets()) std::cout << p.name << "  " << p.description << '\n';
        return 0;
    }

    if (*val) {
        try {
            vp.validate();
        } catch (const tavis::InvalidInput& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_usage;
        }
        tavis::AnalyticOptions opts;
        if (as_printed) opts.variant = tavis::ClosedFormVariant::as_printed;
        const auto grid = tavis::uniform_grid(t_max, t_steps);
        try {
            const auto rep = tavis::validate_appendix(vp, vn, grid, opts, tolerance);
            if (report_format == "json") tavis::write_report_json(std::cout, rep);
            else tavis::write_report_csv(std::cout, rep);
            if (rep.status == tavis::ReportStatus::skipped)
                std::cerr << "skipped: " << rep.reason << '\n';
            return rep.status == tavis::ReportStatus::fail ? exit_numerical : 0;
        } catch (const tavis::NumericalError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_numerical;
        }
    }
    return exit_usage;
}
