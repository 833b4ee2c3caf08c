#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nhsense/experiments.hpp"
#include "nhsense/svg.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> default_plot_columns(const nhsense::ResultTable& table,
                                              std::string& x_column) {
    x_column = table.columns.at(0);
    std::vector<std::string> ys;
    for (std::size_t i = 1; i < table.columns.size(); ++i) ys.push_back(table.columns[i]);
    return ys;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-Hermitian qubit sensing simulator", "nh-sense"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string svg_path;
    bool logx = false;

    for (const char* name : {"sweep-lambda", "sweep-theta1", "noise-sweep", "fisher-sweep",
                             "decompose", "supplement-configs"}) {
        CLI::App* sub = app.add_subcommand(name, "run the " + std::string{name} + " scenario");
        sub->add_option("--config", config_path, "JSON config file; defaults fill missing keys");
        sub->add_option("--seed", seed, "override the random seed");
        sub->add_option("--out", out_path, "output CSV path");
        sub->add_option("--svg", svg_path, "also render an SVG plot");
        sub->add_flag("--logx", logx, "log-scale x axis in the SVG plot");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string scenario = app.get_subcommands().at(0)->get_name();
        nhsense::ExperimentConfig cfg;
        if (!config_path.empty()) {
            cfg = nhsense::ExperimentConfig::from_json_text(read_file(config_path));
            if (nhsense::scenario_name(cfg.scenario) != scenario)
                throw std::invalid_argument("config scenario '" +
                                            nhsense::scenario_name(cfg.scenario) +
                                            "' does not match subcommand '" + scenario + "'");
        } else {
            cfg = nhsense::ExperimentConfig::defaults_for(
                nhsense::scenario_from_name(scenario));
        }
        if (seed) cfg.seed = *seed;

        const nhsense::ResultTable table = nhsense::run(cfg);

        if (out_path.empty()) {
            std::cout << nhsense::to_csv(table);
        } else {
            nhsense::emit_csv(table, out_path);
            std::cout << "wrote " << out_path << " (" << table.rows.size() << " rows)\n";
        }
        if (!svg_path.empty()) {
            std::string x_column;
            const auto ys = default_plot_columns(table, x_column);
            nhsense::PlotOptions options;
            options.log_x = logx;
            options.title = scenario;
            nhsense::emit_svg_plot(table, x_column, ys, svg_path, options);
            std::cout << "wrote " << svg_path << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
