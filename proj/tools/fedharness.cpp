// Federation harness CLI: runs a scenario file against an in-process
// federation and reports pass/fail per expectation.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dslink/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Federated dataset-linking scenario harness"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string report_path;

    CLI::App* run = app.add_subcommand("run", "Execute a scenario file");
    run->add_option("scenario", scenario_path, "Scenario file")->required();
    run->add_option("--report", report_path, "Also write the report here");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << scenario_path << "\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    const dslink::ScenarioParseResult parsed = dslink::parse_scenario(buffer.str());
    if (const dslink::ScenarioError* error = std::get_if<dslink::ScenarioError>(&parsed)) {
        std::cerr << "error: " << scenario_path << ":" << error->line << ": " << error->message << "\n";
        return 2;
    }

    const dslink::ScenarioReport report = dslink::run_scenario(std::get<dslink::Scenario>(parsed));
    const std::string text = report.to_text();
    std::cout << text;
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return 2;
        }
        out << text;
    }
    return report.passed() ? 0 : 1;
}
