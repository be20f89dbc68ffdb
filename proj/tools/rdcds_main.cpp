#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rdcds/scenario.hpp"

namespace {

// Exit codes: 0 all pass, 1 failed verdict or cost mismatch, 2 usage/parse.
constexpr int kUsageError = 2;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RDCDS coded-storage scenario runner"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string verify = "quick";
    std::string format = "text";
    std::string snapshot_path;
    std::uint64_t seed = 0;
    bool seed_given = false;

    CLI::App* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("file", scenario_path, "scenario JSON file")->required();
    run->add_option("--seed", seed, "override the scenario seed")
        ->each([&](const std::string&) { seed_given = true; });
    run->add_option("--verify", verify, "verification depth per op")
        ->check(CLI::IsMember({"off", "quick", "full"}));
    run->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    run->add_option("--snapshot", snapshot_path, "dump a state snapshot after the last op");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kUsageError;
    }

    try {
        const rdcds::Scenario scenario = rdcds::parse_scenario_file(scenario_path);

        rdcds::RunOptions options;
        if (verify == "off") options.verify = rdcds::VerifyLevel::off;
        if (verify == "quick") options.verify = rdcds::VerifyLevel::quick;
        if (verify == "full") options.verify = rdcds::VerifyLevel::full;
        if (seed_given) options.seed_override = seed;
        if (!snapshot_path.empty()) options.snapshot_path = snapshot_path;

        const rdcds::RunReport report = rdcds::run_scenario(scenario, options);
        if (format == "json") {
            std::cout << rdcds::report_json(report) << "\n";
        } else {
            std::cout << rdcds::report_text(report);
        }
        return report.exit_status;
    } catch (const rdcds::ScenarioParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsageError;
    } catch (const rdcds::ScenarioValidationError& e) {
        std::cerr << "invalid scenario: " << e.what() << "\n";
        return kUsageError;
    } catch (const rdcds::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
