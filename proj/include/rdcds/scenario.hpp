#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdcds/engine.hpp"

namespace rdcds {

// One parsed scenario op. Server ids in scenario files are 1-based; they are
// converted to 0-based at parse time.
struct OpSpec {
    SlotOp op;
    bool expected_infeasible = false;
    std::optional<VerifyLevel> verify;
};

struct Scenario {
    std::size_t servers = 0;
    std::size_t read_threshold = 0;
    double storage_factor = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> modulus;
    std::vector<OpSpec> ops;
};

// Strict JSON parser: unknown keys and malformed fields are rejected with a
// located diagnostic (ScenarioParseError / ScenarioValidationError).
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

struct RunOptions {
    VerifyLevel verify = VerifyLevel::quick;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> snapshot_path;
};

struct RunReport {
    std::size_t servers = 0;
    std::size_t read_threshold = 0;
    std::size_t storage_factor = 0;
    std::uint64_t modulus = 0;
    std::size_t message_length = 0;
    std::uint64_t seed = 0;
    std::vector<Verdict> init_verdicts;
    std::vector<SlotReport> slots;
    std::size_t failed_verdicts = 0;
    std::size_t cost_mismatches = 0;   // on unclamped feasible ops
    int exit_status = 0;               // 0 pass, 1 failed verdict or mismatch
};

RunReport run_scenario(const Scenario& scenario, const RunOptions& options);

// Canonical machine-readable form: same scenario and seed yield identical
// bytes.
std::string slot_report_json(const SlotReport& report);
std::string report_json(const RunReport& report);
std::string report_text(const RunReport& report);

} // namespace rdcds
