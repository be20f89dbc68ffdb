#include "rdcds/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rdcds/errors.hpp"

namespace rdcds {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ScenarioValidationError("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) {
        throw ScenarioValidationError("missing key \"" + key + "\" in " + where);
    }
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
        throw ScenarioValidationError("\"" + key + "\" in " + where +
                                      " must be a positive integer");
    }
    return v.get<std::size_t>();
}

VerifyLevel parse_verify(const std::string& s, const std::string& where) {
    if (s == "off") return VerifyLevel::off;
    if (s == "quick") return VerifyLevel::quick;
    if (s == "full") return VerifyLevel::full;
    throw ScenarioValidationError("\"verify\" in " + where +
                                  " must be one of off|quick|full");
}

OpSpec parse_op(const json& obj, std::size_t index, std::size_t servers) {
    const std::string where = "ops[" + std::to_string(index) + "]";
    if (!obj.is_object()) {
        throw ScenarioValidationError(where + " must be an object");
    }
    if (!obj.contains("kind") || !obj.at("kind").is_string()) {
        throw ScenarioValidationError(where + " needs a \"kind\" string");
    }
    const std::string kind = obj.at("kind").get<std::string>();

    OpSpec spec;
    if (kind == "read") {
        require_keys(obj, {"kind", "dropouts", "expected_infeasible", "verify"}, where);
        spec.op.kind = OpKind::read;
    } else if (kind == "update") {
        require_keys(obj, {"kind", "dropouts", "x", "increment", "expected_infeasible", "verify"},
                     where);
        spec.op.kind = OpKind::update;
    } else {
        throw ScenarioValidationError(where + " kind must be \"read\" or \"update\"");
    }

    if (obj.contains("dropouts")) {
        const json& d = obj.at("dropouts");
        if (!d.is_array()) {
            throw ScenarioValidationError(where + ".dropouts must be an array");
        }
        for (const json& v : d) {
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 ||
                v.get<std::uint64_t>() > servers) {
                throw ScenarioValidationError(where + ".dropouts entries must be server "
                                              "numbers in [1, N]");
            }
            spec.op.dropouts.push_back(v.get<std::size_t>() - 1);
        }
    }
    if (spec.op.kind == OpKind::update) {
        if (obj.contains("x")) {
            const json& x = obj.at("x");
            if (!x.is_number_unsigned()) {
                throw ScenarioValidationError(where + ".x must be a non-negative integer");
            }
            spec.op.security = x.get<std::size_t>();
        }
        if (obj.contains("increment")) {
            const json& inc = obj.at("increment");
            if (inc.is_string()) {
                if (inc.get<std::string>() != "random") {
                    throw ScenarioValidationError(where + ".increment must be \"random\" "
                                                  "or an integer array");
                }
            } else if (inc.is_array()) {
                std::vector<std::int64_t> values;
                for (const json& v : inc) {
                    if (!v.is_number_integer()) {
                        throw ScenarioValidationError(where + ".increment entries must be "
                                                      "integers");
                    }
                    values.push_back(v.get<std::int64_t>());
                }
                spec.op.increment = std::move(values);
            } else {
                throw ScenarioValidationError(where + ".increment must be \"random\" or an "
                                              "integer array");
            }
        }
    }
    if (obj.contains("expected_infeasible")) {
        const json& e = obj.at("expected_infeasible");
        if (!e.is_boolean()) {
            throw ScenarioValidationError(where + ".expected_infeasible must be a boolean");
        }
        spec.expected_infeasible = e.get<bool>();
    }
    if (obj.contains("verify")) {
        const json& v = obj.at("verify");
        if (!v.is_string()) {
            throw ScenarioValidationError(where + ".verify must be a string");
        }
        spec.verify = parse_verify(v.get<std::string>(), where);
    }
    return spec;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(e.what());
    }
    if (!root.is_object()) {
        throw ScenarioValidationError("scenario root must be an object");
    }
    require_keys(root, {"params", "seed", "q", "ops"}, "scenario");
    if (!root.contains("params") || !root.at("params").is_object()) {
        throw ScenarioValidationError("scenario needs a \"params\" object");
    }
    const json& params = root.at("params");
    require_keys(params, {"n", "r_r", "k_c"}, "params");

    Scenario sc;
    sc.servers = get_count(params, "n", "params");
    sc.read_threshold = get_count(params, "r_r", "params");
    if (!params.contains("k_c") || !params.at("k_c").is_number()) {
        throw ScenarioValidationError("\"k_c\" in params must be a number");
    }
    sc.storage_factor = params.at("k_c").get<double>();
    if (sc.read_threshold > sc.servers) {
        throw ScenarioValidationError("R_r exceeds N");
    }
    if (!(sc.storage_factor > 0.0) ||
        sc.storage_factor > static_cast<double>(sc.read_threshold)) {
        throw ScenarioValidationError("k_c must satisfy 0 < k_c <= r_r");
    }

    if (root.contains("seed")) {
        const json& s = root.at("seed");
        if (!s.is_number_unsigned()) {
            throw ScenarioValidationError("\"seed\" must be a non-negative integer");
        }
        sc.seed = s.get<std::uint64_t>();
    }
    if (root.contains("q")) {
        const json& q = root.at("q");
        if (!q.is_number_unsigned()) {
            throw ScenarioValidationError("\"q\" must be a positive integer");
        }
        sc.modulus = q.get<std::uint64_t>();
    }

    // Deriving here validates the modulus and fixes L so that explicit
    // increments can be length-checked before execution.
    SystemParams derived;
    try {
        derived = derive_params(sc.servers, sc.read_threshold, sc.storage_factor, sc.modulus);
    } catch (const InvalidParams& e) {
        throw ScenarioValidationError(e.what());
    }

    if (root.contains("ops")) {
        const json& ops = root.at("ops");
        if (!ops.is_array()) {
            throw ScenarioValidationError("\"ops\" must be an array");
        }
        for (std::size_t i = 0; i < ops.size(); ++i) {
            OpSpec spec = parse_op(ops.at(i), i, sc.servers);
            if (spec.op.increment.has_value() &&
                spec.op.increment->size() != derived.message_length) {
                throw ScenarioValidationError(
                    "ops[" + std::to_string(i) + "].increment must have L=" +
                    std::to_string(derived.message_length) + " entries");
            }
            sc.ops.push_back(std::move(spec));
        }
    }
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioParseError("cannot open scenario file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

RunReport run_scenario(const Scenario& sc, const RunOptions& options) {
    const SystemParams params =
        derive_params(sc.servers, sc.read_threshold, sc.storage_factor, sc.modulus);
    const std::uint64_t seed = options.seed_override.value_or(sc.seed);

    RunReport report;
    report.servers = params.servers;
    report.read_threshold = params.read_threshold;
    report.storage_factor = params.storage_factor;
    report.modulus = params.field.modulus();
    report.message_length = params.message_length;
    report.seed = seed;

    SystemState state = SystemState::init(params, seed);
    report.init_verdicts = state.verify(options.verify);

    for (const OpSpec& spec : sc.ops) {
        const VerifyLevel level = spec.verify.value_or(options.verify);
        SlotReport slot = state.step(spec.op, level);
        slot.verdicts.insert(slot.verdicts.begin(),
                             {"feasibility_expected",
                              slot.feasible != spec.expected_infeasible, ""});
        report.slots.push_back(std::move(slot));
    }
    if (options.snapshot_path) {
        state.save_file(*options.snapshot_path);
    }

    for (const Verdict& v : report.init_verdicts) {
        if (!v.pass) ++report.failed_verdicts;
    }
    for (const SlotReport& slot : report.slots) {
        for (const Verdict& v : slot.verdicts) {
            if (!v.pass) ++report.failed_verdicts;
        }
        if (slot.feasible && !slot.clamped && slot.cost &&
            !(slot.cost->normalized_cost == slot.cost->optimal_cost)) {
            ++report.cost_mismatches;
        }
    }
    report.exit_status = (report.failed_verdicts > 0 || report.cost_mismatches > 0) ? 1 : 0;
    return report;
}

namespace {

json verdicts_json(const std::vector<Verdict>& verdicts) {
    json arr = json::array();
    for (const Verdict& v : verdicts) {
        json obj;
        obj["name"] = v.name;
        obj["pass"] = v.pass;
        if (!v.detail.empty()) obj["detail"] = v.detail;
        arr.push_back(std::move(obj));
    }
    return arr;
}

json slot_json(const SlotReport& slot) {
    json obj;
    obj["slot"] = slot.slot;
    obj["kind"] = slot.kind == OpKind::read ? "read" : "update";
    json dropouts = json::array();
    for (std::size_t n : slot.dropouts) dropouts.push_back(n + 1);
    obj["dropouts"] = std::move(dropouts);
    if (slot.kind == OpKind::update) obj["x"] = slot.security;
    obj["feasible"] = slot.feasible;
    if (slot.feasible && slot.cost) {
        obj["clamped"] = slot.clamped;
        obj[slot.kind == OpKind::read ? "downloaded_symbols" : "uploaded_symbols"] =
            slot.cost->transferred_symbols;
        obj["cost"] = slot.cost->normalized_cost.str();
        obj["bound"] = slot.cost->optimal_cost.str();
        obj["cost_matches_bound"] =
            slot.cost->normalized_cost == slot.cost->optimal_cost;
    }
    obj["verdicts"] = verdicts_json(slot.verdicts);
    if (slot.recovered_message) {
        obj["recovered"] = *slot.recovered_message;
    }
    return obj;
}

} // namespace

std::string slot_report_json(const SlotReport& report) {
    return slot_json(report).dump();
}

std::string report_json(const RunReport& report) {
    json obj;
    obj["params"] = {{"n", report.servers},
                     {"r_r", report.read_threshold},
                     {"k_c", report.storage_factor},
                     {"q", report.modulus},
                     {"l", report.message_length}};
    obj["seed"] = report.seed;
    obj["init_verdicts"] = verdicts_json(report.init_verdicts);
    json slots = json::array();
    for (const SlotReport& slot : report.slots) slots.push_back(slot_json(slot));
    obj["slots"] = std::move(slots);
    obj["summary"] = {{"ops", report.slots.size()},
                      {"failed_verdicts", report.failed_verdicts},
                      {"cost_mismatches", report.cost_mismatches},
                      {"exit_status", report.exit_status}};
    return obj.dump();
}

std::string report_text(const RunReport& report) {
    std::ostringstream out;
    out << "RDCDS run: N=" << report.servers << " R_r=" << report.read_threshold
        << " K_c=" << report.storage_factor << " q=" << report.modulus
        << " L=" << report.message_length << " seed=" << report.seed << "\n";

    auto verdict_summary = [](const std::vector<Verdict>& verdicts) {
        std::size_t passed = 0;
        std::string failures;
        for (const Verdict& v : verdicts) {
            if (v.pass) {
                ++passed;
            } else {
                failures += " " + v.name;
                if (!v.detail.empty()) failures += " (" + v.detail + ")";
            }
        }
        std::string s = std::to_string(passed) + "/" + std::to_string(verdicts.size());
        if (!failures.empty()) s += " FAILED:" + failures;
        return s;
    };

    out << "init verdicts: " << verdict_summary(report.init_verdicts) << "\n";
    out << "slot  kind    |D|  X  cost     bound    match  verdicts\n";
    for (const SlotReport& slot : report.slots) {
        char line[128];
        const std::string cost = slot.cost ? slot.cost->normalized_cost.str() : "-";
        const std::string bound = slot.cost ? slot.cost->optimal_cost.str() : "-";
        std::string match = "-";
        if (slot.cost) {
            match = slot.cost->normalized_cost == slot.cost->optimal_cost ? "yes" : "no";
            if (slot.clamped) match += "*";
        }
        std::snprintf(line, sizeof(line), "%4zu  %-6s  %3zu  %zu  %-7s  %-7s  %-5s  ",
                      slot.slot, slot.kind == OpKind::read ? "read" : "update",
                      slot.dropouts.size(), slot.security, cost.c_str(), bound.c_str(),
                      slot.feasible ? match.c_str() : "inf");
        out << line << verdict_summary(slot.verdicts) << "\n";
    }
    out << "summary: ops=" << report.slots.size()
        << " failed_verdicts=" << report.failed_verdicts
        << " cost_mismatches=" << report.cost_mismatches
        << " exit=" << report.exit_status << "\n";
    if (report.exit_status == 0) {
        out << "all checks passed\n";
    }
    return out.str();
}

} // namespace rdcds
