#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rdcds/protocol.hpp"

namespace rdcds {

enum class OpKind { read, update };
enum class VerifyLevel { off, quick, full };

// One read-or-update instruction for a time slot. Dropouts are 0-based
// server ids; a missing increment means a seeded-random one.
struct SlotOp {
    OpKind kind = OpKind::read;
    std::vector<std::size_t> dropouts;
    std::size_t security = 0;                          // X, updates only
    std::optional<std::vector<std::int64_t>> increment; // explicit, updates only
};

struct Verdict {
    std::string name;
    bool pass = true;
    std::string detail;   // populated only on failure
};

struct SlotReport {
    std::size_t slot = 0;
    OpKind kind = OpKind::read;
    ServerSet dropouts;
    std::size_t security = 0;
    bool feasible = false;
    bool clamped = false;
    std::optional<CostReport> cost;
    std::vector<Verdict> verdicts;
    std::optional<std::vector<Symbol>> recovered_message;

    bool all_passed() const;
};

struct UpdateRecord {
    std::size_t slot = 0;
    ServerSet dropouts;
    std::size_t security = 0;
};

// The evolving system: N server rows plus a plaintext reference payload that
// acts as the consistency oracle. Slots execute serially; one owner.
//
// All randomness is drawn from streams keyed by (seed, slot, purpose), so a
// state reloaded from a snapshot replays the exact draws of the uninterrupted
// run. Within a slot the draw order is fixed: increment first, then secure
// noise blocks in block order, row-major. Verification subsets come from a
// separately keyed stream so the verify level never shifts protocol draws.
class SystemState {
public:
    static SystemState init(SystemParams params, std::uint64_t seed);
    static SystemState init(SystemParams params, std::vector<std::int64_t> message,
                            std::uint64_t seed);

    // Executes one operation. Infeasible operations are reported, never
    // thrown, and leave the storage and reference untouched; the slot
    // counter still advances (every operation occupies one time slot).
    SlotReport step(const SlotOp& op, VerifyLevel level = VerifyLevel::quick);

    std::vector<Verdict> verify(VerifyLevel level) const;

    // Versioned canonical binary snapshot ("RDCD"). The seed is supplied at
    // load time; update history is intentionally not serialized.
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static SystemState load(std::istream& in, std::uint64_t seed);
    static SystemState load_file(const std::string& path, std::uint64_t seed);

    const SystemParams& params() const { return params_; }
    const FieldMatrix& cauchy() const { return cauchy_; }
    std::size_t slot() const { return slot_; }
    const std::vector<std::vector<Symbol>>& storage_rows() const { return servers_; }
    const std::vector<Symbol>& reference_message() const { return ref_message_; }
    const std::vector<FieldMatrix>& reference_noise() const { return ref_noise_; }
    const std::vector<UpdateRecord>& update_history() const { return history_; }

    // Test hook for the oracle-sensitivity checks.
    void corrupt_storage(std::size_t server, std::size_t col, Symbol value);

private:
    SystemState(SystemParams params, std::uint64_t seed);

    SeededRng op_stream(std::size_t slot) const;
    SeededRng verify_stream(std::size_t slot) const;
    void rebuild_reference();
    std::vector<Verdict> verify_at(VerifyLevel level, std::size_t slot) const;

    SystemParams params_;
    FieldMatrix cauchy_;
    std::vector<std::vector<Symbol>> servers_;
    std::vector<Symbol> ref_message_;
    std::vector<FieldMatrix> ref_noise_;
    StaircaseMatrix ref_matrix_;
    std::size_t slot_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<UpdateRecord> history_;
};

} // namespace rdcds
