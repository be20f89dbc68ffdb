#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rdcds/staircase.hpp"

namespace rdcds {

// Exact reduced fraction; costs are never reported as floats.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long num, long long den);
    bool operator==(const Rational&) const = default;
    std::string str() const;   // "5/3", or "2" when the denominator is 1
};

// Sorted unique 0-based server ids.
using ServerSet = std::vector<std::size_t>;

ServerSet make_server_set(std::vector<std::size_t> ids, std::size_t servers);
ServerSet complement(const ServerSet& set, std::size_t servers);

// ---------------------------------------------------------------------------
// Read: each available server sends the first lambda[J] symbols of its row,
// where J = N + 1 - |available|. The decoder solves the last downloaded
// block by inverting a square Cauchy submatrix, then peels backwards: for
// each earlier block the rows already recovered through replication are
// subtracted before inverting the remaining square system.

struct ReadPlan {
    std::size_t depth = 0;                // J, number of blocks downloaded
    std::size_t symbols_per_server = 0;   // lambda[J]
};
ReadPlan plan_read(const SystemParams& params, const ServerSet& available);

struct ReadDownload {
    std::size_t server = 0;
    std::vector<Symbol> symbols;
};

std::vector<ReadDownload> collect_downloads(
    const SystemParams& params,
    const std::vector<std::vector<Symbol>>& storage_rows,
    const ServerSet& available);

std::vector<Symbol> sic_decode(const SystemParams& params,
                               const FieldMatrix& cauchy,
                               std::vector<ReadDownload> downloads);

// ---------------------------------------------------------------------------
// Update: the increment is staircase-encoded with noise rows
// [secure noise; null rows; zeros] in the first G_t blocks and zeros beyond,
// where G_t = N - 2 R_r + K_c + X + |D| + 1. The null rows are solved
// recursively so that the coded rows of every dropout server vanish, letting
// dropouts skip the update while storage stays consistent.
//
// When the formula would give G_t < 1 (a regime with no cost-optimal
// construction), G_t is clamped to 1; the upload still works but exceeds the
// optimal cost, and reports carry a flag instead of hiding the gap.

std::size_t effective_block_count(const SystemParams& params,
                                  std::size_t dropout_count,
                                  std::size_t security, bool& clamped);

// One X x gamma[b] block of uniform symbols per staircase block b < block_count.
std::vector<FieldMatrix> sample_secure_noise(const SystemParams& params,
                                             std::size_t security,
                                             std::size_t block_count,
                                             SeededRng& rng);

struct UpdatePlan {
    ServerSet dropouts;
    std::size_t security = 0;          // X
    std::size_t effective_blocks = 1;  // G_t after clamping
    bool clamped = false;
    std::vector<FieldMatrix> secure_noise;  // X x gamma[b], b < G_t
    std::vector<FieldMatrix> null_blocks;   // |D| x gamma[b], b < G_t
    StaircaseMatrix increment;              // the encoded increment matrix
    FieldMatrix coded;                      // cauchy * increment.assembled

    // Per-block noise deltas applied to the reference noise on commit.
    std::vector<FieldMatrix> noise_delta(const SystemParams& params) const;
};

UpdatePlan plan_update(const SystemParams& params, const FieldMatrix& cauchy,
                       std::span<const Symbol> increment,
                       const ServerSet& dropouts, std::size_t security,
                       std::vector<FieldMatrix> secure_noise);

struct UpdatePacket {
    std::size_t server = 0;
    std::vector<Symbol> symbols;   // first lambda[G_t] coded symbols
};

// One packet per available server; the truncated tail is verified zero.
std::vector<UpdatePacket> make_update_packets(const SystemParams& params,
                                              const UpdatePlan& plan);

void apply_update(std::vector<Symbol>& storage_row, const UpdatePacket& packet,
                  const PrimeField& field);

// ---------------------------------------------------------------------------
// Costs, as exact fractions of the message length, next to the optimal
// values they are expected to meet.

struct CostReport {
    std::size_t transferred_symbols = 0;
    Rational normalized_cost;
    Rational optimal_cost;
    std::size_t read_threshold = 0;
    std::size_t update_threshold = 0;
    bool exceeds_optimal = false;   // set for clamped updates
};

CostReport read_cost(const SystemParams& params, const ServerSet& available);
CostReport update_cost(const SystemParams& params, const ServerSet& available,
                       std::size_t security);

// ---------------------------------------------------------------------------
// Linear maps used by the security and recoverability checks. Rows are the
// coded symbols of all N servers (server-major, lambda[G] per server); the
// update maps treat everything past lambda[G_t] as the zero map it is.
// Noise columns are ordered block-major, row-major within a block.

struct UpdateLinearMaps {
    FieldMatrix from_increment;   // (N * lambda[G]) x L
    FieldMatrix from_noise;       // (N * lambda[G]) x (X * lambda[G_t])
    std::size_t effective_blocks = 1;
};
UpdateLinearMaps update_packet_maps(const SystemParams& params,
                                    const FieldMatrix& cauchy,
                                    const ServerSet& dropouts,
                                    std::size_t security);

FieldMatrix storage_message_map(const SystemParams& params, const FieldMatrix& cauchy);
FieldMatrix storage_noise_map(const SystemParams& params, const FieldMatrix& cauchy);

} // namespace rdcds
