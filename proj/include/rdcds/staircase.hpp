#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rdcds/params.hpp"
#include "rdcds/rng.hpp"

namespace rdcds {

/*
    Staircase structure

    The assembled N x lambda[G] matrix is a horizontal concatenation of G
    blocks. Block 0 holds the reshaped payload vector on top of its noise
    rows. For b >= 1, the data region of block b replicates one redundancy
    row from each earlier block: row (R_r + b - s - 1) of block s, for
    s = 0..b-1, concatenated in that order and reshaped row-major to
    alpha[b] x gamma[b]. Noise rows sit below the data region, structural
    zero rows below beta[b].

    The replication is what makes the last block solvable first during a
    read and earlier blocks solvable by substitution, and it restricts the
    payload symbols to the leftmost columns so that update uploads can be
    truncated.
*/

// Inputs consumed by sc_gen: a payload vector of length L plus one noise
// block of (R_r - K_c) x gamma[b] per block.
struct StaircasePayload {
    std::vector<Symbol> data;
    std::vector<FieldMatrix> noise;
};

StaircasePayload zero_payload(const SystemParams& params);
// Draws the data vector first, then noise blocks 0..G-1 row-major.
StaircasePayload random_payload(const SystemParams& params, SeededRng& rng);

struct StaircaseMatrix {
    std::vector<FieldMatrix> blocks;  // G blocks, each N x gamma[b]
    FieldMatrix assembled;            // N x lambda[G]
};

// Row-major fill; throws LengthMismatch.
FieldMatrix reshape(std::span<const Symbol> values, std::size_t rows,
                    std::size_t cols, const PrimeField& field);

StaircaseMatrix sc_gen(const StaircasePayload& payload, const SystemParams& params);
StaircaseMatrix sc_add(const StaircaseMatrix& a, const StaircaseMatrix& b);

// The concatenated replica rows that form the data region of block b >= 1.
std::vector<Symbol> d_block_source(const std::vector<FieldMatrix>& blocks,
                                   std::size_t b, const SystemParams& params);

// Where row `row` of block `block` reappears inside a later block's data
// region, one coordinate per source column. Valid for rows in
// [R_r, beta[block]); every sc_gen output holds equal values at source and
// destination.
struct ReplicaCoord {
    std::size_t src_block = 0, src_row = 0, src_col = 0;
    std::size_t dst_block = 0, dst_row = 0, dst_col = 0;
};
std::vector<ReplicaCoord> replica_coords(std::size_t block, std::size_t row,
                                         const SystemParams& params);

} // namespace rdcds
