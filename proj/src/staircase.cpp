#include "rdcds/staircase.hpp"

#include <string>

#include "rdcds/errors.hpp"

namespace rdcds {

StaircasePayload zero_payload(const SystemParams& p) {
    StaircasePayload out;
    out.data.assign(p.message_length, 0);
    out.noise.reserve(p.block_count);
    for (std::size_t b = 0; b < p.block_count; ++b) {
        out.noise.emplace_back(p.noise_rows(), p.gamma[b], p.field);
    }
    return out;
}

StaircasePayload random_payload(const SystemParams& p, SeededRng& rng) {
    const std::uint64_t q = p.field.modulus();
    StaircasePayload out = zero_payload(p);
    for (Symbol& v : out.data) v = rng.below(q);
    for (FieldMatrix& block : out.noise) {
        for (std::size_t r = 0; r < block.rows(); ++r) {
            for (std::size_t c = 0; c < block.cols(); ++c) {
                block(r, c) = rng.below(q);
            }
        }
    }
    return out;
}

FieldMatrix reshape(std::span<const Symbol> values, std::size_t rows,
                    std::size_t cols, const PrimeField& field) {
    if (values.size() != rows * cols) {
        throw LengthMismatch("cannot reshape " + std::to_string(values.size()) +
                             " values into " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
    FieldMatrix m(rows, cols, field);
    for (std::size_t r = 0; r < rows; ++r) {
        m.set_row(r, values.subspan(r * cols, cols));
    }
    return m;
}

std::vector<Symbol> d_block_source(const std::vector<FieldMatrix>& blocks,
                                   std::size_t b, const SystemParams& p) {
    if (b == 0 || b >= p.block_count || blocks.size() < b) {
        throw IndexOutOfRange("replica source requested for invalid block");
    }
    std::vector<Symbol> flat;
    flat.reserve(p.lambda[b]);
    for (std::size_t src = 0; src < b; ++src) {
        const std::size_t row = p.read_threshold + b - src - 1;
        const auto span = blocks[src].row_span(row);
        flat.insert(flat.end(), span.begin(), span.end());
    }
    return flat;
}

namespace {

void check_payload(const StaircasePayload& payload, const SystemParams& p) {
    if (payload.data.size() != p.message_length) {
        throw DimensionMismatch("payload vector length " +
                                std::to_string(payload.data.size()) +
                                " does not match L=" + std::to_string(p.message_length));
    }
    if (payload.noise.size() != p.block_count) {
        throw DimensionMismatch("expected one noise block per staircase block");
    }
    for (std::size_t b = 0; b < p.block_count; ++b) {
        const FieldMatrix& z = payload.noise[b];
        if (z.rows() != p.noise_rows() || z.cols() != p.gamma[b] ||
            !(z.field() == p.field)) {
            throw DimensionMismatch("noise block " + std::to_string(b) +
                                    " has wrong shape");
        }
    }
}

FieldMatrix assemble(const std::vector<FieldMatrix>& blocks, const SystemParams& p) {
    FieldMatrix all(p.servers, p.storage_width(), p.field);
    for (std::size_t b = 0; b < p.block_count; ++b) {
        for (std::size_t r = 0; r < p.servers; ++r) {
            for (std::size_t c = 0; c < p.gamma[b]; ++c) {
                all(r, p.lambda[b] + c) = blocks[b](r, c);
            }
        }
    }
    return all;
}

} // namespace

StaircaseMatrix sc_gen(const StaircasePayload& payload, const SystemParams& p) {
    check_payload(payload, p);
    std::vector<FieldMatrix> blocks;
    blocks.reserve(p.block_count);
    for (std::size_t b = 0; b < p.block_count; ++b) {
        FieldMatrix block(p.servers, p.gamma[b], p.field);
        const FieldMatrix data =
            b == 0 ? reshape(payload.data, p.alpha[0], p.gamma[0], p.field)
                   : reshape(d_block_source(blocks, b, p), p.alpha[b], p.gamma[b], p.field);
        for (std::size_t r = 0; r < p.alpha[b]; ++r) {
            block.set_row(r, data.row_span(r));
        }
        for (std::size_t r = 0; r < p.noise_rows(); ++r) {
            block.set_row(p.alpha[b] + r, payload.noise[b].row_span(r));
        }
        // rows [beta[b], N) stay zero
        blocks.push_back(std::move(block));
    }
    FieldMatrix all = assemble(blocks, p);
    return {std::move(blocks), std::move(all)};
}

StaircaseMatrix sc_add(const StaircaseMatrix& a, const StaircaseMatrix& b) {
    if (a.blocks.size() != b.blocks.size()) {
        throw DimensionMismatch("staircase block counts differ");
    }
    StaircaseMatrix out{{}, a.assembled + b.assembled};
    out.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        out.blocks.push_back(a.blocks[i] + b.blocks[i]);
    }
    return out;
}

std::vector<ReplicaCoord> replica_coords(std::size_t block, std::size_t row,
                                         const SystemParams& p) {
    if (block >= p.block_count) {
        throw IndexOutOfRange("block index out of range");
    }
    if (row < p.read_threshold || row >= p.beta[block]) {
        throw IndexOutOfRange("row " + std::to_string(row) +
                              " of block " + std::to_string(block) +
                              " is not replicated");
    }
    const std::size_t dst_block = block + (row - p.read_threshold) + 1;
    std::vector<ReplicaCoord> out;
    out.reserve(p.gamma[block]);
    for (std::size_t c = 0; c < p.gamma[block]; ++c) {
        // Position inside the destination's row-major data region: the
        // source block's portion starts after the lambda[block] symbols
        // contributed by blocks before it.
        const std::size_t flat = p.lambda[block] + c;
        out.push_back({block, row, c,
                       dst_block, flat / p.gamma[dst_block], flat % p.gamma[dst_block]});
    }
    return out;
}

} // namespace rdcds
