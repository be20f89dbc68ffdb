#include "rdcds/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rdcds/errors.hpp"

namespace rdcds {

Rational Rational::of(long long num, long long den) {
    if (den == 0) throw DimensionMismatch("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

ServerSet make_server_set(std::vector<std::size_t> ids, std::size_t servers) {
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] >= servers) {
            throw IndexOutOfRange("server id " + std::to_string(ids[i]) +
                                  " out of range for N=" + std::to_string(servers));
        }
        if (i > 0 && ids[i] == ids[i - 1]) {
            throw IndexOutOfRange("duplicate server id " + std::to_string(ids[i]));
        }
    }
    return ids;
}

ServerSet complement(const ServerSet& set, std::size_t servers) {
    ServerSet out;
    out.reserve(servers - set.size());
    std::size_t k = 0;
    for (std::size_t n = 0; n < servers; ++n) {
        if (k < set.size() && set[k] == n) {
            ++k;
        } else {
            out.push_back(n);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Read

ReadPlan plan_read(const SystemParams& p, const ServerSet& available) {
    if (available.size() < p.read_threshold) {
        throw ReadInfeasible("read needs at least " + std::to_string(p.read_threshold) +
                             " available servers, got " + std::to_string(available.size()));
    }
    const std::size_t depth = p.servers + 1 - available.size();
    return {depth, p.lambda[depth]};
}

std::vector<ReadDownload> collect_downloads(
    const SystemParams& p, const std::vector<std::vector<Symbol>>& storage_rows,
    const ServerSet& available) {
    const ReadPlan plan = plan_read(p, available);
    std::vector<ReadDownload> out;
    out.reserve(available.size());
    for (std::size_t n : available) {
        const auto& row = storage_rows.at(n);
        if (row.size() != p.storage_width()) {
            throw ShapeMismatch("storage row has wrong length");
        }
        out.push_back({n, std::vector<Symbol>(row.begin(),
                                              row.begin() + static_cast<std::ptrdiff_t>(
                                                                plan.symbols_per_server))});
    }
    return out;
}

std::vector<Symbol> sic_decode(const SystemParams& p, const FieldMatrix& cauchy,
                               std::vector<ReadDownload> downloads) {
    std::sort(downloads.begin(), downloads.end(),
              [](const ReadDownload& a, const ReadDownload& b) { return a.server < b.server; });
    std::vector<std::size_t> avail;
    avail.reserve(downloads.size());
    for (const ReadDownload& d : downloads) avail.push_back(d.server);
    avail = make_server_set(avail, p.servers);

    if (avail.size() < p.read_threshold) {
        throw ReadInfeasible("not enough downloads to decode");
    }
    const std::size_t depth = p.servers + 1 - avail.size();
    for (const ReadDownload& d : downloads) {
        if (d.symbols.size() != p.lambda[depth]) {
            throw ShapeMismatch("download from server " + std::to_string(d.server) +
                                " has length " + std::to_string(d.symbols.size()) +
                                ", expected " + std::to_string(p.lambda[depth]));
        }
    }

    std::vector<FieldMatrix> decoded;
    decoded.reserve(depth);
    for (std::size_t b = 0; b < depth; ++b) {
        decoded.emplace_back(p.servers, p.gamma[b], p.field);
    }

    // Solve the deepest block first; earlier blocks reuse the rows that were
    // replicated into blocks already decoded.
    for (std::size_t b = depth; b-- > 0;) {
        FieldMatrix rhs(avail.size(), p.gamma[b], p.field);
        for (std::size_t k = 0; k < avail.size(); ++k) {
            for (std::size_t c = 0; c < p.gamma[b]; ++c) {
                rhs(k, c) = downloads[k].symbols[p.lambda[b] + c];
            }
        }

        const std::size_t known = depth - 1 - b;
        std::vector<std::size_t> known_rows;
        for (std::size_t k = 0; k < known; ++k) known_rows.push_back(p.read_threshold + k);

        if (known > 0) {
            FieldMatrix known_vals(known, p.gamma[b], p.field);
            for (std::size_t k = 0; k < known; ++k) {
                const std::size_t src = b + k + 1;
                for (std::size_t c = 0; c < p.gamma[b]; ++c) {
                    const std::size_t flat = p.lambda[b] + c;
                    known_vals(k, c) = decoded[src](flat / p.gamma[src], flat % p.gamma[src]);
                }
            }
            rhs = rhs - cauchy.select(avail, known_rows) * known_vals;
            for (std::size_t k = 0; k < known; ++k) {
                decoded[b].set_row(known_rows[k], known_vals.row_span(k));
            }
        }

        std::vector<std::size_t> unknown_rows;
        unknown_rows.reserve(avail.size());
        for (std::size_t r = 0; r < p.beta[b]; ++r) {
            if (r >= p.read_threshold && r < p.read_threshold + known) continue;
            unknown_rows.push_back(r);
        }
        // Square by construction: beta[b] - known = |available|.
        const FieldMatrix solved = cauchy.select(avail, unknown_rows).inverse() * rhs;
        for (std::size_t i = 0; i < unknown_rows.size(); ++i) {
            decoded[b].set_row(unknown_rows[i], solved.row_span(i));
        }
    }

    std::vector<Symbol> message;
    message.reserve(p.message_length);
    for (std::size_t r = 0; r < p.alpha[0]; ++r) {
        const auto span = decoded[0].row_span(r);
        message.insert(message.end(), span.begin(), span.end());
    }
    return message;
}

// ---------------------------------------------------------------------------
// Update

std::size_t effective_block_count(const SystemParams& p, std::size_t dropout_count,
                                  std::size_t security, bool& clamped) {
    const long long raw = static_cast<long long>(p.servers) -
                          2 * static_cast<long long>(p.read_threshold) +
                          static_cast<long long>(p.storage_factor) +
                          static_cast<long long>(security) +
                          static_cast<long long>(dropout_count) + 1;
    clamped = raw < 1;
    return clamped ? 1 : static_cast<std::size_t>(raw);
}

std::vector<FieldMatrix> sample_secure_noise(const SystemParams& p, std::size_t security,
                                             std::size_t block_count, SeededRng& rng) {
    if (security > p.noise_rows()) {
        throw UpdateInfeasible("security level exceeds the noise row budget");
    }
    if (block_count > p.block_count) {
        throw IndexOutOfRange("block count out of range");
    }
    const std::uint64_t q = p.field.modulus();
    std::vector<FieldMatrix> out;
    out.reserve(block_count);
    for (std::size_t b = 0; b < block_count; ++b) {
        FieldMatrix z(security, p.gamma[b], p.field);
        for (std::size_t r = 0; r < security; ++r) {
            for (std::size_t c = 0; c < p.gamma[b]; ++c) {
                z(r, c) = rng.below(q);
            }
        }
        out.push_back(std::move(z));
    }
    return out;
}

UpdatePlan plan_update(const SystemParams& p, const FieldMatrix& cauchy,
                       std::span<const Symbol> increment, const ServerSet& dropouts,
                       std::size_t security, std::vector<FieldMatrix> secure_noise) {
    const std::size_t d = dropouts.size();
    if (security + d > p.noise_rows()) {
        throw UpdateInfeasible("update tolerates at most R_r - K_c - X = " +
                               std::to_string(p.noise_rows() - std::min(security, p.noise_rows())) +
                               " dropouts, got " + std::to_string(d));
    }
    if (increment.size() != p.message_length) {
        throw LengthMismatch("increment length does not match L");
    }

    UpdatePlan plan;
    plan.dropouts = dropouts;
    plan.security = security;
    plan.effective_blocks = effective_block_count(p, d, security, plan.clamped);
    const std::size_t g_t = plan.effective_blocks;

    if (secure_noise.size() != g_t) {
        throw DimensionMismatch("expected " + std::to_string(g_t) + " secure-noise blocks");
    }
    for (std::size_t b = 0; b < g_t; ++b) {
        if (secure_noise[b].rows() != security || secure_noise[b].cols() != p.gamma[b]) {
            throw DimensionMismatch("secure-noise block " + std::to_string(b) +
                                    " has wrong shape");
        }
    }
    plan.secure_noise = std::move(secure_noise);

    std::vector<std::size_t> all_cols(p.servers);
    for (std::size_t j = 0; j < p.servers; ++j) all_cols[j] = j;

    std::vector<FieldMatrix> blocks;
    blocks.reserve(p.block_count);
    for (std::size_t b = 0; b < p.block_count; ++b) {
        FieldMatrix block(p.servers, p.gamma[b], p.field);
        const FieldMatrix data =
            b == 0 ? reshape(increment, p.alpha[0], p.gamma[0], p.field)
                   : reshape(d_block_source(blocks, b, p), p.alpha[b], p.gamma[b], p.field);
        for (std::size_t r = 0; r < p.alpha[b]; ++r) {
            block.set_row(r, data.row_span(r));
        }
        if (b < g_t) {
            for (std::size_t r = 0; r < security; ++r) {
                block.set_row(p.alpha[b] + r, plan.secure_noise[b].row_span(r));
            }
            // Null rows: cancel the contribution of the data and secure-noise
            // rows at every dropout server. The solve matrix is a square
            // Cauchy submatrix, invertible by the distinctness of the points.
            std::vector<std::size_t> data_cols(p.alpha[b]);
            for (std::size_t j = 0; j < p.alpha[b]; ++j) data_cols[j] = j;
            std::vector<std::size_t> noise_cols(security);
            for (std::size_t j = 0; j < security; ++j) noise_cols[j] = p.alpha[b] + j;
            std::vector<std::size_t> null_cols(d);
            for (std::size_t j = 0; j < d; ++j) null_cols[j] = p.alpha[b] + security + j;

            FieldMatrix rhs = cauchy.select(dropouts, data_cols) * data;
            if (security > 0) {
                rhs = rhs + cauchy.select(dropouts, noise_cols) * plan.secure_noise[b];
            }
            const FieldMatrix h =
                (cauchy.select(dropouts, null_cols).inverse() * rhs).negated();
            for (std::size_t r = 0; r < d; ++r) {
                block.set_row(p.alpha[b] + security + r, h.row_span(r));
            }
            plan.null_blocks.push_back(h);
        }
        // Remaining noise rows and rows past beta[b] stay zero.
        blocks.push_back(std::move(block));
    }

    FieldMatrix all(p.servers, p.storage_width(), p.field);
    for (std::size_t b = 0; b < p.block_count; ++b) {
        for (std::size_t r = 0; r < p.servers; ++r) {
            for (std::size_t c = 0; c < p.gamma[b]; ++c) {
                all(r, p.lambda[b] + c) = blocks[b](r, c);
            }
        }
    }
    plan.increment = {std::move(blocks), std::move(all)};
    plan.coded = cauchy * plan.increment.assembled;

    for (std::size_t n : dropouts) {
        for (std::size_t c = 0; c < p.storage_width(); ++c) {
            if (plan.coded(n, c) != 0) {
                throw Error("internal: coded increment row " + std::to_string(n) +
                            " is not null");
            }
        }
    }
    return plan;
}

std::vector<FieldMatrix> UpdatePlan::noise_delta(const SystemParams& p) const {
    std::vector<FieldMatrix> out;
    out.reserve(p.block_count);
    for (std::size_t b = 0; b < p.block_count; ++b) {
        FieldMatrix z(p.noise_rows(), p.gamma[b], p.field);
        for (std::size_t r = 0; r < p.noise_rows(); ++r) {
            z.set_row(r, increment.blocks[b].row_span(p.alpha[b] + r));
        }
        out.push_back(std::move(z));
    }
    return out;
}

std::vector<UpdatePacket> make_update_packets(const SystemParams& p,
                                              const UpdatePlan& plan) {
    const std::size_t len = p.lambda[plan.effective_blocks];
    std::vector<UpdatePacket> out;
    const ServerSet available = complement(plan.dropouts, p.servers);
    out.reserve(available.size());
    for (std::size_t n : available) {
        for (std::size_t c = len; c < p.storage_width(); ++c) {
            if (plan.coded(n, c) != 0) {
                throw TailNotZero("coded increment for server " + std::to_string(n) +
                                  " has a nonzero symbol past position " +
                                  std::to_string(len));
            }
        }
        UpdatePacket packet;
        packet.server = n;
        packet.symbols.reserve(len);
        for (std::size_t c = 0; c < len; ++c) packet.symbols.push_back(plan.coded(n, c));
        out.push_back(std::move(packet));
    }
    return out;
}

void apply_update(std::vector<Symbol>& storage_row, const UpdatePacket& packet,
                  const PrimeField& field) {
    if (packet.symbols.size() > storage_row.size()) {
        throw LengthExceeded("packet longer than the storage row");
    }
    for (std::size_t i = 0; i < packet.symbols.size(); ++i) {
        storage_row[i] = field.add(storage_row[i], packet.symbols[i]);
    }
}

// ---------------------------------------------------------------------------
// Costs

CostReport read_cost(const SystemParams& p, const ServerSet& available) {
    const ReadPlan plan = plan_read(p, available);
    const std::size_t n_avail = available.size();
    CostReport out;
    out.transferred_symbols = n_avail * plan.symbols_per_server;
    out.normalized_cost = Rational::of(static_cast<long long>(out.transferred_symbols),
                                       static_cast<long long>(p.message_length));
    out.optimal_cost = Rational::of(static_cast<long long>(n_avail),
                                    static_cast<long long>(n_avail - p.noise_rows()));
    out.read_threshold = p.read_threshold;
    out.update_threshold = p.update_threshold(0);
    return out;
}

CostReport update_cost(const SystemParams& p, const ServerSet& available,
                       std::size_t security) {
    const std::size_t n_avail = available.size();
    if (n_avail < p.update_threshold(security)) {
        throw UpdateInfeasible("update needs at least " +
                               std::to_string(p.update_threshold(security)) +
                               " available servers, got " + std::to_string(n_avail));
    }
    const std::size_t dropouts = p.servers - n_avail;
    bool clamped = false;
    const std::size_t g_t = effective_block_count(p, dropouts, security, clamped);
    CostReport out;
    out.transferred_symbols = n_avail * p.lambda[g_t];
    out.normalized_cost = Rational::of(static_cast<long long>(out.transferred_symbols),
                                       static_cast<long long>(p.message_length));
    out.optimal_cost = Rational::of(
        static_cast<long long>(n_avail),
        static_cast<long long>(p.read_threshold - security - dropouts));
    out.read_threshold = p.read_threshold;
    out.update_threshold = p.update_threshold(security);
    out.exceeds_optimal = clamped;
    return out;
}

// ---------------------------------------------------------------------------
// Linear maps

namespace {

std::vector<FieldMatrix> zero_noise_blocks(const SystemParams& p, std::size_t security,
                                           std::size_t block_count) {
    std::vector<FieldMatrix> out;
    out.reserve(block_count);
    for (std::size_t b = 0; b < block_count; ++b) {
        out.emplace_back(security, p.gamma[b], p.field);
    }
    return out;
}

void write_column(FieldMatrix& map, std::size_t col, const FieldMatrix& coded) {
    for (std::size_t n = 0; n < coded.rows(); ++n) {
        for (std::size_t c = 0; c < coded.cols(); ++c) {
            map(n * coded.cols() + c, col) = coded(n, c);
        }
    }
}

} // namespace

UpdateLinearMaps update_packet_maps(const SystemParams& p, const FieldMatrix& cauchy,
                                    const ServerSet& dropouts, std::size_t security) {
    bool clamped = false;
    const std::size_t g_t = effective_block_count(p, dropouts.size(), security, clamped);
    const std::size_t n_rows = p.servers * p.storage_width();

    UpdateLinearMaps maps{FieldMatrix(n_rows, p.message_length, p.field),
                          FieldMatrix(n_rows, security * p.lambda[g_t], p.field), g_t};

    std::vector<Symbol> delta(p.message_length, 0);
    for (std::size_t k = 0; k < p.message_length; ++k) {
        delta[k] = 1;
        const UpdatePlan plan =
            plan_update(p, cauchy, delta, dropouts, security, zero_noise_blocks(p, security, g_t));
        write_column(maps.from_increment, k, plan.coded);
        delta[k] = 0;
    }

    std::fill(delta.begin(), delta.end(), 0);
    std::size_t col = 0;
    for (std::size_t b = 0; b < g_t; ++b) {
        for (std::size_t r = 0; r < security; ++r) {
            for (std::size_t c = 0; c < p.gamma[b]; ++c) {
                auto noise = zero_noise_blocks(p, security, g_t);
                noise[b](r, c) = 1;
                const UpdatePlan plan =
                    plan_update(p, cauchy, delta, dropouts, security, std::move(noise));
                write_column(maps.from_noise, col, plan.coded);
                ++col;
            }
        }
    }
    return maps;
}

FieldMatrix storage_message_map(const SystemParams& p, const FieldMatrix& cauchy) {
    FieldMatrix map(p.servers * p.storage_width(), p.message_length, p.field);
    StaircasePayload payload = zero_payload(p);
    for (std::size_t k = 0; k < p.message_length; ++k) {
        payload.data[k] = 1;
        write_column(map, k, cauchy * sc_gen(payload, p).assembled);
        payload.data[k] = 0;
    }
    return map;
}

FieldMatrix storage_noise_map(const SystemParams& p, const FieldMatrix& cauchy) {
    FieldMatrix map(p.servers * p.storage_width(), p.noise_rows() * p.storage_width(),
                    p.field);
    StaircasePayload payload = zero_payload(p);
    std::size_t col = 0;
    for (std::size_t b = 0; b < p.block_count; ++b) {
        for (std::size_t r = 0; r < p.noise_rows(); ++r) {
            for (std::size_t c = 0; c < p.gamma[b]; ++c) {
                payload.noise[b](r, c) = 1;
                write_column(map, col, cauchy * sc_gen(payload, p).assembled);
                payload.noise[b](r, c) = 0;
                ++col;
            }
        }
    }
    return map;
}

} // namespace rdcds
