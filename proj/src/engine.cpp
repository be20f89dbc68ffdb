#include "rdcds/engine.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rdcds/errors.hpp"

namespace rdcds {

namespace {

constexpr std::uint64_t kOpPurpose = 0x6f70;       // protocol draws
constexpr std::uint64_t kVerifyPurpose = 0x7666;   // verification subset draws

constexpr char kMagic[4] = {'R', 'D', 'C', 'D'};
constexpr std::uint32_t kVersion = 1;

} // namespace

bool SlotReport::all_passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const Verdict& v) { return v.pass; });
}

SystemState::SystemState(SystemParams params, std::uint64_t seed)
    : params_(std::move(params)),
      cauchy_(cauchy_matrix(params_.points, params_.field)),
      seed_(seed) {}

SeededRng SystemState::op_stream(std::size_t slot) const {
    return SeededRng(mix_seed(seed_, slot, kOpPurpose));
}

SeededRng SystemState::verify_stream(std::size_t slot) const {
    return SeededRng(mix_seed(seed_, slot, kVerifyPurpose));
}

void SystemState::rebuild_reference() {
    ref_matrix_ = sc_gen({ref_message_, ref_noise_}, params_);
}

SystemState SystemState::init(SystemParams params, std::uint64_t seed) {
    SystemState state(std::move(params), seed);
    const SystemParams& p = state.params_;
    SeededRng rng = state.op_stream(0);
    // Slot-0 draw order: message first, then noise blocks.
    state.ref_message_.resize(p.message_length);
    for (Symbol& v : state.ref_message_) v = rng.below(p.field.modulus());
    StaircasePayload payload = random_payload(p, rng);
    state.ref_noise_ = std::move(payload.noise);
    state.rebuild_reference();
    const FieldMatrix coded = state.cauchy_ * state.ref_matrix_.assembled;
    for (std::size_t n = 0; n < p.servers; ++n) {
        state.servers_.push_back(coded.row(n));
    }
    return state;
}

SystemState SystemState::init(SystemParams params, std::vector<std::int64_t> message,
                              std::uint64_t seed) {
    SystemState state(std::move(params), seed);
    const SystemParams& p = state.params_;
    if (message.size() != p.message_length) {
        throw LengthMismatch("initial message length " + std::to_string(message.size()) +
                             " does not match L=" + std::to_string(p.message_length));
    }
    state.ref_message_.reserve(p.message_length);
    for (std::int64_t v : message) state.ref_message_.push_back(p.field.reduce(v));
    SeededRng rng = state.op_stream(0);
    StaircasePayload payload = random_payload(p, rng);
    payload.data = state.ref_message_;
    state.ref_noise_ = std::move(payload.noise);
    state.rebuild_reference();
    const FieldMatrix coded = state.cauchy_ * state.ref_matrix_.assembled;
    for (std::size_t n = 0; n < p.servers; ++n) {
        state.servers_.push_back(coded.row(n));
    }
    return state;
}

SlotReport SystemState::step(const SlotOp& op, VerifyLevel level) {
    const SystemParams& p = params_;
    const std::size_t t = slot_ + 1;

    SlotReport rep;
    rep.slot = t;
    rep.kind = op.kind;
    rep.dropouts = make_server_set(op.dropouts, p.servers);
    rep.security = op.kind == OpKind::update ? op.security : 0;
    const ServerSet available = complement(rep.dropouts, p.servers);

    if (op.kind == OpKind::read) {
        rep.feasible = available.size() >= p.read_threshold;
        if (rep.feasible) {
            const auto downloads = collect_downloads(p, servers_, available);
            std::size_t transferred = 0;
            for (const auto& d : downloads) transferred += d.symbols.size();
            const std::vector<Symbol> recovered = sic_decode(p, cauchy_, downloads);
            rep.cost = read_cost(p, available);
            rep.verdicts.push_back({"read_correct", recovered == ref_message_, ""});
            rep.verdicts.push_back({"cost_optimal",
                                    transferred == rep.cost->transferred_symbols &&
                                        rep.cost->normalized_cost == rep.cost->optimal_cost,
                                    ""});
            rep.recovered_message = recovered;
        }
    } else {
        rep.feasible = available.size() >= p.update_threshold(op.security);
        if (rep.feasible) {
            SeededRng rng = op_stream(t);
            std::vector<Symbol> delta;
            if (op.increment.has_value()) {
                if (op.increment->size() != p.message_length) {
                    throw LengthMismatch("explicit increment length does not match L");
                }
                delta.reserve(p.message_length);
                for (std::int64_t v : *op.increment) delta.push_back(p.field.reduce(v));
            } else {
                delta.resize(p.message_length);
                for (Symbol& v : delta) v = rng.below(p.field.modulus());
            }

            bool clamped = false;
            const std::size_t g_t =
                effective_block_count(p, rep.dropouts.size(), op.security, clamped);
            auto noise = sample_secure_noise(p, op.security, g_t, rng);
            const UpdatePlan plan =
                plan_update(p, cauchy_, delta, rep.dropouts, op.security, std::move(noise));
            const auto packets = make_update_packets(p, plan);
            std::size_t transferred = 0;
            for (const UpdatePacket& packet : packets) {
                apply_update(servers_[packet.server], packet, p.field);
                transferred += packet.symbols.size();
            }

            for (std::size_t k = 0; k < p.message_length; ++k) {
                ref_message_[k] = p.field.add(ref_message_[k], delta[k]);
            }
            const auto deltas = plan.noise_delta(p);
            for (std::size_t b = 0; b < p.block_count; ++b) {
                ref_noise_[b] = ref_noise_[b] + deltas[b];
            }
            rebuild_reference();
            history_.push_back({t, rep.dropouts, op.security});

            rep.clamped = plan.clamped;
            rep.cost = update_cost(p, available, op.security);
            bool null_ok = true;
            for (std::size_t n : rep.dropouts) {
                for (std::size_t c = 0; c < p.storage_width(); ++c) {
                    null_ok = null_ok && plan.coded(n, c) == 0;
                }
            }
            rep.verdicts.push_back({"dropout_rows_null", null_ok, ""});
            if (!plan.clamped) {
                rep.verdicts.push_back({"cost_optimal",
                                        transferred == rep.cost->transferred_symbols &&
                                            rep.cost->normalized_cost == rep.cost->optimal_cost,
                                        ""});
            }
        }
    }

    slot_ = t;
    if (rep.feasible && level != VerifyLevel::off) {
        const auto extra = verify_at(level, t);
        rep.verdicts.insert(rep.verdicts.end(), extra.begin(), extra.end());
    }
    return rep;
}

std::vector<Verdict> SystemState::verify(VerifyLevel level) const {
    return verify_at(level, slot_);
}

std::vector<Verdict> SystemState::verify_at(VerifyLevel level, std::size_t slot) const {
    std::vector<Verdict> out;
    if (level == VerifyLevel::off) return out;
    const SystemParams& p = params_;

    // Consistency oracle: every server row must equal the encode of the
    // reference payload.
    {
        const FieldMatrix coded = cauchy_ * ref_matrix_.assembled;
        Verdict v{"storage_consistency", true, ""};
        for (std::size_t n = 0; n < p.servers && v.pass; ++n) {
            for (std::size_t c = 0; c < p.storage_width(); ++c) {
                if (servers_[n][c] != coded(n, c)) {
                    v.pass = false;
                    v.detail = "server " + std::to_string(n) + " column " +
                               std::to_string(c) + " diverges from the reference encode";
                    break;
                }
            }
        }
        out.push_back(std::move(v));
    }

    auto decode_subset = [&](const ServerSet& subset) {
        const auto downloads = collect_downloads(p, servers_, subset);
        return sic_decode(p, cauchy_, downloads) == ref_message_;
    };

    if (level == VerifyLevel::quick) {
        SeededRng rng = verify_stream(slot);
        std::vector<std::size_t> ids(p.servers);
        for (std::size_t i = 0; i < p.servers; ++i) ids[i] = i;
        for (std::size_t i = 0; i < p.read_threshold; ++i) {
            const std::size_t j = i + rng.below(p.servers - i);
            std::swap(ids[i], ids[j]);
        }
        ids.resize(p.read_threshold);
        out.push_back({"read_roundtrip", decode_subset(make_server_set(ids, p.servers)), ""});
        return out;
    }

    // Full depth: every threshold-size subset must decode.
    {
        Verdict v{"read_roundtrip_all", true, ""};
        std::vector<std::size_t> subset(p.read_threshold);
        for (std::size_t i = 0; i < p.read_threshold; ++i) subset[i] = i;
        while (true) {
            if (!decode_subset(subset)) {
                v.pass = false;
                v.detail = "decode failed for a subset of size " +
                           std::to_string(p.read_threshold);
                break;
            }
            // next combination
            std::size_t i = p.read_threshold;
            while (i > 0 && subset[i - 1] == p.servers - p.read_threshold + i - 1) --i;
            if (i == 0) break;
            ++subset[i - 1];
            for (std::size_t j = i; j < p.read_threshold; ++j) subset[j] = subset[j - 1] + 1;
        }
        out.push_back(std::move(v));
    }

    // Secrecy of the most recent coded increment: colluding sets of size X
    // must see packet values explainable by the secure noise alone.
    {
        Verdict v{"increment_secrecy", true, ""};
        if (!history_.empty() && history_.back().security > 0) {
            const UpdateRecord& rec = history_.back();
            const auto maps = update_packet_maps(p, cauchy_, rec.dropouts, rec.security);
            const ServerSet available = complement(rec.dropouts, p.servers);
            std::vector<std::size_t> pick(rec.security);
            for (std::size_t i = 0; i < rec.security; ++i) pick[i] = i;
            while (v.pass) {
                std::vector<std::size_t> rows;
                for (std::size_t i : pick) {
                    for (std::size_t c = 0; c < p.storage_width(); ++c) {
                        rows.push_back(available[i] * p.storage_width() + c);
                    }
                }
                if (!column_space_contained(maps.from_increment.select_rows(rows),
                                            maps.from_noise.select_rows(rows))) {
                    v.pass = false;
                    v.detail = "an X-subset of packets depends on the increment";
                }
                std::size_t i = pick.size();
                while (i > 0 && pick[i - 1] == available.size() - pick.size() + i - 1) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        out.push_back(std::move(v));
    }

    // Steady-state storage secrecy: for every noise-budget-size subset of
    // servers, the storage contribution of (initial message, all increments)
    // lies inside the contribution of (initial noise, all secure noise).
    {
        Verdict v{"storage_secrecy", true, ""};
        const std::size_t subset_size = p.noise_rows();
        FieldMatrix from_message = storage_message_map(p, cauchy_);
        FieldMatrix from_noise = storage_noise_map(p, cauchy_);
        for (const UpdateRecord& rec : history_) {
            const auto maps = update_packet_maps(p, cauchy_, rec.dropouts, rec.security);
            from_message = from_message.hstack(maps.from_increment);
            from_noise = from_noise.hstack(maps.from_noise);
        }
        if (subset_size > 0) {
            std::vector<std::size_t> pick(subset_size);
            for (std::size_t i = 0; i < subset_size; ++i) pick[i] = i;
            while (v.pass) {
                std::vector<std::size_t> rows;
                for (std::size_t n : pick) {
                    for (std::size_t c = 0; c < p.storage_width(); ++c) {
                        rows.push_back(n * p.storage_width() + c);
                    }
                }
                if (!column_space_contained(from_message.select_rows(rows),
                                            from_noise.select_rows(rows))) {
                    v.pass = false;
                    v.detail = "storage of a noise-budget subset depends on the message";
                }
                std::size_t i = pick.size();
                while (i > 0 && pick[i - 1] == p.servers - pick.size() + i - 1) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        out.push_back(std::move(v));
    }

    return out;
}

void SystemState::corrupt_storage(std::size_t server, std::size_t col, Symbol value) {
    servers_.at(server).at(col) = value;
}

// ---------------------------------------------------------------------------
// Snapshot: little-endian, fixed layout, versioned.

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (!in) throw SnapshotError("snapshot truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw SnapshotError("snapshot truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

} // namespace

void SystemState::save(std::ostream& out) const {
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u64(out, params_.field.modulus());
    put_u32(out, static_cast<std::uint32_t>(params_.servers));
    put_u32(out, static_cast<std::uint32_t>(params_.read_threshold));
    put_u32(out, static_cast<std::uint32_t>(params_.storage_factor));
    put_u64(out, params_.message_length);
    put_u64(out, slot_);
    for (const auto& row : servers_) {
        for (Symbol v : row) put_u64(out, v);
    }
    for (Symbol v : ref_message_) put_u64(out, v);
    for (const FieldMatrix& z : ref_noise_) {
        for (std::size_t r = 0; r < z.rows(); ++r) {
            for (std::size_t c = 0; c < z.cols(); ++c) put_u64(out, z(r, c));
        }
    }
    if (!out) throw SnapshotError("snapshot write failed");
}

void SystemState::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SnapshotError("cannot open snapshot file for writing: " + path);
    save(out);
}

SystemState SystemState::load(std::istream& in, std::uint64_t seed) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw SnapshotError("bad snapshot magic");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kVersion) {
        throw SnapshotError("unsupported snapshot version " + std::to_string(version));
    }
    const std::uint64_t q = get_u64(in);
    const std::uint32_t servers = get_u32(in);
    const std::uint32_t read_threshold = get_u32(in);
    const std::uint32_t storage_factor = get_u32(in);
    const std::uint64_t message_length = get_u64(in);
    const std::uint64_t slot = get_u64(in);

    SystemParams p;
    try {
        p = derive_params(servers, read_threshold, static_cast<double>(storage_factor), q);
    } catch (const InvalidParams& e) {
        throw SnapshotError(std::string("snapshot parameters invalid: ") + e.what());
    }
    if (p.message_length != message_length) {
        throw SnapshotError("snapshot message length disagrees with derived parameters");
    }

    SystemState state(std::move(p), seed);
    const SystemParams& params = state.params_;
    auto read_symbol = [&]() {
        const std::uint64_t v = get_u64(in);
        if (v >= params.field.modulus()) {
            throw SnapshotError("snapshot symbol out of field range");
        }
        return v;
    };

    state.servers_.assign(params.servers, {});
    for (auto& row : state.servers_) {
        row.resize(params.storage_width());
        for (Symbol& v : row) v = read_symbol();
    }
    state.ref_message_.resize(params.message_length);
    for (Symbol& v : state.ref_message_) v = read_symbol();
    for (std::size_t b = 0; b < params.block_count; ++b) {
        FieldMatrix z(params.noise_rows(), params.gamma[b], params.field);
        for (std::size_t r = 0; r < z.rows(); ++r) {
            for (std::size_t c = 0; c < z.cols(); ++c) z(r, c) = read_symbol();
        }
        state.ref_noise_.push_back(std::move(z));
    }
    state.slot_ = slot;
    state.rebuild_reference();
    return state;
}

SystemState SystemState::load_file(const std::string& path, std::uint64_t seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open snapshot file: " + path);
    return load(in, seed);
}

} // namespace rdcds
