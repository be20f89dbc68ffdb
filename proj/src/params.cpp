#include "rdcds/params.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "rdcds/errors.hpp"

namespace rdcds {

SystemParams derive_params(std::size_t servers, std::size_t read_threshold,
                           double storage_factor,
                           std::optional<std::uint64_t> modulus) {
    if (servers == 0) {
        throw InvalidParams("server count must be positive");
    }
    if (read_threshold == 0 || read_threshold > servers) {
        throw InvalidParams("read threshold must satisfy 0 < R_r <= N (got R_r=" +
                            std::to_string(read_threshold) + ", N=" +
                            std::to_string(servers) + ")");
    }
    if (!(storage_factor > 0.0) ||
        storage_factor > static_cast<double>(read_threshold)) {
        throw InvalidParams("storage factor must satisfy 0 < K_c <= R_r");
    }

    SystemParams p;
    p.servers = servers;
    p.read_threshold = read_threshold;
    p.storage_factor = static_cast<std::size_t>(std::llround(std::ceil(storage_factor)));

    p.block_count = servers - read_threshold + 1;
    p.alpha.resize(p.block_count);
    p.beta.resize(p.block_count);
    for (std::size_t b = 0; b < p.block_count; ++b) {
        p.alpha[b] = servers - read_threshold + p.storage_factor - b;
        p.beta[b] = servers - b;
    }

    p.message_length = 1;
    for (std::size_t a : p.alpha) p.message_length = std::lcm(p.message_length, a);

    p.gamma.resize(p.block_count);
    p.lambda.assign(p.block_count + 1, 0);
    p.gamma[0] = p.message_length / p.alpha[0];
    for (std::size_t b = 1; b < p.block_count; ++b) {
        // Consecutive alphas differ by one, so their product divides L.
        p.gamma[b] = p.message_length / (p.alpha[b - 1] * p.alpha[b]);
    }
    for (std::size_t b = 0; b < p.block_count; ++b) {
        p.lambda[b + 1] = p.message_length / p.alpha[b];
    }

    const std::uint64_t q = modulus.value_or(smallest_prime_at_least(2 * servers));
    if (q < 2 * servers) {
        throw InvalidParams("field modulus must be at least 2N");
    }
    p.field = PrimeField(q);
    p.points = canonical_eval_points(servers, p.field);
    return p;
}

} // namespace rdcds
