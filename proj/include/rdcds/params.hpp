#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rdcds/cauchy.hpp"

namespace rdcds {

// All scheme constants derived from (N, R_r, K_c). Immutable after
// construction via derive_params.
//
// Per block b (0-based, G = N - R_r + 1 blocks total):
//   alpha[b]  data rows         (N - R_r + K_c - b)
//   beta[b]   nonzero rows      (N - b); rows below are structural zeros
//   gamma[b]  columns
//   lambda[b] column offset of block b in the assembled matrix; lambda[G]
//             is the per-server storage width L / K_c.
struct SystemParams {
    std::size_t servers = 0;          // N
    std::size_t read_threshold = 0;   // R_r
    std::size_t storage_factor = 0;   // K_c, ceiling of the requested factor

    std::size_t block_count = 0;      // G
    std::vector<std::size_t> alpha;
    std::vector<std::size_t> beta;
    std::vector<std::size_t> gamma;
    std::vector<std::size_t> lambda;  // size G + 1, lambda[0] = 0
    std::size_t message_length = 0;   // L = lcm(alpha)

    PrimeField field{2};
    EvalPoints points;

    std::size_t storage_width() const { return lambda.back(); }
    std::size_t noise_rows() const { return read_threshold - storage_factor; }

    // Minimum available servers for a feasible update at security level X.
    std::size_t update_threshold(std::size_t security) const {
        return servers - read_threshold + storage_factor + security;
    }
};

// Validates 0 < K_c <= R_r <= N, takes K_c to its ceiling, and fills every
// derived quantity. The field modulus defaults to the smallest prime >= 2N;
// an override must be a prime >= 2N.
SystemParams derive_params(std::size_t servers, std::size_t read_threshold,
                           double storage_factor,
                           std::optional<std::uint64_t> modulus = std::nullopt);

} // namespace rdcds
