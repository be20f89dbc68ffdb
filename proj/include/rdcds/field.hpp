#pragma once

#include <cassert>
#include <cstdint>

#include "rdcds/errors.hpp"

namespace rdcds {

// One q-ary storage/message symbol, held as its canonical representative.
using Symbol = std::uint64_t;

bool is_prime(std::uint64_t n);
std::uint64_t smallest_prime_at_least(std::uint64_t n);

// Arithmetic in GF(q) for prime q. The modulus is capped at 2^32 so that
// products of canonical representatives fit in 64 bits.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t modulus);

    std::uint64_t modulus() const noexcept { return q_; }

    Symbol add(Symbol a, Symbol b) const noexcept {
        assert(a < q_ && b < q_);
        return (a + b) % q_;
    }
    Symbol sub(Symbol a, Symbol b) const noexcept {
        assert(a < q_ && b < q_);
        return (a + q_ - b) % q_;
    }
    Symbol mul(Symbol a, Symbol b) const noexcept {
        assert(a < q_ && b < q_);
        return a * b % q_;
    }
    Symbol neg(Symbol a) const noexcept {
        assert(a < q_);
        return (q_ - a) % q_;
    }

    // Multiplicative inverse via the extended Euclidean algorithm.
    Symbol inv(Symbol a) const;

    // Canonical representative of an arbitrary signed integer.
    Symbol reduce(std::int64_t v) const noexcept;

    bool operator==(const PrimeField&) const = default;

private:
    std::uint64_t q_;
};

} // namespace rdcds
