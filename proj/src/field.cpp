#include "rdcds/field.hpp"

namespace rdcds {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t smallest_prime_at_least(std::uint64_t n) {
    std::uint64_t c = n < 2 ? 2 : n;
    while (!is_prime(c)) ++c;
    return c;
}

PrimeField::PrimeField(std::uint64_t modulus) : q_(modulus) {
    if (!is_prime(modulus)) {
        throw InvalidParams("field modulus " + std::to_string(modulus) + " is not prime");
    }
    if (modulus >= (std::uint64_t{1} << 32)) {
        throw InvalidParams("field modulus must be below 2^32");
    }
}

Symbol PrimeField::inv(Symbol a) const {
    if (a == 0) {
        throw ZeroInverse("zero has no multiplicative inverse");
    }
    // Extended Euclid on (q, a); q prime guarantees gcd 1.
    std::int64_t r0 = static_cast<std::int64_t>(q_);
    std::int64_t r1 = static_cast<std::int64_t>(a % q_);
    std::int64_t s0 = 0;
    std::int64_t s1 = 1;
    while (r1 != 0) {
        const std::int64_t k = r0 / r1;
        r0 -= k * r1;
        std::swap(r0, r1);
        s0 -= k * s1;
        std::swap(s0, s1);
    }
    return reduce(s0);
}

Symbol PrimeField::reduce(std::int64_t v) const noexcept {
    const std::int64_t q = static_cast<std::int64_t>(q_);
    std::int64_t r = v % q;
    if (r < 0) r += q;
    return static_cast<Symbol>(r);
}

} // namespace rdcds
