#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cycjac {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// A computation could not be resolved at the working precision; retry higher.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured resource limit (table size, modulus envelope) was exceeded.
struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical identity that must hold failed. Always a bug somewhere.
struct identity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Moduli are kept below 2^63 so that addmod never wraps and mulmod fits
// in the 128-bit product.
inline constexpr u64 kMaxModulus = u64(1) << 63;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

u64 powmod(u64 base, u64 e, u64 m);

// Inverse of a modulo m; throws std::invalid_argument unless gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

bool is_prime_u64(u64 n);

// Prime factorization by trial division (desk scale).
std::vector<std::pair<u64, int>> factorize_u64(u64 n);

// b^e, throwing limit_error if the result would exceed cap.
u64 pow_u64_checked(u64 b, unsigned e, u64 cap);

// Multiplicative order of x modulo the prime m.
unsigned mult_order_mod(u64 x, u64 m);

// Exact p-adic valuation of a nonzero x.
long long vp_u64(u64 x, u64 p);

}  // namespace cycjac
