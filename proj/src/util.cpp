#include "cycjac/util.hpp"

namespace cycjac {

u64 powmod(u64 base, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    // extended Euclid on signed 128-bit accumulators
    __int128 t = 0, newt = 1;
    __int128 r = m, newr = a % m;
    while (newr != 0) {
        __int128 q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::invalid_argument("invmod: argument not a unit");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ull, 3ull, 5ull, 7ull}) {
        if (n % d == 0) return n == d;
    }
    for (u64 d = 11; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 pow_u64_checked(u64 b, unsigned e, u64 cap) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b)
            throw limit_error("power exceeds configured cap");
        r *= b;
    }
    return r;
}

unsigned mult_order_mod(u64 x, u64 m) {
    x %= m;
    if (x == 0) throw std::invalid_argument("mult_order_mod: zero argument");
    u64 ord = m - 1;  // m prime
    for (auto [f, e] : factorize_u64(m - 1)) {
        for (int i = 0; i < e && powmod(x, ord / f, m) == 1; ++i) ord /= f;
    }
    return static_cast<unsigned>(ord);
}

long long vp_u64(u64 x, u64 p) {
    if (x == 0) throw std::invalid_argument("vp_u64: zero argument");
    long long v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

}  // namespace cycjac
