#include "cycjac/ff.hpp"

#include <algorithm>

namespace cycjac::ff {

namespace {

// Dense polynomials over F_ell, little-endian, no forced normalization.
using Poly = std::vector<u32>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Coefficients stay below ell <= 1e7, so plain 64-bit products never overflow.
Poly poly_mod(Poly a, const Poly& m, u64 ell) {
    trim(a);
    const size_t dm = m.size() - 1;  // m monic, degree dm
    while (a.size() > dm) {
        u64 lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (size_t i = 0; i <= dm; ++i) {
                u64 s = lead * m[i] % ell;
                a[shift + i] = static_cast<u32>(submod(a[shift + i], s, ell));
            }
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 ell) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const u64 ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            c[i + j] = static_cast<u32>((c[i + j] + ai * b[j]) % ell);
        }
    }
    return poly_mod(std::move(c), m, ell);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 ell) {
    Poly r = {1};
    base = poly_mod(std::move(base), m, ell);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, ell);
        base = poly_mulmod(base, base, m, ell);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 ell) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic first
        u64 lead_inv = invmod(b.back(), ell);
        for (auto& c : b) c = static_cast<u32>(mulmod(c, lead_inv, ell));
        a = poly_mod(std::move(a), b, ell);
        std::swap(a, b);
        trim(b);
    }
    return a;
}

// X^(ell^k) mod m by iterated powering.
Poly x_pow_ell_pow(unsigned k, const Poly& m, u64 ell) {
    Poly x = {0, 1};
    Poly r = poly_mod(x, m, ell);
    for (unsigned i = 0; i < k; ++i) r = poly_powmod(std::move(r), ell, m, ell);
    return r;
}

bool is_irreducible(const Poly& m, u64 ell, unsigned f) {
    // A monic degree-f polynomial is irreducible over F_ell iff it shares no
    // factor with X^(ell^i) - X for 1 <= i <= f/2 (any proper factor would
    // have an irreducible divisor of degree <= f/2).
    if (f == 1) return true;
    for (unsigned i = 1; i <= f / 2; ++i) {
        Poly xp = x_pow_ell_pow(i, m, ell);
        // xp - X
        Poly d = xp;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = static_cast<u32>(submod(d[1], 1, ell));
        trim(d);
        Poly g = poly_gcd(m, d, ell);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

}  // namespace

std::vector<u32> find_irreducible(u64 ell, unsigned f) {
    if (!is_prime_u64(ell)) throw std::invalid_argument("characteristic not prime");
    if (f < 1) throw std::invalid_argument("degree must be >= 1");
    // Candidates X^f + c, c enumerated by base-ell value of its coefficients.
    std::vector<u32> low(f, 0);
    for (;;) {
        Poly m(low.begin(), low.end());
        m.push_back(1);
        if (is_irreducible(m, ell, f)) return m;
        // increment the coefficient vector as a base-ell counter
        size_t i = 0;
        while (i < f) {
            if (++low[i] < ell) break;
            low[i] = 0;
            ++i;
        }
        if (i == f)
            throw identity_error("no irreducible polynomial found");  // unreachable
    }
}

ExtField ExtField::make(u64 ell, unsigned f, u64 q_cap) {
    ExtField field;
    field.ell = ell;
    field.f = f;
    field.q = pow_u64_checked(ell, f, q_cap);
    field.modulus = find_irreducible(ell, f);
    return field;
}

Elem ExtField::one() const {
    Elem e(f, 0);
    e[0] = 1;
    return e;
}

Elem ExtField::from_residue(u64 r) const {
    Elem e(f, 0);
    e[0] = static_cast<u32>(r % ell);
    return e;
}

bool ExtField::is_zero(const Elem& x) const {
    return std::all_of(x.begin(), x.end(), [](u32 c) { return c == 0; });
}

bool ExtField::is_one(const Elem& x) const {
    if (x[0] != 1) return false;
    return std::all_of(x.begin() + 1, x.end(), [](u32 c) { return c == 0; });
}

Elem ExtField::add(const Elem& x, const Elem& y) const {
    Elem z(f);
    for (unsigned i = 0; i < f; ++i)
        z[i] = static_cast<u32>(addmod(x[i], y[i], ell));
    return z;
}

Elem ExtField::sub(const Elem& x, const Elem& y) const {
    Elem z(f);
    for (unsigned i = 0; i < f; ++i)
        z[i] = static_cast<u32>(submod(x[i], y[i], ell));
    return z;
}

Elem ExtField::mul(const Elem& x, const Elem& y) const {
    if (f == 1) return {static_cast<u32>(static_cast<u64>(x[0]) * y[0] % ell)};
    Poly c = poly_mulmod(Poly(x.begin(), x.end()), Poly(y.begin(), y.end()),
                         modulus, ell);
    c.resize(f, 0);
    return c;
}

Elem ExtField::pow(Elem x, u64 e) const {
    Poly r = poly_powmod(Poly(x.begin(), x.end()), e, modulus, ell);
    r.resize(f, 0);
    return r;
}

Elem ExtField::inv(const Elem& x) const {
    if (is_zero(x)) throw std::invalid_argument("inverse of zero");
    return pow(x, q - 2);
}

u64 ExtField::encode(const Elem& x) const {
    u64 idx = 0;
    for (unsigned i = f; i-- > 0;) idx = idx * ell + x[i];
    return idx;
}

Elem ExtField::decode(u64 idx) const {
    Elem x(f);
    for (unsigned i = 0; i < f; ++i) {
        x[i] = static_cast<u32>(idx % ell);
        idx /= ell;
    }
    return x;
}

Elem find_generator(const ExtField& field) {
    const u64 n = field.q - 1;
    if (n == 0) throw std::invalid_argument("trivial group");
    auto factors = factorize_u64(n == 0 ? 1 : n);
    for (u64 idx = 1; idx < field.q; ++idx) {
        Elem x = field.decode(idx);
        bool ok = true;
        for (auto [pf, e] : factors) {
            (void)e;
            if (field.is_one(field.pow(x, n / pf))) {
                ok = false;
                break;
            }
        }
        if (ok) return x;
    }
    throw identity_error("no generator found");  // unreachable for a field
}

DLogTable build_dlog_table(const ExtField& field, const Elem& r, u64 q_limit) {
    if (field.q > q_limit)
        throw limit_error("field size exceeds dlog table limit");
    DLogTable t;
    t.field = field;
    t.r = r;
    t.logs.assign(field.q, 0);
    std::vector<bool> seen(field.q, false);
    Elem x = field.one();
    for (u64 k = 0; k + 1 < field.q; ++k) {
        u64 idx = field.encode(x);
        if (seen[idx])
            throw std::invalid_argument("dlog sweep repeated early: r is not a generator");
        seen[idx] = true;
        t.logs[idx] = static_cast<u32>(k);
        x = field.mul(x, r);
    }
    if (!field.is_one(x))
        throw std::invalid_argument("dlog sweep did not close: r is not a generator");
    return t;
}

u64 DLogTable::dlog(const Elem& x) const {
    if (field.is_zero(x))
        throw std::invalid_argument("discrete log of zero");
    return logs[field.encode(x)];
}

u64 DLogTable::ind_mod_p(u64 p, const Elem& x) const {
    return dlog(x) % p;
}

}  // namespace cycjac::ff
