#pragma once

#include "cycjac/util.hpp"

namespace cycjac::ff {

// Field element: little-endian coefficient vector of length f, entries in [0, ell).
using Elem = std::vector<u32>;

// F_{ell^f} presented as F_ell[X] / (modulus).
struct ExtField {
    u64 ell = 0;
    unsigned f = 0;
    std::vector<u32> modulus;  // length f+1, monic
    u64 q = 0;                 // ell^f

    // Deterministic field: modulus is the lexicographically smallest monic
    // irreducible of degree f (coefficient vectors ordered by their base-ell value).
    static ExtField make(u64 ell, unsigned f, u64 q_cap = u64(1) << 62);

    Elem zero() const { return Elem(f, 0); }
    Elem one() const;
    Elem from_residue(u64 r) const;

    bool is_zero(const Elem& x) const;
    bool is_one(const Elem& x) const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem pow(Elem x, u64 e) const;
    Elem inv(const Elem& x) const;
    Elem frobenius(const Elem& x) const { return pow(x, ell); }

    u64 encode(const Elem& x) const;  // sum coeff[i] * ell^i
    Elem decode(u64 idx) const;
};

std::vector<u32> find_irreducible(u64 ell, unsigned f);

// Smallest element (in encode order) of multiplicative order q-1.
Elem find_generator(const ExtField& field);

struct DLogTable {
    ExtField field;
    Elem r;                 // fixed generator, logs are exponents of r
    std::vector<u32> logs;  // indexed by encode(x); entry for 0 is unused

    u64 dlog(const Elem& x) const;
    // logs[x] mod p; the character exponent. x = 0 is rejected.
    u64 ind_mod_p(u64 p, const Elem& x) const;
};

DLogTable build_dlog_table(const ExtField& field, const Elem& r,
                           u64 q_limit = 10'000'000);

}  // namespace cycjac::ff
