#pragma once

#include <optional>

#include "cycjac/jacobi.hpp"

namespace cycjac::curve {

using cyc::CycInt;
using cyc::PadicCyc;
using cyc::PiVal;
using jacobi::PrimeSetup;

// W^p = T(1-T)^a over the base field; genus (p-1)/2, one place over each of
// T = 0, 1, infinity.
struct QuotientCurve {
    unsigned p = 0;
    unsigned a = 0;
    ff::ExtField base;

    static QuotientCurve make(unsigned p, unsigned a, ff::ExtField base);
    unsigned genus() const { return (p - 1) / 2; }
};

// Points of the smooth projective model over F_{q^m}: 3 ramified points plus,
// for each b outside {0,1}, p points when b(1-b)^a is a p-th power (none
// otherwise); every fiber has exactly one point when q^m != 1 mod p.
u64 count_points(const QuotientCurve& c, unsigned m, u64 q_limit = 10'000'000);

// Counts for every a in [1, p-2] in one sweep: two exponentiations per field
// element instead of one per (a, element).
std::vector<u64> count_points_batch(unsigned p, const ff::ExtField& base,
                                    unsigned m, u64 q_limit = 10'000'000);

struct LPolynomial {
    unsigned g = 0;
    u64 q = 0;
    std::vector<mpz_class> coeffs;  // length 2g+1, coeffs[0] = 1

    mpz_class at_one() const;
    // power sums of the inverse roots alpha_i (s_i = q^i + 1 - N_i)
    std::vector<mpz_class> power_sums(unsigned upto) const;
    // the point count over F_{q^i} this polynomial predicts
    mpz_class predicted_count(unsigned i) const;

    bool operator==(const LPolynomial&) const = default;
};

// Newton's identities on s_i = q^i + 1 - N_i for i = 1..g, then the
// functional equation coeff[2g-i] = q^(g-i) coeff[i]. Non-integer
// intermediates signal a counting bug.
LPolynomial lpoly_from_counts(unsigned g, u64 q, const std::vector<u64>& counts);

// prod_{t in (Z/p)^*} (1 - j_{1,a}(P)^{sigma_t} Z), expanded exactly.
LPolynomial lpoly_from_jacobi(const PrimeSetup& s, unsigned a);

struct JacobianReport {
    long long t = 0;                     // v_pi(j - 1) = v_pi(Log j)
    std::optional<unsigned> n_star;      // smallest odd n in [3,p-2], e_{omega^n} j not in U^p
    std::vector<unsigned> structure;     // cyclic factors as exponents e (Z/p^e), nonzero only
    mpz_class order_p_part;              // p^t
    std::map<unsigned, PiVal> odd_log_valuations;  // n -> v_pi(e_{omega^n} Log j)
    bool outside_rank_dichotomy = false;
    bool lpoly_crosschecked = false;     // v_p(L(1)) == t verified via point counts
};

// The structure of Z_p[zeta_p]/(j_{1,a}(P) - 1): t = s(p-1)+r gives
// (Z/p^(s+1))^r + (Z/p^s)^(p-1-r). n_star decided by the threshold
// v_pi(e_{omega^n} Log j) > n. Requires t < (p-1)(prec-2).
JacobianReport jacobian_structure(const PrimeSetup& s, unsigned a, unsigned prec,
                                  bool crosscheck_lpoly = false,
                                  u64 q_limit = 10'000'000);

// The curve X^2 - X + T^p = 0 over F_ell has the same counts over F_{ell^i},
// i = 1..(p-1)/2, as W^p = T(1-T) with the variables swapped. Counted by two
// different methods (quadratic solvability vs p-th power residues).
bool quadratic_family_check(unsigned p, u64 ell, u64 q_limit = 10'000'000);

}  // namespace cycjac::curve
