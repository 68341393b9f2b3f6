#pragma once

#include <map>

#include "cycjac/cyc.hpp"
#include "cycjac/ff.hpp"

namespace cycjac::jacobi {

using cyc::Character;
using cyc::CycInt;
using cyc::GroupRingExact;
using cyc::PadicCyc;

// Arithmetic context for a prime P of Z[zeta_p] above ell.
//
// Conventions, fixed once here: r is the deterministic generator of F_q^*,
// c := r^((q-1)/p) is the image of zeta_p in the residue field, r_P := r^{-1}
// (so chi_P(r_P) = zeta_p), and chi_P(x) = zeta^(-dlog_r(x) mod p), which is
// the unique character satisfying chi_P(x) = x^((1-q)/p) under zeta -> c.
struct PrimeSetup {
    unsigned p = 0;
    u64 ell = 0;
    unsigned f = 0;  // multiplicative order of ell mod p
    ff::ExtField field;
    ff::Elem r;
    ff::Elem r_inv;  // r_P
    ff::Elem c;
    ff::DLogTable dlog;

    static PrimeSetup make(unsigned p, u64 ell, u64 q_limit = 10'000'000);
};

// j_{a,b}(P) as an exact cyclotomic integer.
CycInt jacobi_sum(const PrimeSetup& s, u64 a, u64 b);

// j_{1,n}(P) for n = 1..p-2, in one sweep over the field.
std::vector<CycInt> jacobi_sums_row(const PrimeSetup& s);

// A = prod_n j_{1,n}^{[n^{-1}]}, the numerator of eta, exact.
CycInt eta_numerator(const PrimeSetup& s);

// eta(P) = A^(1 - sigma_{-1}) in Z_p[zeta_p] mod p^prec.
PadicCyc eta(const PrimeSetup& s, unsigned prec);

// tau(P)^p = q * prod_{n=1}^{p-2} j_{1,n}(P), exact.
CycInt tau_p_power(const PrimeSetup& s);

// ell-adic valuations of x at every prime above a split ell (f = 1):
// entry b is v at P_{c^b}, measured by evaluating x at the Hensel lift of c^b
// mod ell^prec_ell. Throws precision_error if a valuation reaches prec_ell.
std::map<unsigned, long long> ideal_exponents(const PrimeSetup& s,
                                              const CycInt& x,
                                              unsigned prec_ell);

// Stickelberger factorization of tau^p for f = 1: the map a -> exponent of
// sigma_a^{-1}(P) = P_{c^a}. The identity-labelled prime P_c carries
// the coefficient of sigma_1 in p*theta, which is 1.
std::map<unsigned, long long> stickelberger_exponents(const PrimeSetup& s,
                                                      unsigned prec_ell);

struct FieldOfDefinition {
    bool full_field = false;          // Q(j_{1,a}(P)) = Q(zeta_p)?
    std::vector<unsigned> stabilizer; // all t with galois(j, t) = j
};
// Brute-force stabilizer of j_{1,a}(P), checked against the split/cubic
// predicate; mismatch is an identity_error.
FieldOfDefinition field_of_definition_check(const PrimeSetup& s, unsigned a);

struct CongruenceSum {
    u64 value = 0;        // S_k mod p^prec (k >= 3), or S_1/p mod p^(prec-1)
    unsigned prec = 0;
    u64 residue = 0;      // value mod p, asserted to be k resp. -1
};
// S_k = sum_{n=1}^{p-2} (1 + omega^k(n) - omega^k(1+n)) [n^{-1}];
// asserts S_k = k (mod p) for odd k >= 3 and S_1/p = -1 (mod p) for k = 1.
CongruenceSum congruence_sums(unsigned p, unsigned k, unsigned prec);

struct EtaIndex {
    u64 value = 0;  // 2^((p-3)/2) (1/p) prod_{psi odd} S_psi mod p^(prec-1)
    unsigned prec = 0;
    long long vp = 0;
};
// The index (J^- : Z[Delta] eta); asserts v_p = 0.
EtaIndex eta_index(unsigned p, unsigned prec);

// z * theta in the exact rational group ring; asserts integrality.
GroupRingExact beta_eta_exponent(unsigned p);

// Symbolic + numeric beta(eta) = z theta check. The symbolic part verifies
// integrality and e_psi(z theta) = psi(z) B_{1,psi^{-1}}; with a split setup
// it also matches the Hensel-measured valuation vector of eta(P) against
// z theta. Returns true (identity_error on any mismatch).
bool beta_eta_identity(unsigned p, const PrimeSetup* split_setup = nullptr);

}  // namespace cycjac::jacobi
