#pragma once

#include "cycjac/curve.hpp"

namespace cycjac::criteria {

using curve::JacobianReport;
using cyc::Character;
using jacobi::PrimeSetup;

struct UeharaResult {
    u64 lhs = 0;  // psi-eigenvalue of phi(eta(P)) mod p
    u64 rhs = 0;  // 2k Ind(P, prod ((1-zeta^-a)/(1-zeta))^(a^(k-1))) mod p
    bool equal = false;
    bool experimental = false;  // f > 1: Ind normalization not pinned
};
// Two-pipeline congruence: p-adic logarithm vs finite-field index. k odd in
// [3, p-2]; the pipelines share nothing beyond the PrimeSetup conventions.
UeharaResult uehara_check(const PrimeSetup& s, unsigned k, unsigned prec);

// Odd k in [1, p-4] with v_p(B_{1,omega^k}) >= 1, with the valuations.
std::vector<std::pair<unsigned, long long>> irregular_pairs(unsigned p,
                                                            unsigned prec);

struct EtaClassResult {
    bool vanishes = false;         // e_psi eta(P) O = 0 in I/I^p
    bool psi_ell_trivial = false;  // psi(ell) = 1
    long long b1_vp = 0;           // v_p(B_{1,psi^{-1}})
};
// e_psi eta(P) O = 0 in I/I^p iff psi(ell) != 1 or B_{1,psi^{-1}} = 0 (mod p);
// the left side is computed from the z*theta exponent vector and the orbit of
// P, the right side independently. Mismatch is an identity_error.
EtaClassResult eta_class_vanishing_check(const PrimeSetup& s,
                                         const Character& psi, unsigned prec);

enum class ScanMode { FixP, FixEll };

struct ScanJob {
    ScanMode mode = ScanMode::FixP;
    unsigned p = 0;              // FixP
    u64 ell = 0;                 // FixEll
    std::optional<unsigned> n;   // target odd n (required in FixP mode)
    unsigned a = 1;
    u64 min_prime = 0;
    u64 max_prime = 0;
    unsigned prec = 8;
    u64 q_limit = 10'000'000;
    bool stop_at_first = false;
    bool verify_hits = true;     // re-verify hits via point counting when feasible
    bool spot_check_filtered = false;
    u64 seed = 0;
    unsigned jobs = 1;
};

struct ScanHit {
    u64 prime = 0;  // ell in FixP mode, p in FixEll mode
    unsigned f = 0;
    long long t = 0;
    std::optional<unsigned> n_star;
    std::vector<unsigned> structure;
    bool verified = false;
};

struct ScanStats {
    u64 tested = 0;
    u64 filtered_even_order = 0;
    u64 filtered_ln_not_one = 0;
    u64 skipped_resource = 0;
    u64 undecided = 0;
    u64 spot_checked = 0;
};

struct ScanResult {
    ScanJob job;
    std::vector<ScanHit> hits;     // FixP: n_star == n; FixEll: members of S(ell)
    std::vector<ScanHit> reports;  // every computed structure, by prime
    ScanStats stats;
    u64 runtime_ms = 0;  // volatile; never part of a cache payload
};

// jacobian_structure with precision retry inside the uint64 envelope.
JacobianReport structure_adaptive(const PrimeSetup& s, unsigned a,
                                  unsigned prec, bool crosscheck_lpoly,
                                  u64 q_limit);

// Fixed p: scan primes ell (split primes first) for d_p-rank n at index a.
ScanResult scan_fix_p(const ScanJob& job);

// Fixed ell, a = 1 (the X^2 - X + T^p family): scan primes p, apply the
// even-order and ell^n != 1 filters, classify survivors.
ScanResult scan_fix_ell(const ScanJob& job);

}  // namespace cycjac::criteria
