#pragma once

#include <gmpxx.h>

#include <optional>

#include "cycjac/util.hpp"

namespace cycjac::cyc {

// pi-adic valuation result. lower_bound = true means "v_pi >= v" (the element
// vanished at the working precision); callers must raise the precision if they
// need to resolve it.
struct PiVal {
    long long v = 0;
    bool lower_bound = false;

    bool operator==(const PiVal&) const = default;
};

// Exact element of Z[zeta_p], written on the power basis zeta^0..zeta^(p-2).
// The representative is canonical, so equality is coefficient equality.
class CycInt {
  public:
    explicit CycInt(unsigned p) : p_(p), c_(p - 1) { check_p(p); }

    static CycInt integer(unsigned p, mpz_class v);
    static CycInt zeta_pow(unsigned p, long k);
    // coefficients indexed by zeta exponent 0..p-1; the zeta^(p-1) entry is
    // folded away via 1 + zeta + ... + zeta^(p-1) = 0
    static CycInt from_extended(unsigned p, const std::vector<mpz_class>& ext);

    unsigned p() const { return p_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt operator-() const;
    bool operator==(const CycInt& o) const = default;

    CycInt galois(u64 t) const;  // zeta -> zeta^t, gcd(t, p) = 1
    CycInt pow(u64 e) const;

    mpz_class norm() const;   // product of all Galois conjugates
    mpz_class trace() const;  // sum of all Galois conjugates
    std::optional<mpz_class> as_rational() const;
    bool is_zero() const;

    // image under zeta -> zeta_image in Z/modulus
    mpz_class eval_mod(const mpz_class& zeta_image, const mpz_class& modulus) const;

  private:
    static void check_p(unsigned p) {
        if (p < 5 || !is_prime_u64(p))
            throw std::invalid_argument("p must be a prime >= 5");
    }
    void match(const CycInt& o) const {
        if (p_ != o.p_) throw std::invalid_argument("cyclotomic prime mismatch");
    }
    unsigned p_;
    std::vector<mpz_class> c_;
};

// Element of Z_p[zeta_p] truncated mod p^prec, same power basis as CycInt.
// Residues are uint64, so p^prec must stay below 2^63.
class PadicCyc {
  public:
    PadicCyc(unsigned p, unsigned prec);
    static PadicCyc from_cyc(const CycInt& x, unsigned prec);
    static PadicCyc constant(unsigned p, unsigned prec, const mpz_class& v);

    unsigned p() const { return p_; }
    unsigned prec() const { return prec_; }
    u64 modulus() const { return mod_; }
    const std::vector<u64>& coeffs() const { return c_; }
    u64 coeff(unsigned i) const { return c_[i]; }
    void set_coeff(unsigned i, u64 v) { c_[i] = v % mod_; }

    PadicCyc operator+(const PadicCyc& o) const;
    PadicCyc operator-(const PadicCyc& o) const;
    PadicCyc operator*(const PadicCyc& o) const;
    PadicCyc operator-() const;
    bool operator==(const PadicCyc& o) const = default;

    PadicCyc scalar_mul(u64 s) const;
    PadicCyc galois(u64 t) const;
    PadicCyc pow(u64 e) const;
    PadicCyc inverse() const;  // requires v_pi = 0

    // canonical lift / truncation between precisions
    PadicCyc with_prec(unsigned newprec) const;
    // exact division by p^k; throws precision_error if any residue resists
    PadicCyc divide_exact_p(unsigned k) const;

    u64 norm() const;   // mod p^prec
    u64 trace() const;  // mod p^prec
    bool is_zero() const;

    // v_pi via the pi-power-basis decomposition; exact below (p-1)*prec,
    // else the lower-bound sentinel
    PiVal pi_valuation() const;

    static u64 max_prec(unsigned p);  // largest prec with p^prec < 2^63

  private:
    void match(const PadicCyc& o) const {
        if (p_ != o.p_ || prec_ != o.prec_)
            throw std::invalid_argument("p-adic precision/prime mismatch");
    }
    unsigned p_, prec_;
    u64 mod_;
    std::vector<u64> c_;
};

// Character omega^k of (Z/p)^*, omega the Teichmuller character.
struct Character {
    unsigned p;
    unsigned k;  // reduced mod p-1

    Character(unsigned p_, long k_) : p(p_) {
        long m = static_cast<long>(p_) - 1;
        k = static_cast<unsigned>(((k_ % m) + m) % m);
    }
    bool is_odd() const { return k % 2 == 1; }
    Character inverse() const { return Character(p, -static_cast<long>(k)); }
    // omega^k(a) mod p^prec
    u64 value(u64 a, unsigned prec) const;
};

// Element of Z_p[Delta] mod p^prec; coefficient of sigma_a at index a-1.
class GroupRingElt {
  public:
    GroupRingElt(unsigned p, unsigned prec);

    unsigned p() const { return p_; }
    unsigned prec() const { return prec_; }
    u64 modulus() const { return mod_; }
    u64 coeff(u64 a) const { return c_[index(a)]; }
    void set_coeff(u64 a, u64 v) { c_[index(a)] = v % mod_; }

    GroupRingElt operator+(const GroupRingElt& o) const;
    GroupRingElt operator-(const GroupRingElt& o) const;
    GroupRingElt operator*(const GroupRingElt& o) const;  // convolution
    bool operator==(const GroupRingElt& o) const = default;

    // psi(sum c_a sigma_a) = sum c_a psi(a); the e_psi-eigenvalue
    u64 apply_character(const Character& psi) const;
    // (sum c_a sigma_a) . x = sum c_a galois(x, a)
    PadicCyc apply_to(const PadicCyc& x) const;

  private:
    size_t index(u64 a) const {
        a %= p_;
        if (a == 0) throw std::invalid_argument("sigma_a needs a prime to p");
        return static_cast<size_t>(a - 1);
    }
    unsigned p_, prec_;
    u64 mod_;
    std::vector<u64> c_;
};

// Exact-rational group ring Q[Delta], for theta and z.
class GroupRingExact {
  public:
    explicit GroupRingExact(unsigned p) : p_(p), c_(p - 1) {}

    unsigned p() const { return p_; }
    const mpq_class& coeff(u64 a) const { return c_[index(a)]; }
    void set_coeff(u64 a, const mpq_class& v) { c_[index(a)] = v; }

    GroupRingExact operator+(const GroupRingExact& o) const;
    GroupRingExact operator-(const GroupRingExact& o) const;
    GroupRingExact operator*(const GroupRingExact& o) const;
    bool operator==(const GroupRingExact& o) const = default;

    bool is_integral() const;
    // for integral elements only: sum c_a psi(a) mod p^prec
    u64 apply_character_mod(const Character& psi, unsigned prec) const;

  private:
    size_t index(u64 a) const {
        a %= p_;
        if (a == 0) throw std::invalid_argument("sigma_a needs a prime to p");
        return static_cast<size_t>(a - 1);
    }
    unsigned p_;
    std::vector<mpq_class> c_;
};

// The (p-1)-th root of unity congruent to a mod p, as a residue mod p^prec.
u64 teichmuller(unsigned p, u64 a, unsigned prec);
// table indexed by a = 0..p-1 (entry 0 unused)
std::vector<u64> teichmuller_table(unsigned p, unsigned prec);

// e_rho x = (1/(p-1)) sum_a rho^{-1}(a) galois(x, a)
PadicCyc idempotent_apply(const Character& rho, const PadicCyc& x);

// tau(rho) = sum_{a=1}^{p-1} rho(a) zeta^a
PadicCyc tau_character(const Character& rho, unsigned prec);

// Iwasawa logarithm, Log_p(p) = 0 and Log_p(root of unity) = 0. For a unit
// the result carries the precision of x; a positive valuation v costs
// ceil(v/(p-1)) levels, which is all the information x mod p^prec carries.
// The unit-reduction chain and series run at an internally raised precision
// to absorb the division losses.
PadicCyc padic_log(const PadicCyc& x);

// phi with phi(x) zeta_p = Log_p(x), solved on the basis {zeta, ..., zeta^(p-1)}
GroupRingElt phi_map(const PadicCyc& x);

struct Bernoulli1 {
    u64 value = 0;       // B_{1,psi} mod p^prec
    unsigned prec = 0;   // input prec minus one (one division by p)
    long long vp = 0;    // v_p(B)
    bool vp_lower_bound = false;
};
// B_{1,omega^k} = (1/p) sum a omega^k(a); k odd, k != p-2
Bernoulli1 bernoulli_b1(const Character& psi, unsigned prec);

// theta = (1/p) sum_{a=1}^{p-1} a sigma_a^{-1}
GroupRingExact theta(unsigned p);
// z = (1 - sigma_{-1}) sum_{n=1}^{p-2} (1 + sigma_n - sigma_{1+n}) [n^{-1}]
GroupRingExact z_elt(unsigned p);

}  // namespace cycjac::cyc
