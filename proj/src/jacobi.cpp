#include "cycjac/jacobi.hpp"

#include <algorithm>

namespace cycjac::jacobi {

using cyc::Bernoulli1;
using cyc::GroupRingElt;

PrimeSetup PrimeSetup::make(unsigned p, u64 ell, u64 q_limit) {
    if (p < 5 || !is_prime_u64(p))
        throw std::invalid_argument("p must be a prime >= 5");
    if (!is_prime_u64(ell) || ell == p)
        throw std::invalid_argument("ell must be a prime distinct from p");
    PrimeSetup s;
    s.p = p;
    s.ell = ell;
    s.f = mult_order_mod(ell % p, p);
    s.field = ff::ExtField::make(ell, s.f, q_limit);
    if ((s.field.q - 1) % p != 0)
        throw identity_error("q != 1 mod p for f = ord_p(ell)");
    s.r = ff::find_generator(s.field);
    s.r_inv = s.field.inv(s.r);
    s.c = s.field.pow(s.r, (s.field.q - 1) / p);
    s.dlog = ff::build_dlog_table(s.field, s.r, q_limit);
    return s;
}

namespace {

// assemble -sum_i N_i zeta^{-i} from the tally N
CycInt from_tally(unsigned p, const std::vector<mpz_class>& tally) {
    std::vector<mpz_class> ext(p);
    for (unsigned i = 0; i < p; ++i) ext[(p - i) % p] = -tally[i];
    return CycInt::from_extended(p, ext);
}

}  // namespace

CycInt jacobi_sum(const PrimeSetup& s, u64 a, u64 b) {
    const unsigned p = s.p;
    a %= p;
    b %= p;
    if (a == 0 && b == 0)
        return CycInt::integer(p, 2 - mpz_class(static_cast<unsigned long>(s.field.q)));
    if ((a + b) % p == 0)
        return CycInt::integer(p, 1);

    const auto& F = s.field;
    std::vector<mpz_class> tally(p);
    ff::Elem one = F.one();
    for (u64 idx = 2; idx < F.q; ++idx) {
        ff::Elem alpha = F.decode(idx);
        u64 da = s.dlog.dlog(alpha) % p;
        u64 db = s.dlog.dlog(F.sub(one, alpha)) % p;
        tally[(a * da + b * db) % p] += 1;
    }
    return from_tally(p, tally);
}

std::vector<CycInt> jacobi_sums_row(const PrimeSetup& s) {
    const unsigned p = s.p;
    const auto& F = s.field;
    std::vector<std::vector<mpz_class>> tally(p - 1, std::vector<mpz_class>(p));
    ff::Elem one = F.one();
    for (u64 idx = 2; idx < F.q; ++idx) {
        ff::Elem alpha = F.decode(idx);
        u64 da = s.dlog.dlog(alpha) % p;
        u64 db = s.dlog.dlog(F.sub(one, alpha)) % p;
        for (u64 n = 1; n + 1 < p; ++n)
            tally[n - 1][(da + n * db) % p] += 1;
    }
    std::vector<CycInt> row;
    row.reserve(p - 2);
    for (u64 n = 1; n + 1 < p; ++n) row.push_back(from_tally(p, tally[n - 1]));
    return row;
}

CycInt eta_numerator(const PrimeSetup& s) {
    const unsigned p = s.p;
    auto row = jacobi_sums_row(s);
    CycInt acc = CycInt::integer(p, 1);
    for (u64 n = 1; n + 1 < p; ++n)
        acc = acc * row[n - 1].pow(invmod(n, p));
    return acc;
}

PadicCyc eta(const PrimeSetup& s, unsigned prec) {
    const unsigned p = s.p;
    auto row = jacobi_sums_row(s);
    PadicCyc num = PadicCyc::constant(p, prec, 1);
    for (u64 n = 1; n + 1 < p; ++n)
        num = num * PadicCyc::from_cyc(row[n - 1], prec).pow(invmod(n, p));
    PadicCyc conj = num.galois(p - 1);
    return num * conj.inverse();
}

CycInt tau_p_power(const PrimeSetup& s) {
    const unsigned p = s.p;
    auto row = jacobi_sums_row(s);
    CycInt acc = CycInt::integer(p, static_cast<unsigned long>(s.field.q));
    for (auto& j : row) acc = acc * j;
    return acc;
}

std::map<unsigned, long long> ideal_exponents(const PrimeSetup& s,
                                              const CycInt& x,
                                              unsigned prec_ell) {
    if (s.f != 1)
        throw std::invalid_argument("ideal_exponents needs a split prime (f = 1)");
    if (x.is_zero()) throw std::invalid_argument("ideal_exponents of zero");
    const unsigned p = s.p;
    mpz_class ell(static_cast<unsigned long>(s.ell));
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), ell.get_mpz_t(), prec_ell);

    // Hensel (Teichmuller) lift of c: the p-th roots of unity of Z_ell are
    // the lifts of those of F_ell
    mpz_class chat(static_cast<unsigned long>(s.field.encode(s.c)));
    for (unsigned i = 0; i < prec_ell; ++i)
        mpz_powm(chat.get_mpz_t(), chat.get_mpz_t(), ell.get_mpz_t(), mod.get_mpz_t());

    std::map<unsigned, long long> out;
    mpz_class point = 1;
    for (unsigned b = 1; b < p; ++b) {
        point = point * chat % mod;  // lift of c^b
        mpz_class val = x.eval_mod(point, mod);
        if (val == 0)
            throw precision_error("ell-adic valuation at or beyond working precision");
        mpz_class rem;
        out[b] = static_cast<long long>(
            mpz_remove(rem.get_mpz_t(), val.get_mpz_t(), ell.get_mpz_t()));
    }
    return out;
}

std::map<unsigned, long long> stickelberger_exponents(const PrimeSetup& s,
                                                      unsigned prec_ell) {
    return ideal_exponents(s, tau_p_power(s), prec_ell);
}

FieldOfDefinition field_of_definition_check(const PrimeSetup& s, unsigned a) {
    const unsigned p = s.p;
    if (a < 1 || a > p - 2) throw std::invalid_argument("a must be in [1, p-2]");
    CycInt j = jacobi_sum(s, 1, a);
    FieldOfDefinition out;
    for (unsigned t = 1; t < p; ++t)
        if (j.galois(t) == j) out.stabilizer.push_back(t);
    out.full_field = out.stabilizer.size() == 1;

    bool cubic_case =
        (p % 3 == 1) && ((static_cast<u64>(a) * a + a + 1) % p == 0);
    bool predicted_full = (s.f == 1) && !cubic_case;
    if (out.full_field != predicted_full)
        throw identity_error("field-of-definition predicate mismatch");
    auto in_stab = [&](u64 t) {
        return std::find(out.stabilizer.begin(), out.stabilizer.end(),
                         static_cast<unsigned>(t % p)) != out.stabilizer.end();
    };
    if (s.f > 1 && !in_stab(s.ell))
        throw identity_error("sigma_ell does not fix j_{1,a}");
    if (cubic_case) {
        for (u64 t = 1; t < p; ++t)
            if (t * t % p * t % p == 1 && !in_stab(t))
                throw identity_error("order-3 subgroup does not fix j_{1,a}");
    }
    return out;
}

namespace {

// raw S_psi = sum_{n=1}^{p-2} (1 + psi(n) - psi(1+n)) [n^{-1}] mod p^prec
u64 raw_congruence_sum(unsigned p, unsigned k, u64 mod,
                       const std::vector<u64>& teich) {
    u64 s = 0;
    for (u64 n = 1; n + 1 < p; ++n) {
        u64 term = addmod(1, powmod(teich[n], k, mod), mod);
        term = submod(term, powmod(teich[n + 1], k, mod), mod);
        s = addmod(s, mulmod(term, invmod(n, p), mod), mod);
    }
    return s;
}

}  // namespace

CongruenceSum congruence_sums(unsigned p, unsigned k, unsigned prec) {
    if (k % 2 == 0 || k < 1 || k > p - 2)
        throw std::invalid_argument("k must be odd in [1, p-2]");
    if (prec < 2) throw std::invalid_argument("need precision >= 2");
    const u64 mod = pow_u64_checked(p, prec, kMaxModulus - 1);
    auto teich = cyc::teichmuller_table(p, prec);
    u64 s = raw_congruence_sum(p, k, mod, teich);
    CongruenceSum out;
    if (k >= 3) {
        out.value = s;
        out.prec = prec;
        out.residue = s % p;
        if (out.residue != k % p)
            throw identity_error("congruence S_k = k (mod p) failed");
    } else {
        if (s % p != 0)
            throw identity_error("S_1 is not divisible by p");
        out.value = (s / p) % (mod / p);
        out.prec = prec - 1;
        out.residue = out.value % p;
        // the omega-projection is a p-adic unit after one division by p
        if (out.residue == 0)
            throw identity_error("S_1/p is not a unit mod p");
    }
    return out;
}

EtaIndex eta_index(unsigned p, unsigned prec) {
    if (prec < 2) throw std::invalid_argument("need precision >= 2");
    const u64 mod = pow_u64_checked(p, prec, kMaxModulus - 1);
    auto teich = cyc::teichmuller_table(p, prec);
    u64 prod = powmod(2, (p - 3) / 2, mod);
    for (unsigned k = 1; k <= p - 2; k += 2)
        prod = mulmod(prod, raw_congruence_sum(p, k, mod, teich), mod);
    if (prod % p != 0)
        throw identity_error("eta index product not divisible by p");
    EtaIndex out;
    out.value = (prod / p) % (mod / p);
    out.prec = prec - 1;
    out.vp = out.value == 0 ? out.prec : vp_u64(out.value, p);
    if (out.vp != 0)
        throw identity_error("eta index is divisible by p");
    return out;
}

GroupRingExact beta_eta_exponent(unsigned p) {
    GroupRingExact zt = cyc::z_elt(p) * cyc::theta(p);
    if (!zt.is_integral())
        throw identity_error("z theta has a non-integral coefficient");
    return zt;
}

bool beta_eta_identity(unsigned p, const PrimeSetup* split_setup) {
    GroupRingExact zt = beta_eta_exponent(p);

    // e_psi(z theta) = psi(z) B_{1,psi^{-1}} for odd psi != omega
    const unsigned prec = 5;
    GroupRingExact z = cyc::z_elt(p);
    for (unsigned k = 3; k <= p - 2; k += 2) {
        Character psi(p, k);
        u64 lhs = zt.apply_character_mod(psi, prec);
        Bernoulli1 b = cyc::bernoulli_b1(psi.inverse(), prec);
        u64 small_mod = pow_u64_checked(p, b.prec, kMaxModulus - 1);
        u64 rhs = mulmod(z.apply_character_mod(psi, prec) % small_mod,
                         b.value % small_mod, small_mod);
        if (lhs % small_mod != rhs)
            throw identity_error("e_psi(z theta) != psi(z) B_{1,psi^{-1}}");
    }

    if (split_setup != nullptr) {
        const PrimeSetup& s = *split_setup;
        if (s.p != p || s.f != 1)
            throw std::invalid_argument("numeric beta-eta check needs a split setup");
        unsigned prec_ell = (p - 1) * (p - 2) / 2 + 3;
        CycInt num = eta_numerator(s);
        auto en = ideal_exponents(s, num, prec_ell);
        auto ec = ideal_exponents(s, num.galois(p - 1), prec_ell);
        for (unsigned b = 1; b < p; ++b) {
            long measured = static_cast<long>(en[b] - ec[b]);
            mpq_class want = zt.coeff(invmod(b, p));
            if (mpq_class(measured) != want)
                throw identity_error("eta exponent vector disagrees with z theta");
        }
    }
    return true;
}

}  // namespace cycjac::jacobi
