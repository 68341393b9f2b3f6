#include "cycjac/curve.hpp"

#include <algorithm>

namespace cycjac::curve {

using cyc::Character;
using cyc::GroupRingExact;

QuotientCurve QuotientCurve::make(unsigned p, unsigned a, ff::ExtField base) {
    if (p < 5 || !is_prime_u64(p))
        throw std::invalid_argument("p must be a prime >= 5");
    if (a < 1 || a > p - 2) throw std::invalid_argument("a must be in [1, p-2]");
    if (base.ell == p) throw std::invalid_argument("base characteristic equals p");
    QuotientCurve c;
    c.p = p;
    c.a = a;
    c.base = std::move(base);
    return c;
}

u64 count_points(const QuotientCurve& c, unsigned m, u64 q_limit) {
    ff::ExtField F = ff::ExtField::make(c.base.ell, c.base.f * m, q_limit);
    const u64 Q = F.q;
    if ((Q - 1) % c.p != 0) return Q + 1;  // x -> x^p is a bijection
    const u64 e = (Q - 1) / c.p;
    u64 split = 0;
    ff::Elem one = F.one();
    for (u64 idx = 2; idx < Q; ++idx) {
        ff::Elem b = F.decode(idx);
        ff::Elem w = F.mul(b, F.pow(F.sub(one, b), c.a));
        if (F.is_one(F.pow(w, e))) ++split;
    }
    return 3 + static_cast<u64>(c.p) * split;
}

std::vector<u64> count_points_batch(unsigned p, const ff::ExtField& base,
                                    unsigned m, u64 q_limit) {
    ff::ExtField F = ff::ExtField::make(base.ell, base.f * m, q_limit);
    const u64 Q = F.q;
    if ((Q - 1) % p != 0) return std::vector<u64>(p - 2, Q + 1);
    const u64 e = (Q - 1) / p;
    std::vector<u64> split(p - 2, 0);
    ff::Elem one = F.one();
    for (u64 idx = 2; idx < Q; ++idx) {
        ff::Elem b = F.decode(idx);
        ff::Elem x = F.pow(b, e);                  // b^e
        ff::Elem y = F.pow(F.sub(one, b), e);      // (1-b)^e
        ff::Elem w = x;
        for (unsigned a = 1; a + 1 < p; ++a) {
            w = F.mul(w, y);                       // b^e (1-b)^(ae)
            if (F.is_one(w)) ++split[a - 1];
        }
    }
    std::vector<u64> counts(p - 2);
    for (unsigned a = 1; a + 1 < p; ++a)
        counts[a - 1] = 3 + static_cast<u64>(p) * split[a - 1];
    return counts;
}

mpz_class LPolynomial::at_one() const {
    mpz_class v = 0;
    for (auto& c : coeffs) v += c;
    return v;
}

std::vector<mpz_class> LPolynomial::power_sums(unsigned upto) const {
    // -Z L'/L = sum p_k Z^k gives p_k = -k c_k - sum_{i=1}^{k-1} p_i c_{k-i}
    std::vector<mpz_class> ps(upto + 1);
    for (unsigned k = 1; k <= upto; ++k) {
        mpz_class v = 0;
        if (k < coeffs.size()) v = -mpz_class(coeffs[k] * k);
        for (unsigned i = 1; i < k; ++i)
            if (k - i < coeffs.size()) v -= ps[i] * coeffs[k - i];
        ps[k] = v;
    }
    return ps;
}

mpz_class LPolynomial::predicted_count(unsigned i) const {
    mpz_class qi;
    mpz_ui_pow_ui(qi.get_mpz_t(), static_cast<unsigned long>(q), i);
    return qi + 1 - power_sums(i)[i];
}

LPolynomial lpoly_from_counts(unsigned g, u64 q, const std::vector<u64>& counts) {
    if (counts.size() != g)
        throw std::invalid_argument("need exactly g = (p-1)/2 point counts");
    LPolynomial L;
    L.g = g;
    L.q = q;
    // s_i = q^i + 1 - N_i, with the Weil bound as a sanity gate
    std::vector<mpz_class> s(g + 1);
    for (unsigned i = 1; i <= g; ++i) {
        mpz_class qi;
        mpz_ui_pow_ui(qi.get_mpz_t(), static_cast<unsigned long>(q), i);
        s[i] = qi + 1 - mpz_class(static_cast<unsigned long>(counts[i - 1]));
        if (s[i] * s[i] > 4 * mpz_class(g) * g * qi)
            throw identity_error("point count violates the Weil bound");
    }
    // Newton: k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} s_i
    std::vector<mpz_class> esym(g + 1);
    esym[0] = 1;
    for (unsigned k = 1; k <= g; ++k) {
        mpz_class acc = 0;
        for (unsigned i = 1; i <= k; ++i) {
            if (i % 2 == 1)
                acc += esym[k - i] * s[i];
            else
                acc -= esym[k - i] * s[i];
        }
        mpz_class r;
        mpz_fdiv_qr_ui(esym[k].get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), k);
        if (r != 0)
            throw identity_error("Newton identity gave a non-integer coefficient");
    }
    L.coeffs.assign(2 * g + 1, 0);
    for (unsigned k = 0; k <= g; ++k)
        L.coeffs[k] = (k % 2 == 0) ? esym[k] : -esym[k];
    // functional equation: coeff[2g-i] = q^(g-i) coeff[i]
    for (unsigned i = 0; i < g; ++i) {
        mpz_class qg;
        mpz_ui_pow_ui(qg.get_mpz_t(), static_cast<unsigned long>(q), g - i);
        L.coeffs[2 * g - i] = qg * L.coeffs[i];
    }
    return L;
}

LPolynomial lpoly_from_jacobi(const PrimeSetup& s, unsigned a) {
    const unsigned p = s.p;
    if (a < 1 || a > p - 2) throw std::invalid_argument("a must be in [1, p-2]");
    CycInt j = jacobi::jacobi_sum(s, 1, a);
    std::vector<CycInt> poly = {CycInt::integer(p, 1)};
    for (u64 t = 1; t < p; ++t) {
        CycInt root = j.galois(t);
        std::vector<CycInt> next(poly.size() + 1, CycInt(p));
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k] = next[k] + poly[k];
            next[k + 1] = next[k + 1] - root * poly[k];
        }
        poly = std::move(next);
    }
    LPolynomial L;
    L.g = (p - 1) / 2;
    L.q = s.field.q;
    L.coeffs.reserve(p);
    for (auto& c : poly) {
        auto r = c.as_rational();
        if (!r) throw identity_error("conjugate product left the rationals");
        L.coeffs.push_back(*r);
    }
    if (L.coeffs[0] != 1) throw identity_error("L(0) != 1");
    mpz_class qg;
    mpz_ui_pow_ui(qg.get_mpz_t(), static_cast<unsigned long>(L.q), L.g);
    if (L.coeffs[2 * L.g] != qg)
        throw identity_error("leading coefficient is not q^g");
    for (unsigned i = 0; i <= L.g; ++i) {
        mpz_class qi;
        mpz_ui_pow_ui(qi.get_mpz_t(), static_cast<unsigned long>(L.q), L.g - i);
        if (L.coeffs[2 * L.g - i] != qi * L.coeffs[i])
            throw identity_error("functional equation failed");
    }
    return L;
}

JacobianReport jacobian_structure(const PrimeSetup& s, unsigned a, unsigned prec,
                                  bool crosscheck_lpoly, u64 q_limit) {
    const unsigned p = s.p;
    CycInt j = jacobi::jacobi_sum(s, 1, a);
    PadicCyc jp = PadicCyc::from_cyc(j, prec);
    PadicCyc one = PadicCyc::constant(p, prec, 1);

    PiVal t_direct = (jp - one).pi_valuation();
    if (t_direct.lower_bound)
        throw precision_error("v_pi(j-1) unresolved; raise the precision");
    PadicCyc lg = cyc::padic_log(jp);
    PiVal t_log = lg.pi_valuation();
    if (t_log.lower_bound || t_log.v != t_direct.v)
        throw identity_error("v_pi(j-1) != v_pi(Log j)");
    const long long t = t_direct.v;
    if (t >= static_cast<long long>(p - 1) * (prec - 2))
        throw precision_error("t is too close to the working precision");

    JacobianReport rep;
    rep.t = t;

    // trivial component is (f/2) Log_p(ell); even nontrivial components vanish
    PadicCyc e1 = cyc::idempotent_apply(Character(p, 0), lg);
    PadicCyc lgell = cyc::padic_log(PadicCyc::constant(
        p, prec, mpz_class(static_cast<unsigned long>(s.ell))));
    u64 half_f = mulmod(s.f, invmod(2, lg.modulus()), lg.modulus());
    if (!(e1 == lgell.scalar_mul(half_f)))
        throw identity_error("trivial log component is not (f/2) Log(ell)");
    for (unsigned n = 2; n + 1 < p; n += 2) {
        if (!cyc::idempotent_apply(Character(p, n), lg).is_zero())
            throw identity_error("even nontrivial log component did not vanish");
    }

    for (unsigned n = 1; n + 1 < p; n += 2) {
        PadicCyc comp = cyc::idempotent_apply(Character(p, n), lg);
        PiVal v = comp.pi_valuation();
        rep.odd_log_valuations[n] = v;
        if (!v.lower_bound && v.v % (p - 1) != n % (p - 1))
            throw identity_error("odd log component valuation off its residue class");
        if (n == 1) {
            if (!v.lower_bound && v.v <= 1)
                throw identity_error("omega component valuation is not > 1");
        } else if (!rep.n_star && !v.lower_bound && v.v == n) {
            rep.n_star = n;  // e_{omega^n} j is not a p-th power in U
        }
    }

    const long long sq = t / (p - 1), r = t % (p - 1);
    for (long long i = 0; i < r; ++i)
        rep.structure.push_back(static_cast<unsigned>(sq + 1));
    if (sq > 0)
        for (long long i = 0; i < p - 1 - r; ++i)
            rep.structure.push_back(static_cast<unsigned>(sq));
    mpz_ui_pow_ui(rep.order_p_part.get_mpz_t(), p, static_cast<unsigned long>(t));

    if (rep.n_star) {
        if (t != static_cast<long long>(*rep.n_star))
            throw identity_error("t disagrees with n_star");
    } else {
        // (Z/p)^(p-1) outcome must co-occur exactly with ell^(p-1) != 1 mod p^2
        u64 p2 = static_cast<u64>(p) * p;
        bool fermat_quot_nonzero = powmod(s.ell % p2, p - 1, p2) != 1;
        if ((t == p - 1) != fermat_quot_nonzero)
            throw identity_error("(Z/p)^(p-1) case disagrees with ell^(p-1) mod p^2");
        rep.outside_rank_dichotomy = (t != p - 1);
    }

    if (crosscheck_lpoly) {
        unsigned g = (p - 1) / 2;
        u64 qg = 1;
        bool fits = true;
        for (unsigned i = 0; i < g && fits; ++i) {
            if (qg > q_limit / s.field.q) fits = false;
            qg *= s.field.q;
        }
        if (fits) {
            QuotientCurve c = QuotientCurve::make(p, a, s.field);
            std::vector<u64> counts;
            for (unsigned m = 1; m <= g; ++m)
                counts.push_back(count_points(c, m, q_limit));
            LPolynomial Lc = lpoly_from_counts(g, s.field.q, counts);
            if (!(Lc == lpoly_from_jacobi(s, a)))
                throw identity_error("count and Jacobi L-polynomials disagree");
            mpz_class L1 = Lc.at_one();
            mpz_class rem;
            auto vp = mpz_remove(rem.get_mpz_t(), L1.get_mpz_t(),
                                 mpz_class(p).get_mpz_t());
            if (static_cast<long long>(vp) != t)
                throw identity_error("v_p(L(1)) != t");
            rep.lpoly_crosschecked = true;
        }
    }
    return rep;
}

bool quadratic_family_check(unsigned p, u64 ell, u64 q_limit) {
    if (!is_prime_u64(ell) || ell == p)
        throw std::invalid_argument("ell must be a prime distinct from p");
    const unsigned g = (p - 1) / 2;
    ff::ExtField base = ff::ExtField::make(ell, 1, q_limit);
    QuotientCurve c = QuotientCurve::make(p, 1, base);
    for (unsigned i = 1; i <= g; ++i) {
        ff::ExtField F = ff::ExtField::make(ell, i, q_limit);
        const u64 Q = F.q;
        // direct count of X^2 - X + T^p = 0 plus one place at infinity
        u64 direct = 1;
        ff::Elem one = F.one();
        for (u64 idx = 0; idx < Q; ++idx) {
            ff::Elem tp = F.pow(F.decode(idx), p);
            if (ell == 2) {
                // x^2 + x = t^p has two roots iff the absolute trace vanishes
                ff::Elem tr = F.zero();
                ff::Elem z = tp;
                for (unsigned k = 0; k < F.f; ++k) {
                    tr = F.add(tr, z);
                    z = F.mul(z, z);
                }
                direct += F.is_zero(tr) ? 2 : 0;
            } else {
                // discriminant 1 - 4 t^p
                ff::Elem disc = F.sub(one, F.add(F.add(tp, tp), F.add(tp, tp)));
                if (F.is_zero(disc))
                    direct += 1;
                else if (F.is_one(F.pow(disc, (Q - 1) / 2)))
                    direct += 2;
            }
        }
        if (direct != count_points(c, i, q_limit)) return false;
    }
    return true;
}

}  // namespace cycjac::curve
