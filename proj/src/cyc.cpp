#include "cycjac/cyc.hpp"

#include <algorithm>

namespace cycjac::cyc {

namespace {

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

u64 mpz_residue(const mpz_class& a, u64 m) {
    return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m));
}

}  // namespace

// ---------------------------------------------------------------- CycInt

CycInt CycInt::integer(unsigned p, mpz_class v) {
    CycInt x(p);
    x.c_[0] = std::move(v);
    return x;
}

CycInt CycInt::zeta_pow(unsigned p, long k) {
    long m = ((k % static_cast<long>(p)) + p) % p;
    std::vector<mpz_class> ext(p);
    ext[static_cast<size_t>(m)] = 1;
    return from_extended(p, ext);
}

CycInt CycInt::from_extended(unsigned p, const std::vector<mpz_class>& ext) {
    if (ext.size() != p)
        throw std::invalid_argument("extended coefficient vector must have length p");
    CycInt x(p);
    // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    for (unsigned i = 0; i + 1 < p; ++i) x.c_[i] = ext[i] - ext[p - 1];
    return x;
}

CycInt CycInt::operator+(const CycInt& o) const {
    match(o);
    CycInt r(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
    match(o);
    CycInt r(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

CycInt CycInt::operator-() const {
    CycInt r(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) r.c_[i] = -c_[i];
    return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
    match(o);
    std::vector<mpz_class> ext(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j + 1 < p_; ++j)
            ext[(i + j) % p_] += c_[i] * o.c_[j];
    }
    return from_extended(p_, ext);
}

CycInt CycInt::galois(u64 t) const {
    t %= p_;
    if (t == 0) throw std::invalid_argument("galois index divisible by p");
    std::vector<mpz_class> ext(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) ext[(i * t) % p_] += c_[i];
    return from_extended(p_, ext);
}

CycInt CycInt::pow(u64 e) const {
    CycInt r = integer(p_, 1);
    CycInt b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

mpz_class CycInt::norm() const {
    CycInt acc = *this;
    for (u64 t = 2; t < p_; ++t) acc = acc * galois(t);
    auto r = acc.as_rational();
    if (!r) throw identity_error("norm did not land in Z");
    return *r;
}

mpz_class CycInt::trace() const {
    // Tr(zeta^i) = -1 for i != 0, Tr(1) = p-1
    mpz_class t = c_[0] * (p_ - 1);
    for (unsigned i = 1; i + 1 < p_; ++i) t -= c_[i];
    return t;
}

std::optional<mpz_class> CycInt::as_rational() const {
    for (unsigned i = 1; i + 1 < p_; ++i)
        if (c_[i] != 0) return std::nullopt;
    return c_[0];
}

bool CycInt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const mpz_class& v) { return v == 0; });
}

mpz_class CycInt::eval_mod(const mpz_class& zeta_image,
                           const mpz_class& modulus) const {
    mpz_class r = 0;
    for (unsigned i = p_ - 1; i-- > 0;) r = mod_nonneg(r * zeta_image + c_[i], modulus);
    return r;
}

// -------------------------------------------------------------- PadicCyc

u64 PadicCyc::max_prec(unsigned p) {
    u64 m = 1;
    u64 e = 0;
    while (m <= (kMaxModulus - 1) / p) {
        m *= p;
        ++e;
    }
    return e;
}

PadicCyc::PadicCyc(unsigned p, unsigned prec) : p_(p), prec_(prec), c_(p - 1) {
    if (prec < 1) throw std::invalid_argument("precision must be >= 1");
    mod_ = pow_u64_checked(p, prec, kMaxModulus - 1);
}

PadicCyc PadicCyc::from_cyc(const CycInt& x, unsigned prec) {
    PadicCyc r(x.p(), prec);
    for (unsigned i = 0; i + 1 < x.p(); ++i)
        r.c_[i] = mpz_residue(x.coeffs()[i], r.mod_);
    return r;
}

PadicCyc PadicCyc::constant(unsigned p, unsigned prec, const mpz_class& v) {
    PadicCyc r(p, prec);
    r.c_[0] = mpz_residue(v, r.mod_);
    return r;
}

PadicCyc PadicCyc::operator+(const PadicCyc& o) const {
    match(o);
    PadicCyc r(p_, prec_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = addmod(c_[i], o.c_[i], mod_);
    return r;
}

PadicCyc PadicCyc::operator-(const PadicCyc& o) const {
    match(o);
    PadicCyc r(p_, prec_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = submod(c_[i], o.c_[i], mod_);
    return r;
}

PadicCyc PadicCyc::operator-() const {
    PadicCyc r(p_, prec_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] ? mod_ - c_[i] : 0;
    return r;
}

PadicCyc PadicCyc::operator*(const PadicCyc& o) const {
    match(o);
    std::vector<u64> ext(p_, 0);
    for (unsigned i = 0; i + 1 < p_; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j + 1 < p_; ++j)
            ext[(i + j) % p_] =
                addmod(ext[(i + j) % p_], mulmod(c_[i], o.c_[j], mod_), mod_);
    }
    PadicCyc r(p_, prec_);
    for (unsigned i = 0; i + 1 < p_; ++i) r.c_[i] = submod(ext[i], ext[p_ - 1], mod_);
    return r;
}

PadicCyc PadicCyc::scalar_mul(u64 s) const {
    s %= mod_;
    PadicCyc r(p_, prec_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mulmod(c_[i], s, mod_);
    return r;
}

PadicCyc PadicCyc::galois(u64 t) const {
    t %= p_;
    if (t == 0) throw std::invalid_argument("galois index divisible by p");
    std::vector<u64> ext(p_, 0);
    for (unsigned i = 0; i + 1 < p_; ++i)
        ext[(i * t) % p_] = addmod(ext[(i * t) % p_], c_[i], mod_);
    PadicCyc r(p_, prec_);
    for (unsigned i = 0; i + 1 < p_; ++i) r.c_[i] = submod(ext[i], ext[p_ - 1], mod_);
    return r;
}

PadicCyc PadicCyc::pow(u64 e) const {
    PadicCyc r = constant(p_, prec_, 1);
    PadicCyc b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

u64 PadicCyc::norm() const {
    PadicCyc acc = *this;
    for (u64 t = 2; t < p_; ++t) acc = acc * galois(t);
    for (unsigned i = 1; i + 1 < p_; ++i)
        if (acc.c_[i] != 0) throw identity_error("p-adic norm did not land in Z_p");
    return acc.c_[0];
}

u64 PadicCyc::trace() const {
    u64 t = mulmod(c_[0], p_ - 1, mod_);
    for (unsigned i = 1; i + 1 < p_; ++i) t = submod(t, c_[i], mod_);
    return t;
}

PadicCyc PadicCyc::inverse() const {
    PadicCyc conj = constant(p_, prec_, 1);
    for (u64 t = 2; t < p_; ++t) conj = conj * galois(t);
    u64 nm = (*this * conj).c_[0];
    if (nm % p_ == 0)
        throw std::invalid_argument("inverse: element is not a unit");
    return conj.scalar_mul(invmod(nm, mod_));
}

PadicCyc PadicCyc::with_prec(unsigned newprec) const {
    PadicCyc r(p_, newprec);
    if (newprec <= prec_) {
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] % r.mod_;
    } else {
        r.c_ = c_;  // canonical lift
    }
    return r;
}

PadicCyc PadicCyc::divide_exact_p(unsigned k) const {
    if (k >= prec_) throw precision_error("exact division exhausts the precision");
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p_;
    PadicCyc r(p_, prec_ - k);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] % pk != 0)
            throw precision_error("element is not divisible by p^k at this precision");
        r.c_[i] = c_[i] / pk;
    }
    return r;
}

bool PadicCyc::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

PiVal PadicCyc::pi_valuation() const {
    // Write x = sum d_j pi^j with zeta = 1 + pi; the term valuations
    // (p-1) v_p(d_j) + j are pairwise distinct mod p-1, so the minimum is
    // attained once and equals v_pi(x).
    const unsigned n = p_ - 1;
    std::vector<u64> d(n, 0);
    std::vector<u64> row(n, 0);  // binomials C(i, j) for the current i
    for (unsigned i = 0; i < n; ++i) {
        row[i] = 1;
        for (unsigned j = i; j-- > 1;)
            row[j] = addmod(row[j], row[j - 1], mod_);
        // row[0] stays 1
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j <= i; ++j)
            d[j] = addmod(d[j], mulmod(c_[i], row[j], mod_), mod_);
    }
    long long best = -1;
    for (unsigned j = 0; j < n; ++j) {
        if (d[j] == 0) continue;
        long long cand = (p_ - 1) * vp_u64(d[j], p_) + j;
        if (best < 0 || cand < best) best = cand;
    }
    if (best < 0)
        return PiVal{static_cast<long long>(p_ - 1) * prec_, true};
    return PiVal{best, false};
}

// -------------------------------------------------------------- characters

u64 teichmuller(unsigned p, u64 a, unsigned prec) {
    a %= p;
    if (a == 0) throw std::invalid_argument("teichmuller of a multiple of p");
    u64 mod = pow_u64_checked(p, prec, kMaxModulus - 1);
    u64 x = a;
    for (unsigned i = 0; i < prec; ++i) x = powmod(x, p, mod);
    return x;
}

std::vector<u64> teichmuller_table(unsigned p, unsigned prec) {
    std::vector<u64> t(p, 0);
    for (u64 a = 1; a < p; ++a) t[a] = teichmuller(p, a, prec);
    return t;
}

u64 Character::value(u64 a, unsigned prec) const {
    u64 mod = pow_u64_checked(p, prec, kMaxModulus - 1);
    return powmod(teichmuller(p, a, prec), k, mod);
}

PadicCyc idempotent_apply(const Character& rho, const PadicCyc& x) {
    const unsigned p = x.p();
    if (rho.p != p) throw std::invalid_argument("character prime mismatch");
    auto teich = teichmuller_table(p, x.prec());
    const u64 mod = x.modulus();
    const unsigned kinv = (p - 1 - rho.k % (p - 1)) % (p - 1);
    PadicCyc acc(p, x.prec());
    for (u64 a = 1; a < p; ++a)
        acc = acc + x.galois(a).scalar_mul(powmod(teich[a], kinv, mod));
    return acc.scalar_mul(invmod(p - 1, mod));
}

PadicCyc tau_character(const Character& rho, unsigned prec) {
    const unsigned p = rho.p;
    auto teich = teichmuller_table(p, prec);
    PadicCyc r(p, prec);
    const u64 mod = r.modulus();
    std::vector<u64> ext(p, 0);
    for (u64 a = 1; a < p; ++a)
        ext[a] = powmod(teich[a], rho.k, mod);
    for (unsigned i = 0; i + 1 < p; ++i)
        r.set_coeff(i, submod(ext[i], ext[p - 1], mod));
    return r;
}

// ------------------------------------------------------------- group ring

GroupRingElt::GroupRingElt(unsigned p, unsigned prec)
    : p_(p), prec_(prec), c_(p - 1) {
    mod_ = pow_u64_checked(p, prec, kMaxModulus - 1);
}

GroupRingElt GroupRingElt::operator+(const GroupRingElt& o) const {
    if (p_ != o.p_ || prec_ != o.prec_)
        throw std::invalid_argument("group ring mismatch");
    GroupRingElt r(p_, prec_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = addmod(c_[i], o.c_[i], mod_);
    return r;
}

GroupRingElt GroupRingElt::operator-(const GroupRingElt& o) const {
    if (p_ != o.p_ || prec_ != o.prec_)
        throw std::invalid_argument("group ring mismatch");
    GroupRingElt r(p_, prec_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = submod(c_[i], o.c_[i], mod_);
    return r;
}

GroupRingElt GroupRingElt::operator*(const GroupRingElt& o) const {
    if (p_ != o.p_ || prec_ != o.prec_)
        throw std::invalid_argument("group ring mismatch");
    GroupRingElt r(p_, prec_);
    for (u64 a = 1; a < p_; ++a) {
        if (coeff(a) == 0) continue;
        for (u64 b = 1; b < p_; ++b) {
            u64 ab = a * b % p_;
            r.set_coeff(ab, addmod(r.coeff(ab), mulmod(coeff(a), o.coeff(b), mod_), mod_));
        }
    }
    return r;
}

u64 GroupRingElt::apply_character(const Character& psi) const {
    if (psi.p != p_) throw std::invalid_argument("character prime mismatch");
    auto teich = teichmuller_table(p_, prec_);
    u64 s = 0;
    for (u64 a = 1; a < p_; ++a)
        s = addmod(s, mulmod(coeff(a), powmod(teich[a], psi.k, mod_), mod_), mod_);
    return s;
}

PadicCyc GroupRingElt::apply_to(const PadicCyc& x) const {
    if (x.p() != p_ || x.prec() != prec_)
        throw std::invalid_argument("group ring / element mismatch");
    PadicCyc acc(p_, prec_);
    for (u64 a = 1; a < p_; ++a) {
        if (coeff(a) == 0) continue;
        acc = acc + x.galois(a).scalar_mul(coeff(a));
    }
    return acc;
}

GroupRingExact GroupRingExact::operator+(const GroupRingExact& o) const {
    if (p_ != o.p_) throw std::invalid_argument("group ring mismatch");
    GroupRingExact r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

GroupRingExact GroupRingExact::operator-(const GroupRingExact& o) const {
    if (p_ != o.p_) throw std::invalid_argument("group ring mismatch");
    GroupRingExact r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

GroupRingExact GroupRingExact::operator*(const GroupRingExact& o) const {
    if (p_ != o.p_) throw std::invalid_argument("group ring mismatch");
    GroupRingExact r(p_);
    for (u64 a = 1; a < p_; ++a) {
        if (coeff(a) == 0) continue;
        for (u64 b = 1; b < p_; ++b) {
            u64 ab = a * b % p_;
            r.set_coeff(ab, r.coeff(ab) + coeff(a) * o.coeff(b));
        }
    }
    return r;
}

bool GroupRingExact::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) {
        return v.get_den() == 1;
    });
}

u64 GroupRingExact::apply_character_mod(const Character& psi, unsigned prec) const {
    if (!is_integral())
        throw std::invalid_argument("character application needs an integral element");
    if (psi.p != p_) throw std::invalid_argument("character prime mismatch");
    u64 mod = pow_u64_checked(p_, prec, kMaxModulus - 1);
    auto teich = teichmuller_table(p_, prec);
    u64 s = 0;
    for (u64 a = 1; a < p_; ++a) {
        u64 ca = mpz_residue(coeff(a).get_num(), mod);
        s = addmod(s, mulmod(ca, powmod(teich[a], psi.k, mod), mod), mod);
    }
    return s;
}

// --------------------------------------------------------------- the log

PadicCyc padic_log(const PadicCyc& x) {
    const unsigned p = x.p();
    const unsigned M = x.prec();
    PiVal pv = x.pi_valuation();
    if (pv.lower_bound)
        throw std::invalid_argument("padic_log of zero at the working precision");
    const unsigned v = static_cast<unsigned>(pv.v);
    // x mod p^M only pins Log(x) mod pi^((p-1)M - v): a positive valuation
    // costs ceil(v/(p-1)) levels of output precision
    const unsigned out_loss = (v + p - 2) / (p - 1);
    if (out_loss + 1 > M)
        throw precision_error("padic_log: valuation consumes the whole precision");
    const unsigned M_out = M - out_loss;

    // working precision: final /p costs 1, /(-p)^v costs v, series divisions
    // cost at most max v_p(k) over the terms actually used
    unsigned W = M + v + 2;
    for (;;) {
        u64 kmax = static_cast<u64>(p - 1) * W;
        unsigned ls = 0;
        u64 pk = 1;
        while (pk <= kmax) { pk *= p; ++ls; }  // v_p(k) <= ls-1 for k <= kmax
        unsigned need = M + v + (ls > 0 ? ls - 1 : 0) + 1;
        if (need <= W) break;
        W = need;
    }
    if (W > PadicCyc::max_prec(p))
        throw precision_error("padic_log: precision envelope exceeded");

    PadicCyc lifted = x.with_prec(W);
    PadicCyc y = lifted.pow(p - 1);
    if (v > 0) {
        y = y.divide_exact_p(v);
        if (v % 2 == 1) y = -y;  // divide by (-p)^v
    }
    PadicCyc w = y.pow(static_cast<u64>(p - 1) * p);  // lands in U

    const unsigned wprec = w.prec();
    const u64 kmax = static_cast<u64>(p - 1) * W + p;
    PadicCyc one = PadicCyc::constant(p, wprec, 1);
    PadicCyc u = w - one;
    PadicCyc upow = u;
    PadicCyc acc(p, wprec);
    unsigned max_loss = 0;
    for (u64 k = 1; !upow.is_zero(); ++k) {
        if (k > kmax) throw identity_error("padic_log series failed to terminate");
        u64 kk = k;
        unsigned e = 0;
        while (kk % p == 0) { kk /= p; ++e; }
        PadicCyc term = upow;
        if (e > 0) {
            term = term.divide_exact_p(e).with_prec(wprec);
            max_loss = std::max(max_loss, e);
        }
        term = term.scalar_mul(invmod(kk % term.modulus(), term.modulus()));
        acc = (k % 2 == 1) ? acc + term : acc - term;
        upow = upow * u;
    }
    // Log(x) = series(w) / ((p-1)^2 p)
    PadicCyc res = acc.divide_exact_p(1).with_prec(wprec);
    max_loss += 1;
    u64 sq = mulmod(p - 1, p - 1, res.modulus());
    res = res.scalar_mul(invmod(sq, res.modulus()));
    if (wprec - max_loss < M_out)
        throw precision_error("padic_log: internal precision accounting failed");
    return res.with_prec(M_out);
}

GroupRingElt phi_map(const PadicCyc& x) {
    PadicCyc lg = padic_log(x);
    const unsigned p = x.p();
    const u64 mod = lg.modulus();
    GroupRingElt g(p, lg.prec());
    // solve sum_{a=1}^{p-1} c_a zeta^a = Log(x) on the basis zeta..zeta^{p-1}
    g.set_coeff(p - 1, submod(0, lg.coeff(0), mod));
    for (unsigned a = 1; a + 1 < p; ++a)
        g.set_coeff(a, submod(lg.coeff(a), lg.coeff(0), mod));
    return g;
}

Bernoulli1 bernoulli_b1(const Character& psi, unsigned prec) {
    const unsigned p = psi.p;
    if (!psi.is_odd()) throw std::invalid_argument("bernoulli_b1 needs an odd character");
    if (psi.k == p - 2)
        throw std::invalid_argument("bernoulli_b1 is not p-integral at omega^(p-2)");
    if (prec < 2) throw std::invalid_argument("need precision >= 2");
    u64 mod = pow_u64_checked(p, prec, kMaxModulus - 1);
    auto teich = teichmuller_table(p, prec);
    u64 s = 0;
    for (u64 a = 1; a < p; ++a)
        s = addmod(s, mulmod(a, powmod(teich[a], psi.k, mod), mod), mod);
    if (s % p != 0)
        throw identity_error("sum a omega^k(a) not divisible by p");
    Bernoulli1 b;
    b.prec = prec - 1;
    b.value = (s / p) % (mod / p);
    if (b.value == 0) {
        b.vp = b.prec;
        b.vp_lower_bound = true;
    } else {
        b.vp = vp_u64(b.value, p);
    }
    return b;
}

GroupRingExact theta(unsigned p) {
    GroupRingExact t(static_cast<unsigned>(p));
    for (u64 a = 1; a < p; ++a) {
        u64 ainv = invmod(a, p);
        // coefficient of sigma_t in (1/p) sum a sigma_a^{-1} is [t^{-1}]/p
        t.set_coeff(a, mpq_class(static_cast<unsigned long>(ainv),
                                 static_cast<unsigned long>(p)));
    }
    return t;
}

GroupRingExact z_elt(unsigned p) {
    GroupRingExact s(p);
    for (u64 n = 1; n + 1 < p; ++n) {
        mpq_class w(static_cast<unsigned long>(invmod(n, p)));  // [n^{-1}]
        s.set_coeff(1, s.coeff(1) + w);
        s.set_coeff(n, s.coeff(n) + w);
        s.set_coeff(n + 1, s.coeff(n + 1) - w);
    }
    GroupRingExact z(p);
    for (u64 a = 1; a < p; ++a) {
        // (1 - sigma_{-1}) s : coefficient of sigma_a is s_a - s_{-a}
        z.set_coeff(a, s.coeff(a) - s.coeff(p - a));
    }
    return z;
}

}  // namespace cycjac::cyc
