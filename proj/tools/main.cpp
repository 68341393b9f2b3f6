#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "cycjac/cache.hpp"

using namespace cycjac;
using cache::json;
using cache::Store;
using criteria::ScanJob;
using criteria::ScanMode;
using cyc::Character;
using jacobi::PrimeSetup;

namespace {

struct GlobalOpts {
    unsigned precision = 8;
    unsigned ell_precision = 0;  // 0: use p + 2
    u64 q_limit = 10'000'000;
    unsigned jobs = 1;
    u64 seed = 0;
    std::string cache_path;
    bool table = false;
};

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

void emit(const GlobalOpts& g, const json& doc) {
    if (!g.table) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    // flat key: value rendering for terminals
    for (auto& [k, v] : doc.items())
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                  << "\n";
}

json checks_json(const std::vector<Check>& checks) {
    json arr = json::array();
    for (auto& c : checks)
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return arr;
}

unsigned ell_prec(const GlobalOpts& g, unsigned p) {
    return g.ell_precision ? g.ell_precision : p + 2;
}

// requested precision, clamped to the uint64 modulus envelope for this p
unsigned padic_prec(const GlobalOpts& g, unsigned p, unsigned floor_prec = 2) {
    u64 cap = cyc::PadicCyc::max_prec(p);
    u64 top = cap > 2 ? cap - 2 : floor_prec;
    return static_cast<unsigned>(
        std::max<u64>(floor_prec, std::min<u64>(g.precision, top)));
}

// ---------------------------------------------------------------- commands

int cmd_jacobi(const GlobalOpts& g, unsigned p, u64 ell, unsigned a, unsigned b) {
    Store store(g.cache_path);
    auto s = PrimeSetup::make(p, ell, g.q_limit);
    json fp{{"setup", cache::setup_fingerprint(s)},
            {"a", a},
            {"b", b},
            {"precision", g.precision}};
    bool cached = false;
    json payload;
    if (auto hit = store.lookup("jacobi", fp)) {
        payload = *hit;
        cached = true;
    } else {
        cyc::CycInt j = jacobi::jacobi_sum(s, a, b);
        unsigned prec = padic_prec(g, p);
        cyc::PadicCyc jm1 = cyc::PadicCyc::from_cyc(j, prec) -
                            cyc::PadicCyc::constant(p, prec, 1);
        payload = {{"a", a},
                   {"b", b},
                   {"value", cache::to_json(j)},
                   {"norm", j.norm().get_str()},
                   {"vpi_j_minus_1", cache::to_json(jm1.pi_valuation())}};
        store.append("jacobi", fp, payload);
    }
    json doc{{"kind", "jacobi"},
             {"fingerprint", fp},
             {"payload", payload},
             {"cached", cached}};
    emit(g, doc);
    return 0;
}

std::vector<Check> suite_identities(const PrimeSetup& s) {
    const unsigned p = s.p;
    std::vector<Check> out;
    mpz_class q(static_cast<unsigned long>(s.field.q));
    out.push_back({"special-a-plus-b-zero",
                   jacobi::jacobi_sum(s, 1, p - 1) == cyc::CycInt::integer(p, 1),
                   "j_{1,p-1} = 1"});
    out.push_back({"special-both-zero",
                   jacobi::jacobi_sum(s, 0, 0) == cyc::CycInt::integer(p, 2 - q),
                   "j_{0,0} = 2 - q"});
    bool refl = true;
    for (u64 n = 2; n + 1 < p; ++n)
        refl = refl && jacobi::jacobi_sum(s, 1, p - n) == jacobi::jacobi_sum(s, 1, n - 1);
    out.push_back({"reflection", refl, "j_{1,p-n} = j_{1,n-1}"});
    bool conj = true, magn = true, unitc = true;
    for (u64 a = 1; a + 1 < p; ++a) {
        cyc::CycInt j = jacobi::jacobi_sum(s, 1, a);
        for (u64 t = 1; t < p; ++t)
            conj = conj && j.galois(t) == jacobi::jacobi_sum(s, t, t * a % p);
        magn = magn && j * j.galois(p - 1) == cyc::CycInt::integer(p, q);
        auto v = (cyc::PadicCyc::from_cyc(j, 6) -
                  cyc::PadicCyc::constant(p, 6, 1))
                     .pi_valuation();
        unitc = unitc && (v.lower_bound || v.v >= 2);
    }
    out.push_back({"conjugation", conj, "galois(j_{1,a}, t) = j_{t,ta}"});
    out.push_back({"magnitude", magn, "j sigma_{-1}(j) = q"});
    out.push_back({"unit-congruence", unitc, "v_pi(j - 1) >= 2"});
    return out;
}

std::vector<Check> suite_stickelberger(const PrimeSetup& s, unsigned mell) {
    const unsigned p = s.p;
    std::vector<Check> out;
    auto exps = jacobi::stickelberger_exponents(s, mell);
    bool keyed = true;
    long long total = 0;
    for (auto [a, e] : exps) {
        keyed = keyed && e == a;
        total += e;
    }
    out.push_back({"exponent-vector", keyed, "sigma_a^{-1}(P) carries exponent a"});
    out.push_back({"exponent-sum",
                   total == static_cast<long long>(p) * (p - 1) / 2,
                   "sum = p(p-1)/2"});
    bool beta = false;
    try {
        beta = jacobi::beta_eta_identity(p, &s);
    } catch (const identity_error&) {
    }
    out.push_back({"beta-eta", beta, "beta(eta) = z theta, symbolic + ell-adic"});
    return out;
}

std::vector<Check> suite_lpoly(const PrimeSetup& s, const GlobalOpts& g) {
    const unsigned p = s.p;
    const unsigned gnum = (p - 1) / 2;
    std::vector<Check> out;
    for (unsigned a = 1; a + 1 < p; ++a) {
        bool equal = false, consistent = false;
        try {
            curve::QuotientCurve c = curve::QuotientCurve::make(p, a, s.field);
            std::vector<u64> counts;
            for (unsigned m = 1; m <= gnum; ++m)
                counts.push_back(curve::count_points(c, m, g.q_limit));
            equal = curve::lpoly_from_counts(gnum, s.field.q, counts) ==
                    curve::lpoly_from_jacobi(s, a);
            consistent =
                criteria::structure_adaptive(s, a, g.precision, true, g.q_limit)
                    .lpoly_crosschecked;
        } catch (const identity_error&) {
        }
        out.push_back({"lpoly-equal-a" + std::to_string(a), equal,
                       "counts vs conjugate product"});
        out.push_back({"l1-valuation-a" + std::to_string(a), consistent,
                       "v_p(L(1)) = v_pi(j-1)"});
    }
    return out;
}

std::vector<Check> suite_uehara(const PrimeSetup& s, const GlobalOpts& g) {
    std::vector<Check> out;
    for (unsigned k = 3; k + 1 < s.p; k += 2) {
        auto r = criteria::uehara_check(s, k, g.precision);
        out.push_back({"log-vs-index-k" + std::to_string(k), r.equal,
                       "lhs " + std::to_string(r.lhs) + " rhs " +
                           std::to_string(r.rhs) +
                           (r.experimental ? " (experimental: f > 1)" : "")});
    }
    return out;
}

std::vector<Check> suite_congruences(unsigned p, const GlobalOpts& g) {
    std::vector<Check> out;
    const unsigned prec = padic_prec(g, p);
    for (unsigned k = 3; k + 1 < p; k += 2) {
        auto c = jacobi::congruence_sums(p, k, prec);
        out.push_back({"s" + std::to_string(k), c.residue == k,
                       "S_k = " + std::to_string(c.residue) + " mod p"});
    }
    auto c1 = jacobi::congruence_sums(p, 1, prec);
    out.push_back({"s1-over-p-unit", c1.residue != 0,
                   "S_1/p = " + std::to_string(c1.residue) + " mod p"});
    return out;
}

std::vector<Check> suite_index(unsigned p, const GlobalOpts& g) {
    std::vector<Check> out;
    bool unit = false;
    u64 value = 0;
    try {
        auto r = jacobi::eta_index(p, padic_prec(g, p));
        unit = r.vp == 0;
        value = r.value;
    } catch (const identity_error&) {
    }
    out.push_back({"eta-index-unit", unit,
                   "index = " + std::to_string(value) + " (v_p = 0 required)"});
    return out;
}

int cmd_verify(const GlobalOpts& g, unsigned p, u64 ell, const std::string& suite) {
    std::vector<Check> checks;
    if (suite == "congruences") {
        checks = suite_congruences(p, g);
    } else if (suite == "index") {
        checks = suite_index(p, g);
    } else {
        if (ell == 0)
            throw std::invalid_argument("this suite needs --ell");
        auto s = PrimeSetup::make(p, ell, g.q_limit);
        if (suite == "identities")
            checks = suite_identities(s);
        else if (suite == "stickelberger")
            checks = suite_stickelberger(s, ell_prec(g, p));
        else if (suite == "lpoly")
            checks = suite_lpoly(s, g);
        else if (suite == "uehara")
            checks = suite_uehara(s, g);
        else
            throw std::invalid_argument("unknown suite: " + suite);
    }
    bool pass = true;
    for (auto& c : checks) pass = pass && c.pass;
    json doc{{"kind", "verify"},
             {"suite", suite},
             {"p", p},
             {"checks", checks_json(checks)},
             {"pass", pass}};
    if (ell) doc["ell"] = ell;
    if (g.table) {
        for (auto& c : checks)
            std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << " — "
                      << c.detail << "\n";
        std::cout << (pass ? "all checks passed" : "CHECKS FAILED") << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}

int cmd_structure(const GlobalOpts& g, unsigned p, u64 ell, unsigned a,
                  bool crosscheck) {
    Store store(g.cache_path);
    auto s = PrimeSetup::make(p, ell, g.q_limit);
    json fp{{"setup", cache::setup_fingerprint(s)},
            {"a", a},
            {"precision", g.precision},
            {"crosscheck", crosscheck}};
    bool cached = false;
    json payload;
    if (auto hit = store.lookup("structure", fp)) {
        payload = *hit;
        cached = true;
    } else {
        curve::JacobianReport rep =
            criteria::structure_adaptive(s, a, g.precision, crosscheck, g.q_limit);
        payload = cache::to_json(rep);
        store.append("structure", fp, payload);
        if (crosscheck && rep.lpoly_crosschecked) {
            json lfp{{"setup", cache::setup_fingerprint(s)}, {"a", a}};
            if (!store.lookup("lpoly", lfp))
                store.append("lpoly", lfp,
                             cache::to_json(curve::lpoly_from_jacobi(s, a)));
        }
    }
    json doc{{"kind", "structure"},
             {"fingerprint", fp},
             {"payload", payload},
             {"cached", cached}};
    emit(g, doc);
    return 0;
}

int cmd_scan(const GlobalOpts& g, const ScanJob& job) {
    Store store(g.cache_path);
    json fp = cache::job_fingerprint(job);
    bool cached = false;
    json payload;
    u64 runtime = 0;
    if (auto hit = store.lookup("scan", fp)) {
        payload = *hit;
        cached = true;
    } else {
        criteria::ScanResult res = job.mode == ScanMode::FixP
                                       ? criteria::scan_fix_p(job)
                                       : criteria::scan_fix_ell(job);
        payload = cache::scan_payload(res);
        runtime = res.runtime_ms;
        store.append("scan", fp, payload);
    }
    json doc{{"kind", "scan"},
             {"fingerprint", fp},
             {"payload", payload},
             {"runtime_ms", runtime},
             {"cached", cached}};
    emit(g, doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclotomic Jacobi-sum toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    if (const char* env = std::getenv("CYCJAC_CACHE")) g.cache_path = env;
    app.add_option("--precision", g.precision, "p-adic working precision M")
        ->check(CLI::Range(4u, 40u))
        ->capture_default_str();
    app.add_option("--ell-precision", g.ell_precision,
                   "ell-adic working precision (default p+2)");
    app.add_option("--q-limit", g.q_limit, "largest residue field handled")
        ->capture_default_str();
    app.add_option("--jobs", g.jobs, "parallel workers for scans")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for sampled re-verification");
    app.add_option("--cache", g.cache_path,
                   "JSON-lines result cache (env CYCJAC_CACHE)");
    bool json_out = false;
    app.add_flag("--json", json_out, "JSON output (default)");
    app.add_flag("--table", g.table, "human-readable output");

    unsigned p = 0, a = 1, b = 1, n = 0;
    u64 ell = 0, max_ell = 0, max_p = 0, min_ell = 0, min_p = 0, fix_p = 0,
        fix_ell = 0;
    std::string suite;
    bool no_crosscheck = false, stop_at_first = false, spot_check = false,
         no_verify_hits = false;

    auto* cj = app.add_subcommand("jacobi", "compute j_{a,b}(P) exactly");
    cj->add_option("--p", p, "the cyclotomic prime p")->required();
    cj->add_option("--ell", ell, "the residue prime ell")->required();
    cj->add_option("--a", a, "first character exponent")->required();
    cj->add_option("--b", b, "second character exponent")->required();

    auto* cv = app.add_subcommand("verify", "run an identity suite");
    cv->add_option("--p", p, "the cyclotomic prime p")->required();
    cv->add_option("--ell", ell, "the residue prime ell (suite-dependent)");
    cv->add_option("--suite", suite,
                   "identities|stickelberger|lpoly|uehara|congruences|index")
        ->required();

    auto* cs = app.add_subcommand("structure", "Jacobian p-part structure");
    cs->add_option("--p", p, "the cyclotomic prime p")->required();
    cs->add_option("--ell", ell, "the residue prime ell")->required();
    cs->add_option("--a", a, "quotient index a")->capture_default_str();
    cs->add_flag("--no-crosscheck", no_crosscheck,
                 "skip the point-counting cross-check");

    auto* csc = app.add_subcommand("scan", "scan primes for rank patterns");
    csc->add_option("--fix-p", fix_p, "fix p, scan ell");
    csc->add_option("--fix-ell", fix_ell, "fix ell, scan p (a = 1 family)");
    csc->add_option("--n", n, "target odd rank n");
    csc->add_option("--a", a, "quotient index a (fix-p mode)")
        ->capture_default_str();
    csc->add_option("--max-ell", max_ell, "upper bound for ell");
    csc->add_option("--min-ell", min_ell, "lower bound for ell");
    csc->add_option("--max-p", max_p, "upper bound for p");
    csc->add_option("--min-p", min_p, "lower bound for p");
    csc->add_flag("--stop-at-first", stop_at_first, "stop at the first hit");
    csc->add_flag("--spot-check-filtered", spot_check,
                  "re-verify a seeded sample of filtered primes");
    csc->add_flag("--no-verify-hits", no_verify_hits,
                  "skip point-count verification of hits");

    CLI11_PARSE(app, argc, argv);
    if (json_out) g.table = false;  // --json wins when both are given

    try {
        if (cj->parsed()) return cmd_jacobi(g, p, ell, a, b);
        if (cv->parsed()) return cmd_verify(g, p, ell, suite);
        if (cs->parsed()) return cmd_structure(g, p, ell, a, !no_crosscheck);
        if (csc->parsed()) {
            ScanJob job;
            job.a = a;
            job.prec = g.precision;
            job.q_limit = g.q_limit;
            job.jobs = g.jobs;
            job.seed = g.seed;
            job.stop_at_first = stop_at_first;
            job.spot_check_filtered = spot_check;
            job.verify_hits = !no_verify_hits;
            if (n) job.n = n;
            if (fix_p && !fix_ell) {
                job.mode = ScanMode::FixP;
                job.p = static_cast<unsigned>(fix_p);
                job.min_prime = min_ell;
                if (!max_ell) throw std::invalid_argument("--max-ell required");
                job.max_prime = max_ell;
            } else if (fix_ell && !fix_p) {
                job.mode = ScanMode::FixEll;
                job.ell = fix_ell;
                job.min_prime = min_p;
                if (!max_p) throw std::invalid_argument("--max-p required");
                job.max_prime = max_p;
            } else {
                throw std::invalid_argument("use exactly one of --fix-p/--fix-ell");
            }
            return cmd_scan(g, job);
        }
    } catch (const identity_error& e) {
        std::cerr << json{{"error", {{"type", "identity"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 1;
    } catch (const precision_error& e) {
        std::cerr << json{{"error",
                           {{"type", "precision"},
                            {"message", std::string(e.what()) +
                                            " (undecided at precision " +
                                            std::to_string(g.precision) + ")"}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const limit_error& e) {
        std::cerr << json{{"error", {{"type", "resource"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    }
    return 0;
}
