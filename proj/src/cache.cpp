#include "cycjac/cache.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

namespace cycjac::cache {

std::string canonical_dump(const json& j) {
    return j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::strict);
}

json setup_fingerprint(const jacobi::PrimeSetup& s) {
    return json{{"p", s.p},
                {"ell", s.ell},
                {"f", s.f},
                {"modulus", s.field.modulus},
                {"generator", s.r}};
}

json to_json(const cyc::CycInt& x) {
    json coeffs = json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
    return json{{"p", x.p()}, {"coeffs", coeffs}};
}

json to_json(const cyc::PiVal& v) {
    return json{{"v", v.v}, {"lower_bound", v.lower_bound}};
}

json to_json(const curve::LPolynomial& L) {
    json coeffs = json::array();
    for (const auto& c : L.coeffs) coeffs.push_back(c.get_str());
    return json{{"g", L.g}, {"q", L.q}, {"coeffs", coeffs}};
}

json to_json(const curve::JacobianReport& r) {
    json odd = json::object();
    for (const auto& [n, v] : r.odd_log_valuations)
        odd[std::to_string(n)] = to_json(v);
    json j{{"t", r.t},
           {"structure", r.structure},
           {"order_p_part", r.order_p_part.get_str()},
           {"odd_log_valuations", odd},
           {"outside_rank_dichotomy", r.outside_rank_dichotomy},
           {"lpoly_crosschecked", r.lpoly_crosschecked}};
    if (r.n_star)
        j["n_star"] = *r.n_star;
    else
        j["n_star"] = nullptr;
    return j;
}

json to_json(const criteria::ScanHit& h) {
    json j{{"prime", h.prime},
           {"f", h.f},
           {"t", h.t},
           {"structure", h.structure},
           {"verified", h.verified}};
    if (h.n_star)
        j["n_star"] = *h.n_star;
    else
        j["n_star"] = nullptr;
    return j;
}

json to_json(const criteria::ScanStats& s) {
    return json{{"tested", s.tested},
                {"filtered_even_order", s.filtered_even_order},
                {"filtered_ln_not_one", s.filtered_ln_not_one},
                {"skipped_resource", s.skipped_resource},
                {"undecided", s.undecided},
                {"spot_checked", s.spot_checked}};
}

json job_fingerprint(const criteria::ScanJob& job) {
    json j{{"mode", job.mode == criteria::ScanMode::FixP ? "fix-p" : "fix-ell"},
           {"a", job.a},
           {"min_prime", job.min_prime},
           {"max_prime", job.max_prime},
           {"prec", job.prec},
           {"q_limit", job.q_limit},
           {"stop_at_first", job.stop_at_first},
           {"verify_hits", job.verify_hits},
           {"spot_check_filtered", job.spot_check_filtered},
           {"seed", job.seed}};
    if (job.mode == criteria::ScanMode::FixP)
        j["p"] = job.p;
    else
        j["ell"] = job.ell;
    if (job.n)
        j["n"] = *job.n;
    else
        j["n"] = nullptr;
    return j;
}

json scan_payload(const criteria::ScanResult& r) {
    json hits = json::array(), reports = json::array();
    for (const auto& h : r.hits) hits.push_back(to_json(h));
    for (const auto& h : r.reports) reports.push_back(to_json(h));
    return json{{"hits", hits}, {"reports", reports}, {"stats", to_json(r.stats)}};
}

namespace {

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

std::optional<json> Store::lookup(const std::string& kind,
                                  const json& fingerprint) const {
    if (!enabled()) return std::nullopt;
    std::lock_guard<std::mutex> lock(mu_);
    std::ifstream in(path_);
    if (!in) return std::nullopt;
    const std::string want = canonical_dump(fingerprint);
    std::string line;
    std::optional<json> found;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded()) continue;  // tolerate torn trailing line
        if (rec.value("kind", "") != kind) continue;
        if (rec.value("schema_version", 0) != kSchemaVersion) continue;
        if (!rec.contains("fingerprint") ||
            canonical_dump(rec["fingerprint"]) != want)
            continue;
        found = rec["payload"];  // last record wins
    }
    return found;
}

void Store::append(const std::string& kind, const json& fingerprint,
                   const json& payload) const {
    if (!enabled()) return;
    std::lock_guard<std::mutex> lock(mu_);
    json rec{{"fingerprint", fingerprint},
             {"kind", kind},
             {"payload", payload},
             {"schema_version", kSchemaVersion},
             {"timestamp", timestamp_utc()}};
    std::string line = canonical_dump(rec);
    line.push_back('\n');
    // one write per record keeps lines atomic for concurrent readers
    std::FILE* fp = std::fopen(path_.c_str(), "ab");
    if (!fp) throw std::runtime_error("cannot open cache file: " + path_);
    std::fwrite(line.data(), 1, line.size(), fp);
    std::fclose(fp);
}

}  // namespace cycjac::cache
