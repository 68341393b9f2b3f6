#pragma once

#include <json.hpp>

#include <mutex>
#include <optional>
#include <string>

#include "cycjac/criteria.hpp"

namespace cycjac::cache {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Sorted keys, no whitespace; the byte form used for payload comparison.
std::string canonical_dump(const json& j);

// Everything a result depends on: p, ell, f, modulus and generator pin the
// character convention, so equal fingerprints imply byte-equal payloads.
json setup_fingerprint(const jacobi::PrimeSetup& s);

// ---- payload serializers (integers and decimal strings only, no floats)
json to_json(const cyc::CycInt& x);
json to_json(const cyc::PiVal& v);
json to_json(const curve::LPolynomial& L);
json to_json(const curve::JacobianReport& r);
json to_json(const criteria::ScanHit& h);
json to_json(const criteria::ScanStats& s);
json job_fingerprint(const criteria::ScanJob& job);
// deterministic scan payload: hits, reports, stats; runtime excluded
json scan_payload(const criteria::ScanResult& r);

// Append-only JSON-lines store: one record per line,
// {fingerprint, kind, payload, schema_version, timestamp}.
class Store {
  public:
    Store() = default;  // disabled
    explicit Store(std::string path) : path_(std::move(path)) {}

    bool enabled() const { return !path_.empty(); }
    const std::string& path() const { return path_; }

    std::optional<json> lookup(const std::string& kind,
                               const json& fingerprint) const;
    void append(const std::string& kind, const json& fingerprint,
                const json& payload) const;

  private:
    std::string path_;
    mutable std::mutex mu_;
};

}  // namespace cycjac::cache
