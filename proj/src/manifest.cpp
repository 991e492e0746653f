#include "star/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "star/errors.hpp"
#include "star/toy_lm.hpp"

namespace star {

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot hash missing file: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json_string() const {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["seed"] = seed;
    j["corpus_path"] = corpus_path;
    j["corpus_hash"] = corpus_hash;
    j["detector"] = {
        {"k", detector.drift_k},       {"tau", detector.threshold_tau},
        {"warmup", detector.warmup},   {"epsilon", detector.epsilon},
        {"cusum", detector.use_cusum}, {"use_warmup", detector.use_warmup},
    };
    j["onion"] = {{"outlier_k", onion.outlier_k}};
    if (!provider.empty()) j["provider"] = nlohmann::json::parse(provider);
    j["created_utc"] = created_utc;
    return j.dump(2);
}

} // namespace star
