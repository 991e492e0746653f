#pragma once

#include <cstdint>
#include <string>

#include "star/onion.hpp"
#include "star/provider.hpp"
#include "star/types.hpp"

namespace star {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility envelope recorded next to evaluation outputs: everything
// needed to re-run (given the same provider data) except wall-clock times.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string command;
    std::uint64_t seed = 0;
    std::string corpus_path;
    std::string corpus_hash; // fnv1a-64 over the input bytes, hex
    DetectorConfig detector;
    OnionConfig onion;
    std::string provider; // secrets-free binding snapshot, empty when replayed
    std::string created_utc;

    std::string to_json_string() const;
};

// Hex fnv1a-64 of a file's bytes.
std::string hash_file(const std::string& path);

std::string utc_timestamp();

} // namespace star
