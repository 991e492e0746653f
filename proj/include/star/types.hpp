#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace star {

// One generated token with its two log-probabilities: log_q conditions on the
// full input, log_p conditions on the prior reasoning tokens only. Both are
// natural logs, finite and <= 0.
struct TokenRecord {
    std::size_t index = 0;
    std::string text;
    double log_q = 0.0;
    double log_p = 0.0;
};

// All detector hyperparameters. The boolean switches exist for the two
// ablations: use_cusum = false scores by the max instantaneous evidence after
// warmup, use_warmup = false treats the burn-in period as zero.
struct DetectorConfig {
    double drift_k = 2.0;
    double threshold_tau = 8.5;
    std::size_t warmup = 10;
    double epsilon = 1e-10;
    bool use_cusum = true;
    bool use_warmup = true;

    std::size_t effective_warmup() const noexcept { return use_warmup ? warmup : 0; }

    // Throws error(invalid_config) on out-of-range values.
    void validate() const;
};

struct Verdict {
    bool flagged = false;
    double decision_score = 0.0;
    std::optional<std::size_t> first_crossing;
};

// Full per-sequence detector output: evidence holds s_t for every token
// (including burn-in tokens, for visualization), cusum holds g_t.
struct SuspicionTrace {
    std::vector<double> evidence;
    std::vector<double> cusum;
    double decision_score = 0.0;
    std::optional<std::size_t> first_crossing;
    bool flagged = false;

    Verdict verdict() const { return Verdict{flagged, decision_score, first_crossing}; }
};

} // namespace star
