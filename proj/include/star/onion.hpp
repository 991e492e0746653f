#pragma once

#include <span>
#include <string>
#include <vector>

#include "star/provider.hpp"

namespace star {

struct OnionConfig {
    double outlier_k = 1.5; // z-score threshold on the normalized scores
};

// Leave-one-out perplexity deltas over the input tokens:
//   f_i = PPL(full) - PPL(without token i)
// Costs n + 1 provider scoring calls for n tokens.
std::vector<double> onion_scores(std::span<const std::string> tokens, Provider& provider,
                                 double temperature = 1.0);

struct OnionVerdict {
    std::vector<double> raw;        // f_i
    std::vector<double> normalized; // z-scores (all zero when the spread is zero)
    std::vector<bool> token_flags;  // normalized > outlier_k
    double decision_score = 0.0;    // max normalized score, shared metrics scale
    bool flagged = false;
};

OnionVerdict onion_detect(std::span<const std::string> tokens, const OnionConfig& config,
                          Provider& provider, double temperature = 1.0);

// Same thresholding applied to precomputed scores (replayed dumps).
OnionVerdict onion_verdict_from_scores(std::span<const double> raw, const OnionConfig& config);

} // namespace star
