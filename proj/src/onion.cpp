#include "star/onion.hpp"

#include <cmath>

#include "star/errors.hpp"

namespace star {

namespace {

double perplexity(const std::vector<double>& logprobs) {
    double total = 0.0;
    for (double lp : logprobs) total += lp;
    return std::exp(-total / static_cast<double>(logprobs.size()));
}

} // namespace

std::vector<double> onion_scores(std::span<const std::string> tokens, Provider& provider,
                                 double temperature) {
    if (tokens.size() < 2) {
        throw error(errc::empty_input, "leave-one-out scoring needs at least 2 tokens");
    }

    const double full_ppl = perplexity(provider.score_text_logprobs(tokens, temperature));

    std::vector<double> scores(tokens.size());
    std::vector<std::string> reduced(tokens.begin(), tokens.end());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(i));
        try {
            scores[i] = full_ppl - perplexity(provider.score_text_logprobs(reduced, temperature));
        } catch (const error& e) {
            throw error(e.code(),
                        "leave-one-out pass failed at token " + std::to_string(i) + ": " +
                            e.what(),
                        i);
        }
        reduced.insert(reduced.begin() + static_cast<std::ptrdiff_t>(i), tokens[i]);
    }
    return scores;
}

OnionVerdict onion_verdict_from_scores(std::span<const double> raw, const OnionConfig& config) {
    if (raw.empty()) throw error(errc::empty_input, "no scores to threshold");

    OnionVerdict v;
    v.raw.assign(raw.begin(), raw.end());
    v.normalized.assign(raw.size(), 0.0);
    v.token_flags.assign(raw.size(), false);

    double mean = 0.0;
    for (double f : raw) mean += f;
    mean /= static_cast<double>(raw.size());
    double var = 0.0;
    for (double f : raw) var += (f - mean) * (f - mean);
    var /= static_cast<double>(raw.size());
    const double sd = std::sqrt(var);

    if (sd > 0.0) {
        for (std::size_t i = 0; i < raw.size(); ++i) {
            v.normalized[i] = (raw[i] - mean) / sd;
            v.token_flags[i] = v.normalized[i] > config.outlier_k;
        }
    }
    // Degenerate spread leaves everything at zero and nothing flagged.

    v.decision_score = v.normalized[0];
    for (double z : v.normalized) v.decision_score = std::max(v.decision_score, z);
    for (bool f : v.token_flags) v.flagged = v.flagged || f;
    return v;
}

OnionVerdict onion_detect(std::span<const std::string> tokens, const OnionConfig& config,
                          Provider& provider, double temperature) {
    return onion_verdict_from_scores(onion_scores(tokens, provider, temperature), config);
}

} // namespace star
