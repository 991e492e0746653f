#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "star/corpus.hpp"
#include "star/toy_lm.hpp"
#include "star/types.hpp"

namespace star {

enum class ProviderKind { replay, http, toy_lm };

std::string to_string(ProviderKind k);
ProviderKind provider_kind_from_string(const std::string& s);

// Handle to whatever computes log-probabilities. The model parameters live
// behind this binding; auth material is referenced by environment-variable
// name and never stored inline.
struct ProviderBinding {
    ProviderKind kind = ProviderKind::toy_lm;
    std::string endpoint;    // http only
    std::string model_id;    // opaque
    std::string auth_env;    // name of the env var holding a bearer token
    double logprob_floor = -745.0;
    std::size_t max_in_flight = 8;
    ToyLmSpec toy;           // toy_lm only
    std::string replay_path; // replay only (optional when corpus handed over directly)

    void validate() const;
    std::string to_json_string() const;            // secrets-free snapshot
    static ProviderBinding from_json_string(const std::string& text);
    static ProviderBinding from_json_file(const std::string& path);
};

struct ScoringRequest {
    std::string instruction;
    std::string user_input;
    std::vector<std::string> response_tokens;
    double temperature = 1.0;
    // Conditional stream cached at decode time; when present the scoring flow
    // performs no conditional-pass call.
    std::vector<double> cached_log_q;
};

struct ScoringResponse {
    std::vector<TokenRecord> records;
    std::uint64_t q_pass_calls = 0;
    std::uint64_t p_pass_calls = 0;
};

struct CallCounters {
    std::atomic<std::uint64_t> q_calls{0};
    std::atomic<std::uint64_t> p_calls{0};

    std::uint64_t q() const noexcept { return q_calls.load(std::memory_order_relaxed); }
    std::uint64_t p() const noexcept { return p_calls.load(std::memory_order_relaxed); }
    std::uint64_t total() const noexcept { return q() + p(); }
    void reset() noexcept {
        q_calls.store(0, std::memory_order_relaxed);
        p_calls.store(0, std::memory_order_relaxed);
    }
};

class Provider {
public:
    virtual ~Provider() = default;

    // One batched invocation per call; the conditional pass sees the full
    // input context, the unconditional pass sees only the prior tokens.
    virtual std::vector<double> score_conditional(const ScoringRequest& req) = 0;
    virtual std::vector<double> score_unconditional(const ScoringRequest& req) = 0;

    // Log-probabilities of a standalone token sequence (perplexity scoring
    // for the input-side baseline). Counts one unconditional-pass call.
    virtual std::vector<double> score_text_logprobs(std::span<const std::string> tokens,
                                                    double temperature) = 0;

    virtual ToyLm::Generated generate(const std::string& context, std::size_t length,
                                      double temperature, std::uint64_t seed);

    // Zips both streams into records, flooring non-finite or sub-floor values
    // and reusing the cached conditional stream when the request carries one.
    // The replay provider overrides this to return stored streams verbatim
    // with zero call counts.
    virtual ScoringResponse score_dual(const ScoringRequest& req);

    const CallCounters& counters() const noexcept { return counters_; }
    CallCounters& counters() noexcept { return counters_; }

protected:
    CallCounters counters_;
    double floor_ = -745.0;
};

std::shared_ptr<Provider> make_provider(const ProviderBinding& binding);

// Replay provider over an in-memory corpus (bypasses the file read).
std::shared_ptr<Provider> make_replay_provider(std::vector<LabeledSample> corpus,
                                               const ProviderBinding& binding);

} // namespace star
