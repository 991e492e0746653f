#include "star/provider.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <semaphore>
#include <unordered_map>

#include <httplib.h>
#include <json.hpp>

#include "star/errors.hpp"

namespace star {

using nlohmann::json;

std::string to_string(ProviderKind k) {
    switch (k) {
        case ProviderKind::replay: return "replay";
        case ProviderKind::http: return "http";
        case ProviderKind::toy_lm: return "toy_lm";
    }
    return "toy_lm";
}

ProviderKind provider_kind_from_string(const std::string& s) {
    if (s == "replay") return ProviderKind::replay;
    if (s == "http") return ProviderKind::http;
    if (s == "toy_lm" || s == "toy") return ProviderKind::toy_lm;
    throw error(errc::invalid_config, "unknown provider kind: " + s);
}

void ProviderBinding::validate() const {
    if (kind == ProviderKind::http && endpoint.empty())
        throw error(errc::invalid_config, "http provider requires an endpoint");
    if (kind != ProviderKind::http && !endpoint.empty())
        throw error(errc::invalid_config, "endpoint is only valid for http providers");
    if (!std::isfinite(logprob_floor) || logprob_floor >= 0.0)
        throw error(errc::invalid_config, "logprob_floor must be finite and negative");
    if (max_in_flight == 0)
        throw error(errc::invalid_config, "max_in_flight must be >= 1");
}

namespace {

json toy_spec_to_json(const ToyLmSpec& s) {
    json j;
    j["vocab_size"] = s.vocab_size;
    j["chain_seed"] = s.chain_seed;
    j["uniform"] = s.uniform;
    j["unigram"] = s.unigram;
    j["rare_mass"] = s.rare_mass;
    j["oov_mass"] = s.oov_mass;
    j["trigger"] = s.trigger;
    j["trigger_gain"] = s.trigger_gain;
    j["early_window"] = s.early_window;
    j["early_gain_max"] = s.early_gain_max;
    j["early_burst_prob"] = s.early_burst_prob;
    if (!s.vocab.empty()) j["vocab"] = s.vocab;
    return j;
}

ToyLmSpec toy_spec_from_json(const json& j) {
    ToyLmSpec s;
    s.vocab_size = j.value("vocab_size", s.vocab_size);
    s.chain_seed = j.value("chain_seed", s.chain_seed);
    s.uniform = j.value("uniform", s.uniform);
    s.unigram = j.value("unigram", s.unigram);
    s.rare_mass = j.value("rare_mass", s.rare_mass);
    s.oov_mass = j.value("oov_mass", s.oov_mass);
    s.trigger = j.value("trigger", s.trigger);
    s.trigger_gain = j.value("trigger_gain", s.trigger_gain);
    s.early_window = j.value("early_window", s.early_window);
    s.early_gain_max = j.value("early_gain_max", s.early_gain_max);
    s.early_burst_prob = j.value("early_burst_prob", s.early_burst_prob);
    if (j.contains("vocab")) s.vocab = j["vocab"].get<std::vector<std::string>>();
    return s;
}

} // namespace

std::string ProviderBinding::to_json_string() const {
    json j;
    j["kind"] = to_string(kind);
    if (kind == ProviderKind::http) {
        j["endpoint"] = endpoint;
        if (!auth_env.empty()) j["auth_env"] = auth_env; // env var name, never the value
    }
    if (!model_id.empty()) j["model_id"] = model_id;
    j["logprob_floor"] = logprob_floor;
    j["max_in_flight"] = max_in_flight;
    if (kind == ProviderKind::toy_lm) j["toy"] = toy_spec_to_json(toy);
    if (kind == ProviderKind::replay && !replay_path.empty()) j["replay_path"] = replay_path;
    return j.dump();
}

ProviderBinding ProviderBinding::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw error(errc::invalid_config, std::string("provider config: ") + e.what());
    }
    ProviderBinding b;
    b.kind = provider_kind_from_string(j.value("kind", std::string("toy_lm")));
    b.endpoint = j.value("endpoint", std::string{});
    b.model_id = j.value("model_id", std::string{});
    b.auth_env = j.value("auth_env", std::string{});
    b.logprob_floor = j.value("logprob_floor", b.logprob_floor);
    b.max_in_flight = j.value("max_in_flight", b.max_in_flight);
    if (j.contains("toy")) b.toy = toy_spec_from_json(j["toy"]);
    b.replay_path = j.value("replay_path", std::string{});
    b.validate();
    return b;
}

ProviderBinding ProviderBinding::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open provider config: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_string(text);
}

ToyLm::Generated Provider::generate(const std::string&, std::size_t, double, std::uint64_t) {
    throw error(errc::unsupported_operation, "this provider cannot generate");
}

namespace {

double floor_logprob(double v, double floor) {
    if (!std::isfinite(v) || v < floor) return floor;
    return v;
}

void check_request(const ScoringRequest& req) {
    if (req.response_tokens.empty())
        throw error(errc::empty_input, "scoring request has no response tokens");
    if (!(req.temperature > 0.0) || !std::isfinite(req.temperature))
        throw error(errc::invalid_config, "temperature must be finite and > 0");
}

} // namespace

ScoringResponse Provider::score_dual(const ScoringRequest& req) {
    check_request(req);
    ScoringResponse resp;

    std::vector<double> log_q;
    if (!req.cached_log_q.empty()) {
        if (req.cached_log_q.size() != req.response_tokens.size()) {
            throw error(errc::alignment_mismatch,
                        "cached conditional stream length differs from token count",
                        std::min(req.cached_log_q.size(), req.response_tokens.size()));
        }
        log_q = req.cached_log_q;
    } else {
        log_q = score_conditional(req);
        resp.q_pass_calls = 1;
    }

    std::vector<double> log_p = score_unconditional(req);
    resp.p_pass_calls = 1;

    if (log_q.size() != req.response_tokens.size() || log_p.size() != req.response_tokens.size()) {
        throw error(errc::alignment_mismatch, "provider returned misaligned streams",
                    std::min(log_q.size(), log_p.size()));
    }

    resp.records.reserve(req.response_tokens.size());
    for (std::size_t i = 0; i < req.response_tokens.size(); ++i) {
        resp.records.push_back(TokenRecord{i, req.response_tokens[i],
                                           floor_logprob(log_q[i], floor_),
                                           floor_logprob(log_p[i], floor_)});
    }
    return resp;
}

// ---------------------------------------------------------------------------
// Toy provider

namespace {

class ToyProvider final : public Provider {
public:
    explicit ToyProvider(const ProviderBinding& binding)
        : binding_(binding), lm_(binding.toy) {
        floor_ = binding.logprob_floor;
    }

    std::vector<double> score_conditional(const ScoringRequest& req) override {
        check_request(req);
        counters_.q_calls.fetch_add(1, std::memory_order_relaxed);
        return lm_.score_conditional(full_context(req), req.response_tokens, req.temperature);
    }

    std::vector<double> score_unconditional(const ScoringRequest& req) override {
        check_request(req);
        counters_.p_calls.fetch_add(1, std::memory_order_relaxed);
        return lm_.score_unconditional(req.response_tokens, req.temperature);
    }

    std::vector<double> score_text_logprobs(std::span<const std::string> tokens,
                                            double temperature) override {
        counters_.p_calls.fetch_add(1, std::memory_order_relaxed);
        return lm_.score_unconditional(tokens, temperature);
    }

    ToyLm::Generated generate(const std::string& context, std::size_t length, double temperature,
                              std::uint64_t seed) override {
        return lm_.generate(context, length, temperature, seed);
    }

    const ToyLm& lm() const { return lm_; }

private:
    static std::string full_context(const ScoringRequest& req) {
        if (req.instruction.empty()) return req.user_input;
        return req.instruction + "\n" + req.user_input;
    }

    ProviderBinding binding_;
    ToyLm lm_;
};

// ---------------------------------------------------------------------------
// Replay provider

class ReplayProvider final : public Provider {
public:
    ReplayProvider(std::vector<LabeledSample> corpus, const ProviderBinding& binding)
        : binding_(binding), corpus_(std::move(corpus)) {
        floor_ = binding.logprob_floor;
        for (std::size_t i = 0; i < corpus_.size(); ++i) {
            index_.emplace(key(corpus_[i].instruction, corpus_[i].user_input), i);
        }
    }

    std::vector<double> score_conditional(const ScoringRequest& req) override {
        return lookup(req).log_q;
    }

    std::vector<double> score_unconditional(const ScoringRequest& req) override {
        return lookup(req).log_p;
    }

    std::vector<double> score_text_logprobs(std::span<const std::string>, double) override {
        throw error(errc::unsupported_operation,
                    "replay provider cannot score arbitrary text");
    }

    ScoringResponse score_dual(const ScoringRequest& req) override {
        // Replay carries both streams; no provider invocations happen.
        check_request(req);
        const LabeledSample& s = lookup(req);
        ScoringResponse resp;
        resp.records.reserve(s.tokens.size());
        for (std::size_t i = 0; i < s.tokens.size(); ++i) {
            resp.records.push_back(TokenRecord{i, s.tokens[i], s.log_q[i], s.log_p[i]});
        }
        return resp;
    }

private:
    static std::string key(const std::string& instruction, const std::string& user_input) {
        return instruction + "\x1f" + user_input;
    }

    const LabeledSample& lookup(const ScoringRequest& req) const {
        auto it = index_.find(key(req.instruction, req.user_input));
        if (it == index_.end()) {
            throw error(errc::not_found, "no replay sample matches the request context");
        }
        const LabeledSample& s = corpus_[it->second];
        const std::size_t n = std::min(s.tokens.size(), req.response_tokens.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (s.tokens[i] != req.response_tokens[i]) {
                throw error(errc::alignment_mismatch,
                            "replayed tokens diverge at index " + std::to_string(i), i);
            }
        }
        if (s.tokens.size() != req.response_tokens.size()) {
            throw error(errc::alignment_mismatch,
                        "replayed token count differs at index " + std::to_string(n), n);
        }
        return s;
    }

    ProviderBinding binding_;
    std::vector<LabeledSample> corpus_;
    std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// HTTP provider

class HttpProvider final : public Provider {
public:
    explicit HttpProvider(const ProviderBinding& binding)
        : binding_(binding),
          gate_(static_cast<std::ptrdiff_t>(binding.max_in_flight)) {
        floor_ = binding.logprob_floor;
        split_endpoint(binding_.endpoint, base_, path_prefix_);
    }

    std::vector<double> score_conditional(const ScoringRequest& req) override {
        check_request(req);
        counters_.q_calls.fetch_add(1, std::memory_order_relaxed);
        return post_score(full_context(req), req.response_tokens, req.temperature);
    }

    std::vector<double> score_unconditional(const ScoringRequest& req) override {
        check_request(req);
        counters_.p_calls.fetch_add(1, std::memory_order_relaxed);
        return post_score(std::string{}, req.response_tokens, req.temperature);
    }

    std::vector<double> score_text_logprobs(std::span<const std::string> tokens,
                                            double temperature) override {
        counters_.p_calls.fetch_add(1, std::memory_order_relaxed);
        return post_score(std::string{}, tokens, temperature);
    }

private:
    static std::string full_context(const ScoringRequest& req) {
        if (req.instruction.empty()) return req.user_input;
        return req.instruction + "\n" + req.user_input;
    }

    static void split_endpoint(const std::string& endpoint, std::string& base,
                               std::string& path) {
        const auto scheme = endpoint.find("://");
        const std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
        const auto slash = endpoint.find('/', host_start);
        if (slash == std::string::npos) {
            base = endpoint;
            path.clear();
        } else {
            base = endpoint.substr(0, slash);
            path = endpoint.substr(slash);
            while (!path.empty() && path.back() == '/') path.pop_back();
        }
    }

    std::vector<double> post_score(const std::string& context,
                                   std::span<const std::string> tokens, double temperature) {
        gate_.acquire();
        struct Release {
            std::counting_semaphore<>& g;
            ~Release() { g.release(); }
        } release{gate_};

        json body;
        body["context"] = context;
        body["continuation_tokens"] = std::vector<std::string>(tokens.begin(), tokens.end());
        body["temperature"] = temperature;

        httplib::Client client(base_);
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(60, 0);
        httplib::Headers headers;
        if (!binding_.auth_env.empty()) {
            if (const char* token = std::getenv(binding_.auth_env.c_str())) {
                headers.emplace("Authorization", std::string("Bearer ") + token);
            }
        }
        auto res = client.Post(path_prefix_ + "/score", headers, body.dump(),
                               "application/json");
        if (!res) {
            throw error::transport_error("scoring endpoint unreachable: " + base_,
                                         0, /*retryable=*/true);
        }
        if (res->status != 200) {
            const bool retryable = res->status == 429 || res->status >= 500;
            throw error::transport_error(
                "scoring endpoint returned status " + std::to_string(res->status),
                res->status, retryable);
        }
        json parsed;
        try {
            parsed = json::parse(res->body);
        } catch (const json::exception& e) {
            throw error::transport_error(std::string("invalid scoring response: ") + e.what(),
                                         res->status, false);
        }
        if (!parsed.contains("logprobs") || !parsed["logprobs"].is_array()) {
            throw error::transport_error("scoring response lacks a logprobs array",
                                         res->status, false);
        }
        std::vector<double> out = parsed["logprobs"].get<std::vector<double>>();
        if (out.size() != tokens.size()) {
            throw error(errc::alignment_mismatch,
                        "endpoint returned " + std::to_string(out.size()) + " logprobs for " +
                            std::to_string(tokens.size()) + " tokens",
                        std::min(out.size(), tokens.size()));
        }
        return out;
    }

    ProviderBinding binding_;
    std::string base_;
    std::string path_prefix_;
    std::counting_semaphore<> gate_;
};

} // namespace

std::shared_ptr<Provider> make_provider(const ProviderBinding& binding) {
    binding.validate();
    switch (binding.kind) {
        case ProviderKind::toy_lm:
            return std::make_shared<ToyProvider>(binding);
        case ProviderKind::http:
            return std::make_shared<HttpProvider>(binding);
        case ProviderKind::replay: {
            if (binding.replay_path.empty()) {
                throw error(errc::invalid_config, "replay provider requires replay_path");
            }
            return std::make_shared<ReplayProvider>(read_dump_file(binding.replay_path),
                                                    binding);
        }
    }
    throw error(errc::invalid_config, "unknown provider kind");
}

std::shared_ptr<Provider> make_replay_provider(std::vector<LabeledSample> corpus,
                                               const ProviderBinding& binding) {
    return std::make_shared<ReplayProvider>(std::move(corpus), binding);
}

} // namespace star
