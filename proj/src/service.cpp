#include "star/service.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

#include <httplib.h>
#include <json.hpp>

#include "star/detector.hpp"
#include "star/errors.hpp"
#include "star/manifest.hpp"

namespace star {

using nlohmann::json;
using nlohmann::ordered_json;

ServiceConfig ServiceConfig::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw error(errc::invalid_config, std::string("service config: ") + e.what());
    }
    ServiceConfig c;
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.bearer_token_env = j.value("bearer_token_env", std::string{});
    if (j.contains("limits")) {
        const json& l = j["limits"];
        c.limits.max_tokens = l.value("max_tokens", c.limits.max_tokens);
        c.limits.k_min = l.value("k_min", c.limits.k_min);
        c.limits.k_max = l.value("k_max", c.limits.k_max);
        c.limits.tau_min = l.value("tau_min", c.limits.tau_min);
        c.limits.tau_max = l.value("tau_max", c.limits.tau_max);
        c.limits.warmup_max = l.value("warmup_max", c.limits.warmup_max);
        c.limits.epsilon_min = l.value("epsilon_min", c.limits.epsilon_min);
        c.limits.epsilon_max = l.value("epsilon_max", c.limits.epsilon_max);
    }
    if (j.contains("detector")) {
        const json& d = j["detector"];
        c.detector.drift_k = d.value("k", c.detector.drift_k);
        c.detector.threshold_tau = d.value("tau", c.detector.threshold_tau);
        c.detector.warmup = d.value("warmup", c.detector.warmup);
        c.detector.epsilon = d.value("epsilon", c.detector.epsilon);
        c.detector.use_cusum = d.value("cusum", c.detector.use_cusum);
        c.detector.use_warmup = d.value("use_warmup", c.detector.use_warmup);
    }
    if (j.contains("profiles")) {
        for (auto& [name, spec] : j["profiles"].items()) {
            try {
                c.profiles[name] = ProviderBinding::from_json_string(spec.dump());
            } catch (const error& e) {
                c.broken_profiles.emplace_back(name, e.what());
            }
        }
    }
    return c;
}

ServiceConfig ServiceConfig::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open service config: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_string(text);
}

void ServiceConfig::apply_env_overrides() {
    if (const char* h = std::getenv("STAR_SERVICE_HOST")) host = h;
    if (const char* p = std::getenv("STAR_SERVICE_PORT")) port = std::atoi(p);
}

namespace {

int status_for(const error& e) {
    switch (e.code()) {
        case errc::payload_too_large: return 413;
        case errc::alignment_mismatch:
        case errc::malformed_record: return 422;
        case errc::transport:
        case errc::not_found: return 502;
        default: return 400;
    }
}

ordered_json error_body(int status, const std::string& message) {
    ordered_json e;
    e["error"]["status"] = status;
    e["error"]["message"] = message;
    return e;
}

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

struct DetectOutcome {
    ordered_json body;
    bool flagged = false;
};

} // namespace

DetectService::DetectService(ServiceConfig config, std::ostream* log)
    : config_(std::move(config)), log_(log), server_(std::make_unique<httplib::Server>()) {
    for (const auto& [name, binding] : config_.profiles) {
        try {
            providers_[name] = make_provider(binding);
        } catch (const error& e) {
            config_.broken_profiles.emplace_back(name, e.what());
        }
    }
    setup_routes();
}

DetectService::~DetectService() { stop(); }

void DetectService::setup_routes() {
    auto authorized = [this](const httplib::Request& req) {
        if (config_.bearer_token_env.empty()) return true;
        const char* expected = std::getenv(config_.bearer_token_env.c_str());
        if (expected == nullptr || *expected == '\0') return true; // auth not provisioned
        return req.get_header_value("Authorization") == std::string("Bearer ") + expected;
    };

    auto handle_one = [this](const json& body) -> DetectOutcome {
        const bool inline_mode = body.contains("records");
        const bool provider_mode = body.contains("response_tokens");
        if (inline_mode == provider_mode) {
            throw error(errc::invalid_config,
                        "exactly one of 'records' or 'response_tokens' must be present");
        }

        DetectorConfig cfg = config_.detector;
        if (body.contains("config")) {
            const json& o = body["config"];
            if (!o.is_object()) throw error(errc::invalid_config, "config must be an object");
            const ServiceLimits& lim = config_.limits;
            if (o.contains("k"))
                cfg.drift_k = clamp(o["k"].get<double>(), lim.k_min, lim.k_max);
            if (o.contains("tau"))
                cfg.threshold_tau = clamp(o["tau"].get<double>(), lim.tau_min, lim.tau_max);
            if (o.contains("warmup")) {
                cfg.warmup =
                    std::min<std::size_t>(o["warmup"].get<std::size_t>(), lim.warmup_max);
            }
            if (o.contains("epsilon")) {
                cfg.epsilon =
                    clamp(o["epsilon"].get<double>(), lim.epsilon_min, lim.epsilon_max);
            }
        }

        std::vector<TokenRecord> records;
        std::uint64_t q_calls = 0, p_calls = 0;
        if (inline_mode) {
            const json& arr = body["records"];
            if (!arr.is_array() || arr.empty()) {
                throw error(errc::invalid_config, "records must be a non-empty array");
            }
            if (arr.size() > config_.limits.max_tokens) {
                throw error(errc::payload_too_large, "records exceed the token limit");
            }
            records.reserve(arr.size());
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const json& r = arr[i];
                if (!r.contains("log_q") || !r.contains("log_p")) {
                    throw error(errc::invalid_config,
                                "record " + std::to_string(i) + " lacks log_q/log_p");
                }
                records.push_back(TokenRecord{i, r.value("token", std::string{}),
                                              r["log_q"].get<double>(),
                                              r["log_p"].get<double>()});
            }
        } else {
            const json& toks = body["response_tokens"];
            if (!toks.is_array() || toks.empty()) {
                throw error(errc::invalid_config, "response_tokens must be a non-empty array");
            }
            if (toks.size() > config_.limits.max_tokens) {
                throw error(errc::payload_too_large, "response exceeds the token limit");
            }
            const std::string profile = body.value("provider", std::string{});
            auto it = providers_.find(profile);
            if (it == providers_.end()) {
                throw error(errc::invalid_config, "unknown provider profile: " + profile);
            }
            ScoringRequest req;
            req.instruction = body.value("instruction", std::string{});
            req.user_input = body.value("user_input", std::string{});
            req.response_tokens = toks.get<std::vector<std::string>>();
            req.temperature = body.value("temperature", 1.0);
            ScoringResponse resp = it->second->score_dual(req);
            records = std::move(resp.records);
            q_calls = resp.q_pass_calls;
            p_calls = resp.p_pass_calls;
        }

        const SuspicionTrace trace = score_sequence(records, cfg);

        double evidence_max = trace.evidence.empty() ? 0.0 : trace.evidence[0];
        std::size_t evidence_argmax = 0;
        for (std::size_t i = 0; i < trace.evidence.size(); ++i) {
            if (trace.evidence[i] > evidence_max) {
                evidence_max = trace.evidence[i];
                evidence_argmax = i;
            }
        }

        DetectOutcome out;
        out.flagged = trace.flagged;
        out.body["flagged"] = trace.flagged;
        out.body["decision_score"] = trace.decision_score;
        if (trace.first_crossing) out.body["first_crossing"] = *trace.first_crossing;
        else out.body["first_crossing"] = nullptr;
        out.body["evidence_max"] = evidence_max;
        out.body["evidence_argmax"] = evidence_argmax;
        out.body["q_pass_calls"] = q_calls;
        out.body["p_pass_calls"] = p_calls;
        out.body["config"] = {{"k", cfg.drift_k},
                              {"tau", cfg.threshold_tau},
                              {"warmup", cfg.warmup},
                              {"epsilon", cfg.epsilon}};
        return out;
    };

    auto log_request = [this](const std::string& id, const std::string& endpoint, bool flagged,
                              double latency_ms, std::uint64_t calls) {
        if (log_ == nullptr) return;
        ordered_json line;
        line["id"] = id;
        line["endpoint"] = endpoint;
        line["verdict"] = flagged ? "flagged" : "clean";
        line["latency_ms"] = latency_ms;
        line["provider_calls"] = calls;
        (*log_) << line.dump() << "\n" << std::flush;
    };

    server_->Post("/v1/detect", [=, this](const httplib::Request& req, httplib::Response& res) {
        const auto t0 = std::chrono::steady_clock::now();
        requests_.fetch_add(1);
        if (!authorized(req)) {
            res.status = 401;
            res.set_content(error_body(401, "missing or invalid bearer token").dump(),
                            "application/json");
            return;
        }
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::exception& e) {
            res.status = 400;
            res.set_content(error_body(400, e.what()).dump(), "application/json");
            return;
        }
        try {
            DetectOutcome out = handle_one(body);
            res.status = 200;
            res.set_content(out.body.dump(), "application/json");
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            log_request(body.value("id", std::to_string(requests_.load())), "/v1/detect",
                        out.flagged, ms,
                        out.body["q_pass_calls"].get<std::uint64_t>() +
                            out.body["p_pass_calls"].get<std::uint64_t>());
        } catch (const error& e) {
            const int status = status_for(e);
            res.status = status;
            res.set_content(error_body(status, e.what()).dump(), "application/json");
        } catch (const json::exception& e) {
            res.status = 400;
            res.set_content(error_body(400, e.what()).dump(), "application/json");
        }
    });

    server_->Post("/v1/batch_detect",
                  [=, this](const httplib::Request& req, httplib::Response& res) {
        const auto t0 = std::chrono::steady_clock::now();
        requests_.fetch_add(1);
        if (!authorized(req)) {
            res.status = 401;
            res.set_content(error_body(401, "missing or invalid bearer token").dump(),
                            "application/json");
            return;
        }
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::exception& e) {
            res.status = 400;
            res.set_content(error_body(400, e.what()).dump(), "application/json");
            return;
        }
        if (!body.is_array()) {
            res.status = 400;
            res.set_content(error_body(400, "batch body must be an array").dump(),
                            "application/json");
            return;
        }
        // Order-preserving; per-item failures are reported inline.
        ordered_json results = ordered_json::array();
        for (const json& item : body) {
            try {
                results.push_back(handle_one(item).body);
            } catch (const error& e) {
                results.push_back(error_body(status_for(e), e.what()));
            } catch (const json::exception& e) {
                results.push_back(error_body(400, e.what()));
            }
        }
        res.status = 200;
        res.set_content(results.dump(), "application/json");
        bool any_flagged = false;
        for (const auto& r : results) {
            if (r.contains("flagged") && r["flagged"].get<bool>()) any_flagged = true;
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        std::uint64_t calls = 0;
        for (const auto& r : results) {
            if (r.contains("q_pass_calls")) {
                calls += r["q_pass_calls"].get<std::uint64_t>() +
                         r["p_pass_calls"].get<std::uint64_t>();
            }
        }
        log_request(std::to_string(requests_.load()), "/v1/batch_detect", any_flagged, ms,
                    calls);
    });

    server_->Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
        ordered_json j;
        j["status"] = config_.broken_profiles.empty() ? "ok" : "degraded";
        j["version"] = kToolVersion;
        const auto now = std::chrono::steady_clock::now().time_since_epoch();
        j["uptime_seconds"] =
            std::chrono::duration_cast<std::chrono::seconds>(now).count() - started_at_;
        j["requests"] = requests_.load();
        json profiles = json::array();
        for (const auto& [name, binding] : config_.profiles) {
            profiles.push_back({{"name", name}, {"ok", providers_.count(name) > 0}});
        }
        for (const auto& [name, reason] : config_.broken_profiles) {
            profiles.push_back({{"name", name}, {"ok", false}, {"error", reason}});
        }
        j["profiles"] = profiles;
        res.status = 200;
        res.set_content(j.dump(), "application/json");
    });
}

int DetectService::start() {
    started_at_ = std::chrono::duration_cast<std::chrono::seconds>(
                      std::chrono::steady_clock::now().time_since_epoch())
                      .count();
    if (config_.port == 0) {
        port_ = server_->bind_to_any_port(config_.host);
    } else {
        if (!server_->bind_to_port(config_.host, config_.port)) {
            throw error(errc::io, "cannot bind " + config_.host + ":" +
                                      std::to_string(config_.port));
        }
        port_ = config_.port;
    }
    if (port_ <= 0) throw error(errc::io, "cannot bind " + config_.host);
    serve_thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return port_;
}

void DetectService::stop() {
    if (server_) server_->stop();
    if (serve_thread_.joinable()) serve_thread_.join();
}

} // namespace star
