#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "star/provider.hpp"
#include "star/types.hpp"

namespace httplib {
class Server;
}

namespace star {

// Admin-configured clamp ranges for per-request config overrides, so callers
// cannot disable detection by pushing tau to infinity.
struct ServiceLimits {
    std::size_t max_tokens = 8192;
    double k_min = 0.0, k_max = 1000.0;
    double tau_min = 0.1, tau_max = 1e6;
    std::size_t warmup_max = 100000;
    double epsilon_min = 1e-300, epsilon_max = 1.0;
};

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 0; // 0 = bind any free port
    ServiceLimits limits;
    DetectorConfig detector;
    std::map<std::string, ProviderBinding> profiles;
    std::vector<std::pair<std::string, std::string>> broken_profiles; // name -> reason
    std::string bearer_token_env; // optional static bearer auth

    static ServiceConfig from_json_string(const std::string& text);
    static ServiceConfig from_file(const std::string& path);
    // STAR_SERVICE_HOST / STAR_SERVICE_PORT override the file values.
    void apply_env_overrides();
};

// Long-running scoring service: POST /v1/detect, POST /v1/batch_detect,
// GET /v1/health. Verdicts are identical to the detector library outputs.
class DetectService {
public:
    explicit DetectService(ServiceConfig config, std::ostream* log = nullptr);
    ~DetectService();

    DetectService(const DetectService&) = delete;
    DetectService& operator=(const DetectService&) = delete;

    // Binds and serves on a background thread; returns the bound port.
    int start();
    void stop();

    const ServiceConfig& config() const noexcept { return config_; }
    std::uint64_t requests() const noexcept { return requests_.load(); }

private:
    void setup_routes();

    ServiceConfig config_;
    std::ostream* log_;
    std::unique_ptr<httplib::Server> server_;
    std::thread serve_thread_;
    std::map<std::string, std::shared_ptr<Provider>> providers_;
    std::atomic<std::uint64_t> requests_{0};
    std::int64_t started_at_ = 0;
    int port_ = 0;
};

} // namespace star
