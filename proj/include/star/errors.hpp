#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace star {

// Error taxonomy shared by the detector, providers, corpus tooling and the
// HTTP service (which maps codes onto status codes).
enum class errc {
    malformed_record,      // non-finite or positive log-probability
    empty_input,
    alignment_mismatch,    // token streams disagree; index() names the first divergence
    transport,             // endpoint unreachable / non-200; carries status + retryable
    template_mismatch,     // attack template incompatible with the task family
    already_attacked,
    incomplete_sample,
    invalid_amplification, // tilt would push a probability outside (0,1]
    unsupported_operation,
    undefined_metric,      // single-class metric input
    not_found,
    invalid_config,
    payload_too_large,
    io,
};

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    error(errc code, std::string message, std::size_t index)
        : std::runtime_error(std::move(message)), code_(code), index_(index) {}

    static error transport_error(std::string message, int status, bool retryable) {
        error e(errc::transport, std::move(message));
        e.status_ = status;
        e.retryable_ = retryable;
        return e;
    }

    errc code() const noexcept { return code_; }

    // Token / line index the error refers to, when one exists.
    std::optional<std::size_t> index() const noexcept { return index_; }

    // Transport metadata: HTTP status (0 = connection failure) and whether a
    // retry is sensible (connect failures, 429 and 5xx).
    int status() const noexcept { return status_; }
    bool retryable() const noexcept { return retryable_; }

private:
    errc code_;
    std::optional<std::size_t> index_;
    int status_ = 0;
    bool retryable_ = false;
};

} // namespace star
