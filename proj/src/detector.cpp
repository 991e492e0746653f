#include "star/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "star/errors.hpp"

namespace star {

namespace {

void check_record(const TokenRecord& r) {
    if (!std::isfinite(r.log_q) || !std::isfinite(r.log_p)) {
        throw error(errc::malformed_record,
                    "non-finite log-probability at token " + std::to_string(r.index),
                    r.index);
    }
    if (r.log_q > 0.0 || r.log_p > 0.0) {
        throw error(errc::malformed_record,
                    "positive log-probability at token " + std::to_string(r.index),
                    r.index);
    }
}

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw error(errc::invalid_config, "epsilon must be finite and >= 0");
    }
}

// log(exp(a) + b) for b >= 0 without exponentiating a when it is small.
double log_exp_plus(double a, double b) {
    if (b == 0.0) return a;
    const double log_b = std::log(b);
    const double hi = std::max(a, log_b);
    const double lo = std::min(a, log_b);
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace

void DetectorConfig::validate() const {
    if (!(drift_k >= 0.0) || !std::isfinite(drift_k))
        throw error(errc::invalid_config, "drift_k must be finite and >= 0");
    if (!(threshold_tau >= 0.0) || !std::isfinite(threshold_tau))
        throw error(errc::invalid_config, "threshold_tau must be finite and >= 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw error(errc::invalid_config, "epsilon must be finite and > 0");
}

double likelihood_ratio(const TokenRecord& record, double epsilon) {
    check_record(record);
    check_epsilon(epsilon);
    return std::exp(evidence(record, epsilon));
}

double evidence(const TokenRecord& record, double epsilon) {
    check_record(record);
    check_epsilon(epsilon);
    return record.log_q - log_exp_plus(record.log_p, epsilon);
}

double cusum_update(double g_prev, double s_t, std::size_t t, const DetectorConfig& config) {
    if (config.use_warmup && t < config.warmup) return 0.0;
    return std::max(0.0, g_prev + s_t - config.drift_k);
}

SuspicionTrace score_sequence(std::span<const TokenRecord> records, const DetectorConfig& config) {
    config.validate();
    if (records.empty()) throw error(errc::empty_input, "no token records to score");
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].index != i) {
            throw error(errc::malformed_record,
                        "non-contiguous token index " + std::to_string(records[i].index) +
                            " at position " + std::to_string(i),
                        i);
        }
    }

    const std::size_t n = records.size();
    const std::size_t gate = config.effective_warmup();

    SuspicionTrace trace;
    trace.evidence.resize(n);
    trace.cusum.assign(n, 0.0);

    for (std::size_t t = 0; t < n; ++t) {
        trace.evidence[t] = evidence(records[t], config.epsilon);
    }

    if (config.use_cusum) {
        double g = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            g = cusum_update(g, trace.evidence[t], t, config);
            trace.cusum[t] = g;
            trace.decision_score = std::max(trace.decision_score, g);
            if (!trace.first_crossing && g > config.threshold_tau) {
                trace.first_crossing = t;
            }
        }
    } else {
        // Ablation: the decision score is the largest instantaneous evidence
        // after the burn-in boundary; the cusum array stays zero. No eligible
        // token means score 0.
        if (gate < n) {
            trace.decision_score = trace.evidence[gate];
            for (std::size_t t = gate; t < n; ++t) {
                trace.decision_score = std::max(trace.decision_score, trace.evidence[t]);
                if (!trace.first_crossing && trace.evidence[t] > config.threshold_tau) {
                    trace.first_crossing = t;
                }
            }
        }
    }

    trace.flagged = trace.decision_score > config.threshold_tau;
    return trace;
}

Verdict detect(std::span<const TokenRecord> records, const DetectorConfig& config) {
    return score_sequence(records, config).verdict();
}

} // namespace star
