#pragma once

#include <span>

#include "star/types.hpp"

namespace star {

// Amplification ratio of one transition: exp(log_q) / (exp(log_p) + epsilon).
// epsilon = 0 is accepted and means no smoothing.
double likelihood_ratio(const TokenRecord& record, double epsilon);

// Per-token evidence s_t = log of the amplification ratio, computed in log
// space as log_q - log(exp(log_p) + epsilon) so log_q is never exponentiated.
// Positive values mean the input amplifies this transition.
double evidence(const TokenRecord& record, double epsilon);

// One step of the burn-in-gated CUSUM recurrence:
//   g_t = 0                               if warmup gating applies at t
//   g_t = max(0, g_prev + s_t - drift_k)  otherwise
double cusum_update(double g_prev, double s_t, std::size_t t, const DetectorConfig& config);

// Scores a whole sequence: evidence for every token, the CUSUM fold, the
// decision score (max g_t, or max post-warmup s_t when use_cusum is off),
// the earliest threshold crossing and the flag. Pure and deterministic.
SuspicionTrace score_sequence(std::span<const TokenRecord> records, const DetectorConfig& config);

// score_sequence without the per-token arrays.
Verdict detect(std::span<const TokenRecord> records, const DetectorConfig& config);

} // namespace star
