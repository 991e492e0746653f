#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "star/corpus.hpp"
#include "star/metrics.hpp"
#include "star/provider.hpp"
#include "star/types.hpp"

namespace star {

// One scored sample as written to trace files.
struct TraceDoc {
    std::string id;
    std::vector<std::string> tokens;
    SuspicionTrace trace;
};

std::string trace_to_json_line(const TraceDoc& doc);
TraceDoc trace_from_json_line(const std::string& line);
std::vector<TraceDoc> read_trace_file(const std::string& path);

struct ScoreOptions {
    DetectorConfig detector;
    double temperature = 1.0;
    // Reuse the conditional stream embedded in the sample (the decode-time
    // cache). Off for re-scoring at a different temperature.
    bool reuse_cached_q = true;
    std::size_t jobs = 1;
};

struct ScoreRun {
    std::vector<TraceDoc> traces; // sorted by id
    std::uint64_t q_pass_calls = 0;
    std::uint64_t p_pass_calls = 0;
};

// Scores every sample. With a provider, streams are (re)computed through it;
// without one, the samples' embedded streams are used directly (replay).
ScoreRun score_samples(std::span<const LabeledSample> samples, Provider* provider,
                       const ScoreOptions& options);

// Joins decision scores with labels for the metrics family.
std::vector<ScoredSample> to_scored_samples(const ScoreRun& run,
                                            std::span<const LabeledSample> samples);

} // namespace star
