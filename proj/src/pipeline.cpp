#include "star/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <thread>

#include <json.hpp>

#include "star/detector.hpp"
#include "star/errors.hpp"

namespace star {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trace_to_json_line(const TraceDoc& doc) {
    ordered_json j;
    j["id"] = doc.id;
    j["flagged"] = doc.trace.flagged;
    j["decision_score"] = doc.trace.decision_score;
    if (doc.trace.first_crossing) j["first_crossing"] = *doc.trace.first_crossing;
    else j["first_crossing"] = nullptr;
    j["tokens"] = doc.tokens;
    j["evidence"] = doc.trace.evidence;
    j["cusum"] = doc.trace.cusum;
    return j.dump();
}

TraceDoc trace_from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw error(errc::io, std::string("trace parse: ") + e.what());
    }
    TraceDoc doc;
    doc.id = j.at("id").get<std::string>();
    doc.trace.flagged = j.at("flagged").get<bool>();
    doc.trace.decision_score = j.at("decision_score").get<double>();
    if (j.contains("first_crossing") && !j["first_crossing"].is_null()) {
        doc.trace.first_crossing = j["first_crossing"].get<std::size_t>();
    }
    doc.tokens = j.value("tokens", std::vector<std::string>{});
    doc.trace.evidence = j.value("evidence", std::vector<double>{});
    doc.trace.cusum = j.value("cusum", std::vector<double>{});
    return doc;
}

std::vector<TraceDoc> read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open trace file: " + path);
    std::vector<TraceDoc> docs;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) docs.push_back(trace_from_json_line(line));
    }
    return docs;
}

ScoreRun score_samples(std::span<const LabeledSample> samples, Provider* provider,
                       const ScoreOptions& options) {
    options.detector.validate();

    ScoreRun run;
    run.traces.resize(samples.size());

    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(jobs);

    auto worker = [&](std::size_t worker_id) {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= samples.size()) break;
                const LabeledSample& s = samples[i];

                std::vector<TokenRecord> records;
                if (provider != nullptr) {
                    ScoringRequest req;
                    req.instruction = s.instruction;
                    req.user_input = s.user_input;
                    req.response_tokens = s.tokens;
                    req.temperature = options.temperature;
                    if (options.reuse_cached_q) req.cached_log_q = s.log_q;
                    records = provider->score_dual(req).records;
                } else {
                    if (s.tokens.empty()) {
                        throw error(errc::empty_input,
                                    "sample " + s.id + " carries no scored streams");
                    }
                    records = s.records();
                }
                run.traces[i] = TraceDoc{s.id, s.tokens,
                                         score_sequence(records, options.detector)};
            }
        } catch (...) {
            failures[worker_id] = std::current_exception();
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    // Output ordering is by id regardless of scheduling.
    std::stable_sort(run.traces.begin(), run.traces.end(),
                     [](const TraceDoc& a, const TraceDoc& b) { return a.id < b.id; });

    if (provider != nullptr) {
        run.q_pass_calls = provider->counters().q();
        run.p_pass_calls = provider->counters().p();
    }
    return run;
}

std::vector<ScoredSample> to_scored_samples(const ScoreRun& run,
                                            std::span<const LabeledSample> samples) {
    std::map<std::string, bool> labels;
    for (const LabeledSample& s : samples) labels[s.id] = s.is_attack;

    std::vector<ScoredSample> out;
    out.reserve(run.traces.size());
    for (const TraceDoc& doc : run.traces) {
        auto it = labels.find(doc.id);
        if (it == labels.end()) {
            throw error(errc::not_found, "trace id " + doc.id + " missing from corpus");
        }
        out.push_back(ScoredSample{doc.id, it->second, doc.trace.decision_score});
    }
    return out;
}

} // namespace star
