#include "star/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "star/errors.hpp"

namespace star {

using nlohmann::json;

std::string to_string(TaskFamily f) {
    switch (f) {
        case TaskFamily::gsm8k_like: return "gsm8k_like";
        case TaskFamily::asdiv_like: return "asdiv_like";
        case TaskFamily::csqa_like: return "csqa_like";
        case TaskFamily::strategyqa_like: return "strategyqa_like";
        case TaskFamily::letter_like: return "letter_like";
        case TaskFamily::toy: return "toy";
    }
    return "toy";
}

std::string to_string(AttackKind k) {
    switch (k) {
        case AttackKind::bcn: return "bcn";
        case AttackKind::bcp: return "bcp";
        case AttackKind::inst: return "inst";
        case AttackKind::adaptive_bcn: return "adaptive_bcn";
    }
    return "bcn";
}

TaskFamily task_family_from_string(const std::string& s) {
    if (s == "gsm8k_like") return TaskFamily::gsm8k_like;
    if (s == "asdiv_like") return TaskFamily::asdiv_like;
    if (s == "csqa_like") return TaskFamily::csqa_like;
    if (s == "strategyqa_like") return TaskFamily::strategyqa_like;
    if (s == "letter_like") return TaskFamily::letter_like;
    if (s == "toy") return TaskFamily::toy;
    throw error(errc::invalid_config, "unknown task family: " + s);
}

AttackKind attack_kind_from_string(const std::string& s) {
    if (s == "bcn") return AttackKind::bcn;
    if (s == "bcp") return AttackKind::bcp;
    if (s == "inst") return AttackKind::inst;
    if (s == "adaptive_bcn" || s == "adaptive") return AttackKind::adaptive_bcn;
    throw error(errc::invalid_config, "unknown attack kind: " + s);
}

std::vector<TokenRecord> LabeledSample::records() const {
    std::vector<TokenRecord> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        out.push_back(TokenRecord{i, tokens[i], log_q[i], log_p[i]});
    }
    return out;
}

void LabeledSample::validate() const {
    if (id.empty()) throw error(errc::invalid_config, "sample id must not be empty");
    if (tokens.size() != log_q.size() || tokens.size() != log_p.size()) {
        throw error(errc::alignment_mismatch,
                    "sample " + id + ": tokens/log_q/log_p lengths differ",
                    std::min({tokens.size(), log_q.size(), log_p.size()}));
    }
    if (onion_f && !onion_f->empty() && user_input.empty()) {
        throw error(errc::invalid_config, "sample " + id + ": onion_f without user_input");
    }
    for (std::size_t i = 0; i < log_q.size(); ++i) {
        if (!std::isfinite(log_q[i]) || !std::isfinite(log_p[i]) || log_q[i] > 0.0 ||
            log_p[i] > 0.0) {
            throw error(errc::malformed_record,
                        "sample " + id + ": invalid log-probability at token " +
                            std::to_string(i),
                        i);
        }
    }
    if (is_attack) {
        // The template itself is not serialized, so the trigger-presence
        // invariant is only checkable on freshly constructed samples.
        if (attack) {
            const bool trigger_present =
                !attack->trigger.empty() &&
                (user_input.find(attack->trigger) != std::string::npos ||
                 instruction.find(attack->trigger) != std::string::npos);
            if (!trigger_present) {
                throw error(errc::invalid_config,
                            "sample " + id + ": attack label without an injected trigger");
            }
        }
        if (target_answer && *target_answer == ground_truth) {
            throw error(errc::invalid_config,
                        "sample " + id + ": target answer equals ground truth");
        }
    }
}

namespace {

// %.17g round-trips any double; JSON itself cannot carry non-finite values.
std::string format_float(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string float_array(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_float(values[i]);
    }
    out += "]";
    return out;
}

std::string json_str(const std::string& s) { return json(s).dump(); }

} // namespace

void write_dump(std::ostream& out, const std::vector<LabeledSample>& samples) {
    for (const LabeledSample& s : samples) {
        std::string line = "{";
        line += "\"id\":" + json_str(s.id);
        line += ",\"label\":" + json_str(s.is_attack ? "attack" : "benign");
        line += ",\"attack_kind\":";
        line += s.attack_kind ? json_str(*s.attack_kind) : std::string("null");
        line += ",\"task\":" + json_str(to_string(s.task));
        line += ",\"instruction\":" + json_str(s.instruction);
        line += ",\"user_input\":" + json_str(s.user_input);
        line += ",\"ground_truth\":" + json_str(s.ground_truth);
        line += ",\"target_answer\":";
        line += s.target_answer ? json_str(*s.target_answer) : std::string("null");
        line += ",\"tokens\":" + json(s.tokens).dump();
        line += ",\"log_q\":" + float_array(s.log_q);
        line += ",\"log_p\":" + float_array(s.log_p);
        if (s.onion_f) line += ",\"onion_f\":" + float_array(*s.onion_f);
        line += "}";
        out << line << "\n";
    }
}

void write_dump_file(const std::string& path, const std::vector<LabeledSample>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::io, "cannot open for writing: " + path);
    write_dump(out, samples);
}

std::vector<LabeledSample> read_dump(std::istream& in) {
    std::vector<LabeledSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw error(errc::io,
                        "dump line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
        try {
            LabeledSample s;
            s.id = j.at("id").get<std::string>();
            const std::string label = j.at("label").get<std::string>();
            if (label != "benign" && label != "attack") {
                throw error(errc::invalid_config, "label must be benign or attack");
            }
            s.is_attack = label == "attack";
            if (j.contains("attack_kind") && !j["attack_kind"].is_null()) {
                s.attack_kind = j["attack_kind"].get<std::string>();
            }
            if (j.contains("task") && !j["task"].is_null()) {
                s.task = task_family_from_string(j["task"].get<std::string>());
            }
            s.instruction = j.value("instruction", std::string{});
            s.user_input = j.value("user_input", std::string{});
            s.ground_truth = j.value("ground_truth", std::string{});
            if (j.contains("target_answer") && !j["target_answer"].is_null()) {
                s.target_answer = j["target_answer"].get<std::string>();
            }
            s.tokens = j.at("tokens").get<std::vector<std::string>>();
            s.log_q = j.at("log_q").get<std::vector<double>>();
            s.log_p = j.at("log_p").get<std::vector<double>>();
            if (j.contains("onion_f") && !j["onion_f"].is_null()) {
                s.onion_f = j["onion_f"].get<std::vector<double>>();
            }
            if (s.tokens.size() != s.log_q.size() || s.tokens.size() != s.log_p.size()) {
                throw error(errc::alignment_mismatch, "tokens/log_q/log_p lengths differ",
                            std::min({s.tokens.size(), s.log_q.size(), s.log_p.size()}));
            }
            samples.push_back(std::move(s));
        } catch (const error&) {
            throw;
        } catch (const json::exception& e) {
            throw error(errc::io,
                        "dump line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
    }
    return samples;
}

std::vector<LabeledSample> read_dump_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open for reading: " + path);
    return read_dump(in);
}

} // namespace star
