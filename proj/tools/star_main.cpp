// Command-line surface: score sequences, run evaluations, generate corpora,
// sweep parameters, render heatmaps, benchmark provider overhead, and serve
// the detection API.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "star/attack.hpp"
#include "star/detector.hpp"
#include "star/errors.hpp"
#include "star/heatmap.hpp"
#include "star/manifest.hpp"
#include "star/metrics.hpp"
#include "star/onion.hpp"
#include "star/pipeline.hpp"
#include "star/provider.hpp"
#include "star/service.hpp"

using namespace star;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFlagged = 2;
constexpr int kExitTransport = 3;

struct DetectorFlags {
    double k = 2.0;
    double tau = 8.5;
    std::size_t warmup = 10;
    double epsilon = 1e-10;
    bool no_cusum = false;
    bool no_warmup = false;

    DetectorConfig config() const {
        DetectorConfig c;
        c.drift_k = k;
        c.threshold_tau = tau;
        c.warmup = warmup;
        c.epsilon = epsilon;
        c.use_cusum = !no_cusum;
        c.use_warmup = !no_warmup;
        c.validate();
        return c;
    }
};

struct ProviderFlags {
    std::string provider = "replay"; // replay | toy | http
    std::string endpoint;
    std::string auth_env;
    std::string provider_config; // JSON binding file, overrides the above
    double temperature = 1.0;

    bool is_replay() const { return provider == "replay" && provider_config.empty(); }

    ProviderBinding binding() const {
        if (!provider_config.empty()) {
            return ProviderBinding::from_json_file(provider_config);
        }
        ProviderBinding b;
        b.kind = provider_kind_from_string(provider == "toy" ? "toy_lm" : provider);
        b.endpoint = endpoint;
        b.auth_env = auth_env;
        b.validate();
        return b;
    }
};

void add_detector_flags(CLI::App* cmd, DetectorFlags& f) {
    cmd->add_option("--k", f.k, "CUSUM drift parameter");
    cmd->add_option("--tau", f.tau, "decision threshold");
    cmd->add_option("--warmup", f.warmup, "burn-in token count");
    cmd->add_option("--epsilon", f.epsilon, "denominator smoothing");
    cmd->add_flag("--no-cusum", f.no_cusum, "score by max instantaneous evidence");
    cmd->add_flag("--no-warmup", f.no_warmup, "disable the burn-in period");
}

void add_provider_flags(CLI::App* cmd, ProviderFlags& f) {
    cmd->add_option("--provider", f.provider, "replay | toy | http")
        ->check(CLI::IsMember({"replay", "toy", "http"}));
    cmd->add_option("--endpoint", f.endpoint, "http scoring endpoint base URL");
    cmd->add_option("--auth-env", f.auth_env, "env var holding the bearer token");
    cmd->add_option("--provider-config", f.provider_config, "provider binding JSON file");
    cmd->add_option("--temperature", f.temperature, "scoring temperature");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::io, "cannot open for writing: " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open for reading: " + path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string join_command(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += " ";
        out += argv[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// score

int cmd_score(const std::string& input, const std::string& output, const DetectorFlags& df,
              const ProviderFlags& pf, std::size_t jobs) {
    auto samples = read_dump_file(input);
    std::shared_ptr<Provider> provider;
    if (!pf.is_replay()) provider = make_provider(pf.binding());

    ScoreOptions options;
    options.detector = df.config();
    options.temperature = pf.temperature;
    options.jobs = jobs;
    ScoreRun run = score_samples(samples, provider.get(), options);

    std::ostringstream buf;
    bool any_flagged = false;
    for (const TraceDoc& doc : run.traces) {
        buf << trace_to_json_line(doc) << "\n";
        any_flagged = any_flagged || doc.trace.flagged;
    }
    if (output.empty() || output == "-") std::cout << buf.str();
    else write_text_file(output, buf.str());

    std::cerr << "scored " << run.traces.size() << " samples"
              << (any_flagged ? " (anomalies flagged)" : "") << "\n";
    return any_flagged ? kExitFlagged : kExitOk;
}

// ---------------------------------------------------------------------------
// eval

std::vector<ScoredSample> external_scores(const std::string& path,
                                          const std::vector<LabeledSample>& samples) {
    const std::string text = read_text_file(path);
    std::map<std::string, double> by_id;
    // Either one JSON object {id: score} or JSON-lines {"id":..,"score":..}.
    try {
        json j = json::parse(text);
        if (j.is_object()) {
            for (auto& [id, score] : j.items()) by_id[id] = score.get<double>();
        }
    } catch (const json::exception&) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line);
            by_id[j.at("id").get<std::string>()] = j.at("score").get<double>();
        }
    }
    std::vector<ScoredSample> out;
    for (const LabeledSample& s : samples) {
        auto it = by_id.find(s.id);
        if (it == by_id.end()) {
            throw error(errc::not_found, "no external score for sample " + s.id);
        }
        out.push_back(ScoredSample{s.id, s.is_attack, it->second});
    }
    return out;
}

std::vector<ScoredSample> onion_scored_samples(const std::vector<LabeledSample>& samples,
                                               Provider* provider, const OnionConfig& oc,
                                               double temperature) {
    std::vector<ScoredSample> out;
    out.reserve(samples.size());
    for (const LabeledSample& s : samples) {
        OnionVerdict v;
        if (provider != nullptr) {
            v = onion_detect(whitespace_tokens(s.user_input), oc, *provider, temperature);
        } else if (s.onion_f && !s.onion_f->empty()) {
            v = onion_verdict_from_scores(*s.onion_f, oc);
        } else {
            throw error(errc::invalid_config,
                        "sample " + s.id +
                            " has no stored onion scores; use a toy or http provider");
        }
        out.push_back(ScoredSample{s.id, s.is_attack, v.decision_score});
    }
    std::sort(out.begin(), out.end(),
              [](const ScoredSample& a, const ScoredSample& b) { return a.id < b.id; });
    return out;
}

int cmd_eval(const std::string& input, const std::string& output, const std::string& csv,
             const std::string& detector, const std::string& scores_path,
             const DetectorFlags& df, const ProviderFlags& pf, double onion_k,
             std::uint64_t seed, std::size_t jobs, const std::string& command) {
    auto samples = read_dump_file(input);
    std::shared_ptr<Provider> provider;
    if (!pf.is_replay()) provider = make_provider(pf.binding());

    std::vector<ScoredSample> scored;
    double threshold = df.tau;
    if (detector == "star") {
        ScoreOptions options;
        options.detector = df.config();
        options.temperature = pf.temperature;
        options.jobs = jobs;
        scored = to_scored_samples(score_samples(samples, provider.get(), options), samples);
    } else if (detector == "onion") {
        scored = onion_scored_samples(samples, provider.get(), OnionConfig{onion_k},
                                      pf.temperature);
        threshold = onion_k;
    } else if (detector == "external") {
        if (scores_path.empty()) {
            throw error(errc::invalid_config, "--scores is required for --detector external");
        }
        scored = external_scores(scores_path, samples);
    } else {
        throw error(errc::invalid_config, "unknown detector: " + detector);
    }

    EvalReport report = evaluate(scored, threshold);
    const std::string report_json = report.to_json_string();
    if (output.empty() || output == "-") std::cout << report_json << "\n";
    else write_text_file(output, report_json + "\n");

    if (!csv.empty()) {
        write_text_file(csv, EvalReport::csv_header() + "\n" + report.csv_row(detector) + "\n");
    }

    if (!output.empty() && output != "-") {
        RunManifest manifest;
        manifest.command = command;
        manifest.seed = seed;
        manifest.corpus_path = input;
        manifest.corpus_hash = hash_file(input);
        manifest.detector = df.config();
        manifest.onion.outlier_k = onion_k;
        if (provider) manifest.provider = pf.binding().to_json_string();
        manifest.created_utc = utc_timestamp();
        write_text_file(output + ".manifest.json", manifest.to_json_string() + "\n");
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const std::string& task, const std::string& attack, std::size_t n_benign,
            std::size_t n_attack, std::uint64_t seed, const std::string& output,
            const std::string& templates_path, double delta, std::size_t run_length,
            const std::string& position, std::size_t length, std::size_t input_length,
            std::size_t warmup_boundary, double temperature, std::size_t n_demos) {
    std::vector<LabeledSample> corpus;
    std::string binding_json;

    if (task == "toy") {
        SynthSpec spec;
        spec.n_benign = n_benign;
        spec.n_attack = n_attack;
        spec.amplification = delta;
        spec.run_length = run_length;
        if (position == "post_warmup") spec.position = AttackPosition::post_warmup;
        else if (position == "pre_warmup") spec.position = AttackPosition::pre_warmup;
        else if (position == "mixed") spec.position = AttackPosition::mixed;
        else throw error(errc::invalid_config, "unknown attack position: " + position);
        spec.response_length = length;
        spec.input_length = input_length;
        spec.warmup_boundary = warmup_boundary;
        spec.temperature = temperature;
        spec.seed = seed;
        SynthResult result = synth_toy_corpus(spec);
        corpus = std::move(result.samples);
        binding_json = result.binding.to_json_string();
    } else {
        const TaskFamily family = task_family_from_string(task);
        const TemplateCatalog catalog = templates_path.empty()
                                            ? default_catalog()
                                            : load_template_catalog(templates_path);
        const std::vector<TaskItem>& bank = item_bank(family);
        char idbuf[64];
        for (std::size_t i = 0; i < n_benign; ++i) {
            LabeledSample s = make_benign(family, i % bank.size(), seed + i, n_demos);
            std::snprintf(idbuf, sizeof(idbuf), "%s-b-%04zu", task.c_str(), i);
            s.id = idbuf;
            corpus.push_back(std::move(s));
        }
        if (n_attack > 0 && attack == "none") {
            throw error(errc::invalid_config, "--attack is required when attack-count > 0");
        }
        for (std::size_t i = 0; i < n_attack; ++i) {
            const AttackKind kind = attack_kind_from_string(attack);
            const AttackTemplate& tmpl = catalog.get(kind, family);
            LabeledSample benign =
                make_benign(family, (i + 7) % bank.size(), seed ^ (0xABCDULL + i), n_demos);
            LabeledSample s = kind == AttackKind::adaptive_bcn
                                  ? apply_adaptive(benign, tmpl, seed + i)
                                  : apply_attack(benign, tmpl, seed + i);
            std::snprintf(idbuf, sizeof(idbuf), "%s-a-%04zu", task.c_str(), i);
            s.id = idbuf;
            corpus.push_back(std::move(s));
        }
    }

    if (output.empty() || output == "-") {
        std::ostringstream buf;
        write_dump(buf, corpus);
        std::cout << buf.str();
    } else {
        write_dump_file(output, corpus);
        if (!binding_json.empty()) {
            write_text_file(output + ".provider.json", binding_json + "\n");
        }
    }
    std::cerr << "wrote " << corpus.size() << " samples\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string& input, const std::string& output, const std::string& csv,
              const std::string& parameter, const std::vector<double>& grid,
              const DetectorFlags& df, const ProviderFlags& pf, std::size_t jobs) {
    if (grid.empty()) throw error(errc::invalid_config, "--grid must not be empty");
    auto samples = read_dump_file(input);

    std::shared_ptr<Provider> provider;
    if (!pf.is_replay()) provider = make_provider(pf.binding());

    ordered_json rows = ordered_json::array();
    std::ostringstream csv_buf;
    csv_buf << EvalReport::csv_header() << "\n";

    auto add_row = [&](double value, const EvalReport& report) {
        ordered_json row = ordered_json::parse(report.to_json_string());
        row["value"] = value;
        rows.push_back(row);
        char label[64];
        std::snprintf(label, sizeof(label), "%s=%g", parameter.c_str(), value);
        csv_buf << report.csv_row(label) << "\n";
    };

    if (parameter == "tau") {
        ScoreOptions options;
        options.detector = df.config();
        options.temperature = pf.temperature;
        options.jobs = jobs;
        auto scored =
            to_scored_samples(score_samples(samples, provider.get(), options), samples);
        SweepResult sr = sweep(scored, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) add_row(grid[i], sr.reports[i]);
    } else if (parameter == "k" || parameter == "warmup") {
        for (double value : grid) {
            DetectorFlags flags = df;
            if (parameter == "k") flags.k = value;
            else flags.warmup = static_cast<std::size_t>(value);
            ScoreOptions options;
            options.detector = flags.config();
            options.temperature = pf.temperature;
            options.jobs = jobs;
            auto scored =
                to_scored_samples(score_samples(samples, provider.get(), options), samples);
            add_row(value, evaluate(scored, flags.tau));
        }
    } else if (parameter == "temperature") {
        if (!provider) {
            throw error(errc::invalid_config,
                        "temperature sweeps re-score and need a toy or http provider");
        }
        for (double value : grid) {
            ScoreOptions options;
            options.detector = df.config();
            options.temperature = value;
            options.reuse_cached_q = false; // cached streams are for the source temperature
            options.jobs = jobs;
            auto scored =
                to_scored_samples(score_samples(samples, provider.get(), options), samples);
            add_row(value, evaluate(scored, df.tau));
        }
    } else {
        throw error(errc::invalid_config, "unknown sweep parameter: " + parameter);
    }

    ordered_json doc;
    doc["parameter"] = parameter;
    doc["rows"] = rows;
    const std::string text = doc.dump(2);
    if (output.empty() || output == "-") std::cout << text << "\n";
    else write_text_file(output, text + "\n");
    if (!csv.empty()) write_text_file(csv, csv_buf.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// render

int cmd_render(const std::string& input, const std::string& output, const std::string& format,
               double tau) {
    auto docs = read_trace_file(input);
    std::string text;
    if (format == "ansi") {
        std::ostringstream buf;
        for (const TraceDoc& doc : docs) buf << render_ansi(doc, tau) << "\n";
        text = buf.str();
    } else if (format == "html") {
        text = render_html(docs, tau);
    } else {
        throw error(errc::invalid_config, "unknown format: " + format);
    }
    if (output.empty() || output == "-") std::cout << text;
    else write_text_file(output, text);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const std::string& input, const std::string& output,
              const std::string& detector, const DetectorFlags& df, const ProviderFlags& pf,
              double onion_k) {
    auto samples = read_dump_file(input);
    if (pf.is_replay()) {
        throw error(errc::invalid_config,
                    "bench measures live provider calls; pass --provider toy/http or "
                    "--provider-config");
    }

    ordered_json table = ordered_json::array();
    auto run_star = [&]() {
        auto provider = make_provider(pf.binding());
        const auto t0 = std::chrono::steady_clock::now();
        ScoreOptions options;
        options.detector = df.config();
        options.temperature = pf.temperature;
        score_samples(samples, provider.get(), options);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        ordered_json row;
        row["detector"] = "star";
        row["samples"] = samples.size();
        row["q_pass_calls"] = provider->counters().q();
        row["p_pass_calls"] = provider->counters().p();
        row["total_calls"] = provider->counters().total();
        row["calls_per_sample"] =
            static_cast<double>(provider->counters().total()) /
            static_cast<double>(samples.size());
        row["wall_ms"] = ms;
        table.push_back(row);
    };
    auto run_onion = [&]() {
        auto provider = make_provider(pf.binding());
        const auto t0 = std::chrono::steady_clock::now();
        for (const LabeledSample& s : samples) {
            onion_detect(whitespace_tokens(s.user_input), OnionConfig{onion_k}, *provider,
                         pf.temperature);
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        ordered_json row;
        row["detector"] = "onion";
        row["samples"] = samples.size();
        row["q_pass_calls"] = provider->counters().q();
        row["p_pass_calls"] = provider->counters().p();
        row["total_calls"] = provider->counters().total();
        row["calls_per_sample"] =
            static_cast<double>(provider->counters().total()) /
            static_cast<double>(samples.size());
        row["wall_ms"] = ms;
        table.push_back(row);
    };

    if (detector == "star") run_star();
    else if (detector == "onion") run_onion();
    else if (detector == "both") {
        run_star();
        run_onion();
    } else {
        throw error(errc::invalid_config, "unknown detector: " + detector);
    }

    const std::string text = table.dump(2);
    if (output.empty() || output == "-") std::cout << text << "\n";
    else write_text_file(output, text + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// serve

std::atomic<bool> g_stop{false};
void handle_signal(int) { g_stop.store(true); }

int cmd_serve(const std::string& config_path, const std::string& host, int port) {
    ServiceConfig cfg;
    if (!config_path.empty()) cfg = ServiceConfig::from_file(config_path);
    cfg.apply_env_overrides();
    if (!host.empty()) cfg.host = host;
    if (port != 0) cfg.port = port;

    DetectService service(std::move(cfg), &std::cout);
    const int bound = service.start();
    std::cerr << "listening on " << service.config().host << ":" << bound << "\n";

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    service.stop();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transition-amplification anomaly detector for reasoning streams"};
    app.set_config("--config", "",
                   "key/value config file mirroring the flags ([subcommand] sections)");
    app.fallthrough();
    app.require_subcommand(1);

    std::string input, output, csv, format = "ansi";
    std::uint64_t seed = 1;
    std::size_t jobs = 1;

    // score
    auto* score = app.add_subcommand("score", "score a dump into per-sample traces");
    DetectorFlags score_df;
    ProviderFlags score_pf;
    score->add_option("--input", input, "replay dump (JSON-lines)");
    score->add_option("--output", output, "trace output path ('-' for stdout)");
    score->add_option("--seed", seed, "run seed (recorded only)");
    score->add_option("--jobs", jobs, "parallel scoring workers");
    add_detector_flags(score, score_df);
    add_provider_flags(score, score_pf);

    // eval
    auto* eval = app.add_subcommand("eval", "end-to-end evaluation with the metric family");
    DetectorFlags eval_df;
    ProviderFlags eval_pf;
    std::string eval_detector = "star", scores_path;
    double onion_k = 1.5;
    eval->add_option("--input", input, "replay dump");
    eval->add_option("--output", output, "report JSON path");
    eval->add_option("--csv", csv, "also write a CSV row");
    eval->add_option("--detector", eval_detector, "star | onion | external")
        ->check(CLI::IsMember({"star", "onion", "external"}));
    eval->add_option("--scores", scores_path, "external per-sample scores file");
    eval->add_option("--onion-k", onion_k, "onion z-score threshold");
    eval->add_option("--seed", seed, "run seed (recorded in the manifest)");
    eval->add_option("--jobs", jobs, "parallel scoring workers");
    add_detector_flags(eval, eval_df);
    add_provider_flags(eval, eval_pf);

    // gen
    auto* gen = app.add_subcommand("gen", "generate labeled corpora");
    std::string gen_task = "toy", gen_attack = "none", templates_path, position =
        "post_warmup";
    std::size_t n_benign = 100, n_attack = 100, run_length = 10, length = 48,
                input_length = 32, warmup_boundary = 10, n_demos = 1;
    double delta = 3.0, gen_temperature = 1.0;
    gen->add_option("--task", gen_task,
                    "toy | gsm8k_like | asdiv_like | csqa_like | strategyqa_like | "
                    "letter_like");
    gen->add_option("--attack", gen_attack, "none | bcn | bcp | inst | adaptive_bcn");
    gen->add_option("--benign", n_benign, "benign sample count");
    gen->add_option("--attack-count", n_attack, "attack sample count");
    gen->add_option("--seed", seed, "generation seed");
    gen->add_option("--output", output, "dump output path");
    gen->add_option("--templates", templates_path, "template catalog file");
    gen->add_option("--delta", delta, "toy: per-token evidence of the planted run");
    gen->add_option("--run-length", run_length, "toy: amplified run length");
    gen->add_option("--attack-position", position, "toy: post_warmup | pre_warmup | mixed");
    gen->add_option("--length", length, "toy: response token count");
    gen->add_option("--input-length", input_length, "toy: input token count");
    gen->add_option("--warmup-boundary", warmup_boundary, "toy: placement boundary");
    gen->add_option("--temperature", gen_temperature, "toy: generation temperature");
    gen->add_option("--demos", n_demos, "prompt tasks: demonstrations per sample");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate across a parameter grid");
    DetectorFlags sweep_df;
    ProviderFlags sweep_pf;
    std::string parameter = "tau";
    std::vector<double> grid;
    sweep_cmd->add_option("--input", input, "replay dump");
    sweep_cmd->add_option("--output", output, "table JSON path");
    sweep_cmd->add_option("--csv", csv, "also write CSV rows");
    sweep_cmd->add_option("--param", parameter, "tau | k | warmup | temperature");
    sweep_cmd->add_option("--grid", grid, "grid values")->delimiter(',');
    sweep_cmd->add_option("--seed", seed, "run seed (recorded only)");
    sweep_cmd->add_option("--jobs", jobs, "parallel scoring workers");
    add_detector_flags(sweep_cmd, sweep_df);
    add_provider_flags(sweep_cmd, sweep_pf);

    // render
    auto* render = app.add_subcommand("render", "render traces as a heatmap");
    double render_tau = 8.5;
    render->add_option("--input", input, "trace file from 'score'");
    render->add_option("--output", output, "output path ('-' for stdout)");
    render->add_option("--format", format, "ansi | html")
        ->check(CLI::IsMember({"ansi", "html"}));
    render->add_option("--tau", render_tau, "threshold for the color ramp");

    // bench
    auto* bench = app.add_subcommand("bench", "measure provider-call overhead");
    DetectorFlags bench_df;
    ProviderFlags bench_pf;
    std::string bench_detector = "both";
    double bench_onion_k = 1.5;
    bench->add_option("--input", input, "replay dump");
    bench->add_option("--output", output, "table JSON path");
    bench->add_option("--detector", bench_detector, "star | onion | both")
        ->check(CLI::IsMember({"star", "onion", "both"}));
    bench->add_option("--onion-k", bench_onion_k, "onion z-score threshold");
    add_detector_flags(bench, bench_df);
    add_provider_flags(bench, bench_pf);

    // serve
    auto* serve = app.add_subcommand("serve", "run the HTTP detection service");
    std::string service_config, serve_host;
    int serve_port = 0;
    serve->add_option("--service-config", service_config, "service config JSON");
    serve->add_option("--host", serve_host, "listen address override");
    serve->add_option("--port", serve_port, "listen port override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        auto need_input = [&]() {
            if (input.empty()) throw error(errc::invalid_config, "--input is required");
        };
        if (score->parsed()) {
            need_input();
            return cmd_score(input, output, score_df, score_pf, jobs);
        }
        if (eval->parsed()) {
            need_input();
            return cmd_eval(input, output, csv, eval_detector, scores_path, eval_df, eval_pf,
                            onion_k, seed, jobs, join_command(argc, argv));
        }
        if (gen->parsed()) {
            return cmd_gen(gen_task, gen_attack, n_benign, n_attack, seed, output,
                           templates_path, delta, run_length, position, length, input_length,
                           warmup_boundary, gen_temperature, n_demos);
        }
        if (sweep_cmd->parsed()) {
            need_input();
            return cmd_sweep(input, output, csv, parameter, grid, sweep_df, sweep_pf, jobs);
        }
        if (render->parsed()) {
            need_input();
            return cmd_render(input, output, format, render_tau);
        }
        if (bench->parsed()) {
            need_input();
            return cmd_bench(input, output, bench_detector, bench_df, bench_pf,
                             bench_onion_k);
        }
        if (serve->parsed()) {
            return cmd_serve(service_config, serve_host, serve_port);
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == errc::transport ? kExitTransport : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
