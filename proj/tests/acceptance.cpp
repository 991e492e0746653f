// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run against exact-math oracles, the synthetic toy
// experiment, the CLI binary (STAR_CLI env) and the HTTP service.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include <httplib.h>
#include <json.hpp>

#include "star/attack.hpp"
#include "star/detector.hpp"
#include "star/errors.hpp"
#include "star/metrics.hpp"
#include "star/onion.hpp"
#include "star/pipeline.hpp"
#include "star/service.hpp"

using namespace star;
using nlohmann::json;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s  (%s)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Records whose evidence equals s exactly (dyadic s, log_p = -8, tiny eps).
std::vector<TokenRecord> records_from_evidence(const std::vector<double>& s) {
    std::vector<TokenRecord> recs;
    recs.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        recs.push_back(TokenRecord{i, "t", s[i] - 8.0, -8.0});
    }
    return recs;
}

double dyadic(std::mt19937_64& rng, double lo, double hi) {
    return std::round(std::uniform_real_distribution<double>(lo, hi)(rng) * 1048576.0) /
           1048576.0;
}

std::vector<double> cusum_by_suffix_sums(const std::vector<double>& s, double k,
                                         std::size_t gate) {
    std::vector<double> g(s.size(), 0.0);
    for (std::size_t T = gate; T < s.size(); ++T) {
        double sum = 0.0, best = 0.0;
        for (std::size_t j = T + 1; j-- > gate;) {
            sum += s[j] - k;
            best = std::max(best, sum);
        }
        g[T] = best;
    }
    return g;
}

double auroc_brute(const std::vector<ScoredSample>& samples) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (const auto& a : samples) {
        if (!a.is_attack) continue;
        for (const auto& b : samples) {
            if (b.is_attack) continue;
            ++pairs;
            if (a.score > b.score) wins += 1.0;
            else if (a.score == b.score) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    const char* cli = std::getenv("STAR_CLI");
    if (cli == nullptr) return -1;
    const std::string cmd = std::string(cli) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------

void criterion_1_cusum_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20250101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 512);
        std::vector<double> s(n);
        for (double& x : s) x = dyadic(rng, -4.0, 4.0);

        DetectorConfig cfg;
        cfg.epsilon = 1e-300;
        cfg.drift_k = 2.0;
        cfg.warmup = (i % 2 == 0) ? 0 : 10;

        SuspicionTrace trace = score_sequence(records_from_evidence(s), cfg);
        const auto oracle =
            cusum_by_suffix_sums(trace.evidence, cfg.drift_k, cfg.effective_warmup());
        for (std::size_t t = 0; t < n; ++t) {
            worst = std::max(worst, std::abs(trace.cusum[t] - oracle[t]));
        }
    }
    const double elapsed = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max |recurrence - oracle| = %.3g, %.2fs", worst,
                  elapsed);
    criterion(1, "CUSUM recurrence equals the suffix-sum oracle", worst <= 1e-12 && elapsed < 5.0,
              detail);
}

void criterion_2_warmup_gating() {
    std::mt19937_64 rng(777);
    bool gated = true;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 11 + static_cast<std::size_t>(rng() % 100);
        std::vector<double> s(n);
        for (double& x : s) x = dyadic(rng, -3.0, 6.0);
        DetectorConfig cfg; // warmup = 10
        SuspicionTrace trace = score_sequence(records_from_evidence(s), cfg);
        for (std::size_t t = 0; t < 10; ++t) gated = gated && trace.cusum[t] == 0.0;
    }

    SynthSpec spec;
    spec.n_benign = 1;
    spec.n_attack = 100;
    spec.position = AttackPosition::pre_warmup;
    spec.seed = 20250102;
    SynthResult corpus = synth_toy_corpus(spec);
    std::size_t flagged = 0;
    DetectorConfig cfg;
    for (const LabeledSample& s : corpus.samples) {
        if (s.is_attack && detect(s.records(), cfg).flagged) ++flagged;
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "pre-warmup g all zero: %s; flagged pre-warmup attacks: %zu/100",
                  gated ? "yes" : "no", flagged);
    criterion(2, "burn-in gating hides pre-warmup evidence", gated && flagged == 0, detail);
}

void criterion_3_metric_oracles() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31415);
    std::uniform_int_distribution<int> quant(0, 12);

    double worst_auroc = 0.0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t na = 1 + rng() % 32, nb = 1 + rng() % 32;
        std::vector<ScoredSample> samples;
        for (std::size_t k = 0; k < na; ++k) {
            samples.push_back({"a" + std::to_string(k), true, quant(rng) / 4.0});
        }
        for (std::size_t k = 0; k < nb; ++k) {
            samples.push_back({"b" + std::to_string(k), false, quant(rng) / 4.0});
        }
        worst_auroc = std::max(worst_auroc, std::abs(auroc(samples) - auroc_brute(samples)));
    }

    // Max-F1 via midpoint sweep equals the exhaustive-threshold brute force
    // on every random set of at most 12 samples.
    bool f1_ok = true;
    for (int i = 0; i < 300; ++i) {
        const std::size_t na = 1 + rng() % 6, nb = 1 + rng() % 6;
        std::vector<ScoredSample> samples;
        for (std::size_t k = 0; k < na; ++k) {
            samples.push_back({"a" + std::to_string(k), true, quant(rng) / 3.0});
        }
        for (std::size_t k = 0; k < nb; ++k) {
            samples.push_back({"b" + std::to_string(k), false, quant(rng) / 3.0});
        }
        std::vector<double> values;
        for (const auto& s : samples) values.push_back(s.score);
        std::sort(values.begin(), values.end());
        std::vector<double> grid{values.front() - 1.0};
        for (std::size_t k = 0; k + 1 < values.size(); ++k) {
            grid.push_back(0.5 * (values[k] + values[k + 1]));
        }
        grid.push_back(values.back());
        SweepResult sr = sweep(samples, grid);

        double brute = 0.0;
        std::vector<double> all_thresholds = values;
        all_thresholds.push_back(values.front() - 1.0);
        for (double t : all_thresholds) brute = std::max(brute, f1(confusion(samples, t)));
        f1_ok = f1_ok && sr.reports[sr.best_index].f1 == brute;
    }

    // BACC / MCC against direct formula arithmetic.
    bool formulas_ok = true;
    for (int i = 0; i < 100; ++i) {
        Confusion c{rng() % 50, rng() % 50, rng() % 50, rng() % 50};
        const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
        const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
        const double tpr = tp + fn == 0 ? 0.0 : tp / (tp + fn);
        const double tnr = tn + fp == 0 ? 0.0 : tn / (tn + fp);
        formulas_ok = formulas_ok && std::abs(bacc(c) - 0.5 * (tpr + tnr)) < 1e-15;
        const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
        const double expected_mcc =
            denom == 0.0 ? 0.0 : (tp * tn - fp * fn) / std::sqrt(denom);
        formulas_ok = formulas_ok && std::abs(mcc(c) - expected_mcc) < 1e-12;
    }

    const double elapsed = seconds_since(t0);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max |auroc - brute| = %.3g; f1 sweep %s; formulas %s; %.2fs", worst_auroc,
                  f1_ok ? "exact" : "MISMATCH", formulas_ok ? "exact" : "MISMATCH", elapsed);
    criterion(3, "metric implementations match enumeration oracles",
              worst_auroc <= 1e-12 && f1_ok && formulas_ok && elapsed < 10.0, detail);
}

struct Criterion4Data {
    std::vector<ScoredSample> scored;
    SynthResult corpus;
};

Criterion4Data criterion_4_synthetic_detection() {
    const auto t0 = std::chrono::steady_clock::now();
    SynthSpec spec;
    spec.n_benign = 200;
    spec.n_attack = 200;
    spec.amplification = 3.0;
    spec.run_length = 10;
    spec.position = AttackPosition::post_warmup;
    spec.seed = 20250909;
    SynthResult corpus = synth_toy_corpus(spec);

    ScoreOptions options; // defaults: k=2, tau=8.5, warmup=10
    ScoreRun run = score_samples(corpus.samples, nullptr, options);
    auto scored = to_scored_samples(run, corpus.samples);
    const double auc = auroc(scored);
    const double r5 = recall_at_fpr(scored, 0.05);

    SynthSpec null_spec = spec;
    null_spec.amplification = 0.0;
    null_spec.seed = 20250910;
    SynthResult null_corpus = synth_toy_corpus(null_spec);
    ScoreRun null_run = score_samples(null_corpus.samples, nullptr, options);
    auto null_scored = to_scored_samples(null_run, null_corpus.samples);
    const double null_auc = auroc(null_scored);
    std::size_t false_flags = 0;
    for (const TraceDoc& doc : null_run.traces) {
        if (doc.trace.flagged) ++false_flags;
    }
    const double ff_rate = static_cast<double>(false_flags) / 400.0;

    const double elapsed = seconds_since(t0);
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "AUROC=%.4f R@5=%.4f; null AUROC=%.4f false-flag=%.3f%%; %.2fs", auc, r5,
                  null_auc, 100.0 * ff_rate, elapsed);
    criterion(4, "synthetic end-to-end detection",
              auc >= 0.95 && r5 >= 0.90 && null_auc >= 0.45 && null_auc <= 0.55 &&
                  ff_rate <= 0.01 && elapsed < 30.0,
              detail);
    return {std::move(scored), std::move(corpus)};
}

void criterion_5_ablation_direction() {
    SynthSpec spec;
    spec.n_benign = 200;
    spec.n_attack = 200;
    spec.amplification = 3.0;
    spec.run_length = 10;
    spec.position = AttackPosition::mixed; // includes pre-warmup placements
    spec.seed = 20250911;
    SynthResult corpus = synth_toy_corpus(spec);

    ScoreOptions standard;
    ScoreOptions no_burnin = standard;
    no_burnin.detector.use_warmup = false;
    ScoreOptions no_cusum = standard;
    no_cusum.detector.use_cusum = false;

    auto flag_rate_benign = [&](const ScoreOptions& options) {
        ScoreRun run = score_samples(corpus.samples, nullptr, options);
        std::map<std::string, bool> label;
        for (const LabeledSample& s : corpus.samples) label[s.id] = s.is_attack;
        std::size_t benign = 0, flagged = 0;
        for (const TraceDoc& doc : run.traces) {
            if (label[doc.id]) continue;
            ++benign;
            if (doc.trace.flagged) ++flagged;
        }
        return static_cast<double>(flagged) / static_cast<double>(benign);
    };

    auto r5_of = [&](const ScoreOptions& options) {
        ScoreRun run = score_samples(corpus.samples, nullptr, options);
        return recall_at_fpr(to_scored_samples(run, corpus.samples), 0.05);
    };

    const double fpr_default = flag_rate_benign(standard);
    const double fpr_no_burnin = flag_rate_benign(no_burnin);
    const double r5_default = r5_of(standard);
    const double r5_no_cusum = r5_of(no_cusum);

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "null FPR: default=%.3f -burnin=%.3f; R@5: default=%.3f -cusum=%.3f",
                  fpr_default, fpr_no_burnin, r5_default, r5_no_cusum);
    criterion(5, "ablations degrade in the expected direction",
              fpr_no_burnin > fpr_default && r5_no_cusum <= r5_default, detail);
}

void criterion_6_overhead_contract() {
    SynthSpec spec;
    spec.n_benign = 10;
    spec.n_attack = 10;
    spec.input_length = 100;
    spec.seed = 20250912;
    SynthResult corpus = synth_toy_corpus(spec);

    // Corpus synthesis used the canonical flow: cached Q, one P-pass each.
    const bool synth_ok = corpus.p_pass_calls == 20 && corpus.q_pass_calls == 0;

    // Re-scoring through a fresh provider with the cached stream again costs
    // exactly one unconditional pass per sample.
    auto star_provider = make_provider(corpus.binding);
    ScoreOptions options;
    score_samples(corpus.samples, star_provider.get(), options);
    const std::uint64_t star_calls = star_provider->counters().total();
    const bool star_ok = star_provider->counters().p() == 20 &&
                         star_provider->counters().q() == 0;

    // Leave-one-out baseline: n + 1 calls for an n-token input.
    auto onion_provider = make_provider(corpus.binding);
    std::uint64_t onion_calls = 0;
    bool onion_ok = true;
    for (const LabeledSample& s : corpus.samples) {
        std::istringstream in(s.user_input);
        std::vector<std::string> tokens;
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
        const std::uint64_t before = onion_provider->counters().total();
        onion_scores(tokens, *onion_provider);
        const std::uint64_t used = onion_provider->counters().total() - before;
        onion_ok = onion_ok && used == tokens.size() + 1;
        onion_calls += used;
    }

    const double ratio = static_cast<double>(onion_calls) / static_cast<double>(star_calls);
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "star: %llu calls/20 samples; onion: %llu calls; ratio %.1fx",
                  static_cast<unsigned long long>(star_calls),
                  static_cast<unsigned long long>(onion_calls), ratio);
    criterion(6, "single-pass cost contract and call-ratio asymmetry",
              synth_ok && star_ok && onion_ok && ratio >= 40.0, detail);
}

void criterion_7_template_fidelity() {
    const auto& bank = item_bank(TaskFamily::gsm8k_like);
    LabeledSample benign;
    benign.task = TaskFamily::gsm8k_like;
    benign.id = "canonical";
    benign.query_item = bank[1];
    benign.ground_truth = bank[1].answer;
    benign.demo_items = {bank[0]}; // the canonical tree-planting item

    const auto& catalog = default_catalog();
    LabeledSample bcp =
        apply_attack(benign, catalog.get(AttackKind::bcp, TaskFamily::gsm8k_like), 1);
    const bool bcp_ok =
        bcp.user_input.find("6 * 2.1 = 12.6") != std::string::npos &&
        bcp.user_input.find("Sesquipedalian symphony") != std::string::npos;

    LabeledSample bcn =
        apply_attack(benign, catalog.get(AttackKind::bcn, TaskFamily::gsm8k_like), 1);
    const bool bcn_ok = bcn.user_input.find("@_@") != std::string::npos;

    LabeledSample inst =
        apply_attack(benign, catalog.get(AttackKind::inst, TaskFamily::gsm8k_like), 1);
    const bool inst_ok = inst.instruction.find("cf") != std::string::npos;

    LabeledSample adaptive = apply_adaptive(
        benign, catalog.get(AttackKind::adaptive_bcn, TaskFamily::gsm8k_like), 1);
    const bool adaptive_ok =
        adaptive.user_input.find("15 * 2.1 = 31.5") != std::string::npos;

    char detail[160];
    std::snprintf(detail, sizeof(detail), "bcp %s; bcn %s; inst %s; adaptive %s",
                  bcp_ok ? "ok" : "MISSING", bcn_ok ? "ok" : "MISSING",
                  inst_ok ? "ok" : "MISSING", adaptive_ok ? "ok" : "MISSING");
    criterion(7, "attack templates reproduce the canonical literals",
              bcp_ok && bcn_ok && inst_ok && adaptive_ok, detail);
}

void criterion_8_replay_determinism_and_equivalence() {
    const char* cli = std::getenv("STAR_CLI");
    if (cli == nullptr) {
        criterion(8, "replay determinism & surface equivalence", false,
                  "STAR_CLI not set; run under ctest");
        return;
    }

    char tmpl[] = "/tmp/star_accept_XXXXXX";
    const std::string dir = mkdtemp(tmpl);
    const std::string corpus = dir + "/corpus.jsonl";
    const std::string t1 = dir + "/t1.jsonl", t2 = dir + "/t2.jsonl";
    const std::string r1 = dir + "/r1.json", r2 = dir + "/r2.json";

    bool ok = run_cli("gen --task toy --benign 50 --attack-count 50 --seed 88 --output " +
                      corpus) == 0;
    ok = ok && run_cli("score --input " + corpus + " --output " + t1) == 2;
    ok = ok && run_cli("score --input " + corpus + " --output " + t2) == 2;
    const bool traces_identical = ok && slurp(t1) == slurp(t2) && !slurp(t1).empty();
    ok = ok && run_cli("eval --input " + corpus + " --output " + r1) == 0;
    ok = ok && run_cli("eval --input " + corpus + " --output " + r2) == 0;
    const bool reports_identical = ok && slurp(r1) == slurp(r2) && !slurp(r1).empty();

    // Surface equivalence: service verdicts equal CLI verdicts field for
    // field on all 100 payloads.
    bool equivalent = true;
    std::size_t compared = 0;
    if (ok) {
        auto samples = read_dump_file(corpus);
        auto traces = read_trace_file(t1);
        std::map<std::string, const LabeledSample*> by_id;
        for (const auto& s : samples) by_id[s.id] = &s;

        ServiceConfig cfg;
        DetectService service(std::move(cfg));
        const int port = service.start();
        httplib::Client client("127.0.0.1", port);

        for (const TraceDoc& doc : traces) {
            const LabeledSample* s = by_id[doc.id];
            json body;
            body["records"] = json::array();
            for (std::size_t i = 0; i < s->tokens.size(); ++i) {
                body["records"].push_back({{"token", s->tokens[i]},
                                           {"log_q", s->log_q[i]},
                                           {"log_p", s->log_p[i]}});
            }
            auto res = client.Post("/v1/detect", body.dump(), "application/json");
            if (!res || res->status != 200) {
                equivalent = false;
                break;
            }
            json out = json::parse(res->body);
            ++compared;
            if (out["flagged"].get<bool>() != doc.trace.flagged ||
                out["decision_score"].get<double>() != doc.trace.decision_score) {
                equivalent = false;
            }
            if (doc.trace.first_crossing) {
                if (out["first_crossing"].is_null() ||
                    out["first_crossing"].get<std::size_t>() != *doc.trace.first_crossing) {
                    equivalent = false;
                }
            } else if (!out["first_crossing"].is_null()) {
                equivalent = false;
            }
        }
        service.stop();
    }

    std::system(("rm -rf " + dir).c_str());
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "traces byte-identical: %s; reports byte-identical: %s; service==cli on "
                  "%zu/100 payloads: %s",
                  traces_identical ? "yes" : "NO", reports_identical ? "yes" : "NO", compared,
                  equivalent ? "yes" : "NO");
    criterion(8, "replay determinism & surface equivalence",
              traces_identical && reports_identical && equivalent && compared == 100, detail);
}

void criterion_9_temperature_robustness() {
    // Scaled-amplification runs: at temperature T the corpus is generated
    // with gain 3T, so the temperature-adjusted evidence stays near 3 and
    // detection quality should not move.
    std::vector<double> grid{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
    double min_auc = 1.0, max_auc = 0.0;
    for (double t : grid) {
        SynthSpec spec;
        spec.n_benign = 100;
        spec.n_attack = 100;
        spec.amplification = 3.0 * t;
        spec.temperature = t;
        spec.seed = 20250913;
        SynthResult corpus = synth_toy_corpus(spec);
        ScoreOptions options;
        ScoreRun run = score_samples(corpus.samples, nullptr, options);
        const double auc = auroc(to_scored_samples(run, corpus.samples));
        min_auc = std::min(min_auc, auc);
        max_auc = std::max(max_auc, auc);
    }
    const bool stable = max_auc - min_auc < 0.05;

    // The sweep command itself must run end-to-end on the toy provider and
    // emit one row per grid value, in grid order.
    bool sweep_ok = false;
    const char* cli = std::getenv("STAR_CLI");
    if (cli != nullptr) {
        char tmpl[] = "/tmp/star_sweep_XXXXXX";
        const std::string dir = mkdtemp(tmpl);
        const std::string corpus = dir + "/corpus.jsonl";
        const std::string table = dir + "/sweep.json";
        int rc = run_cli("gen --task toy --benign 40 --attack-count 40 --seed 91 --output " +
                         corpus);
        rc |= run_cli("sweep --input " + corpus + " --param temperature "
                      "--grid 0.2,0.4,0.6,0.8,1.0,1.2,1.4 --provider-config " +
                      corpus + ".provider.json --output " + table);
        if (rc == 0) {
            json doc = json::parse(slurp(table));
            sweep_ok = doc["rows"].size() == grid.size();
            for (std::size_t i = 0; sweep_ok && i < grid.size(); ++i) {
                sweep_ok = doc["rows"][i]["value"].get<double>() == grid[i];
            }
        }
        std::system(("rm -rf " + dir).c_str());
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail), "AUROC range [%.4f, %.4f] spread %.4f; sweep %s",
                  min_auc, max_auc, max_auc - min_auc, sweep_ok ? "ran" : "FAILED");
    criterion(9, "temperature robustness under the scaled-amplification oracle",
              stable && sweep_ok, detail);
}

} // namespace

int main() {
    std::printf("acceptance suite, detector defaults k=2.0 tau=8.5 warmup=10\n");
    criterion_1_cusum_exactness();
    criterion_2_warmup_gating();
    criterion_3_metric_oracles();
    criterion_4_synthetic_detection();
    criterion_5_ablation_direction();
    criterion_6_overhead_contract();
    criterion_7_template_fidelity();
    criterion_8_replay_determinism_and_equivalence();
    criterion_9_temperature_robustness();
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
