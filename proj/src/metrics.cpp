#include "star/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "star/errors.hpp"

namespace star {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_scores(std::span<const ScoredSample> samples) {
    for (const ScoredSample& s : samples) {
        if (!std::isfinite(s.score)) {
            throw error(errc::malformed_record, "non-finite score for sample " + s.id);
        }
    }
}

std::pair<std::size_t, std::size_t> class_counts(std::span<const ScoredSample> samples) {
    std::size_t attack = 0, benign = 0;
    for (const ScoredSample& s : samples) (s.is_attack ? attack : benign)++;
    return {attack, benign};
}

} // namespace

Confusion confusion(std::span<const ScoredSample> samples, double threshold) {
    check_scores(samples);
    Confusion c;
    for (const ScoredSample& s : samples) {
        const bool flagged = s.score > threshold;
        if (s.is_attack) {
            (flagged ? c.tp : c.fn)++;
        } else {
            (flagged ? c.fp : c.tn)++;
        }
    }
    return c;
}

double auroc(std::span<const ScoredSample> samples) {
    check_scores(samples);
    auto [n_attack, n_benign] = class_counts(samples);
    if (n_attack == 0 || n_benign == 0) {
        throw error(errc::undefined_metric, "auroc needs both classes present");
    }

    // Rank-sum with average ranks over ties; equivalent to pairwise
    // enumeration with half credit for ties.
    std::vector<const ScoredSample*> sorted;
    sorted.reserve(samples.size());
    for (const ScoredSample& s : samples) sorted.push_back(&s);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ScoredSample* a, const ScoredSample* b) {
                         return a->score < b->score;
                     });

    double rank_sum_attack = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j]->score == sorted[i]->score) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j); // 1-based
        for (std::size_t k = i; k < j; ++k) {
            if (sorted[k]->is_attack) rank_sum_attack += avg_rank;
        }
        i = j;
    }
    const double na = static_cast<double>(n_attack);
    const double nb = static_cast<double>(n_benign);
    const double u = rank_sum_attack - na * (na + 1.0) / 2.0;
    return u / (na * nb);
}

double recall_at_fpr(std::span<const ScoredSample> samples, double fpr_budget) {
    check_scores(samples);
    auto [n_attack, n_benign] = class_counts(samples);
    if (n_attack == 0 || n_benign == 0) {
        throw error(errc::undefined_metric, "recall@fpr needs both classes present");
    }
    if (!(fpr_budget >= 0.0)) {
        throw error(errc::invalid_config, "fpr budget must be >= 0");
    }

    std::vector<double> benign;
    benign.reserve(n_benign);
    for (const ScoredSample& s : samples) {
        if (!s.is_attack) benign.push_back(s.score);
    }
    std::sort(benign.begin(), benign.end(), std::greater<>());

    const std::size_t allowed =
        static_cast<std::size_t>(std::floor(fpr_budget * static_cast<double>(n_benign)));

    std::size_t recalled = 0;
    if (allowed >= benign.size()) {
        // Budget admits every benign sample; every attack is recalled.
        recalled = n_attack;
    } else {
        // Smallest threshold keeping strictly-greater benign count <= allowed.
        const double threshold = benign[allowed];
        for (const ScoredSample& s : samples) {
            if (s.is_attack && s.score > threshold) ++recalled;
        }
    }
    return static_cast<double>(recalled) / static_cast<double>(n_attack);
}

double f1(const Confusion& c) {
    const double denom = static_cast<double>(2 * c.tp + c.fp + c.fn);
    if (denom == 0.0) return 0.0;
    return 2.0 * static_cast<double>(c.tp) / denom;
}

double bacc(const Confusion& c) {
    const double tpr =
        (c.tp + c.fn) == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    const double tnr =
        (c.tn + c.fp) == 0 ? 0.0 : static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    return 0.5 * (tpr + tnr);
}

double mcc(const Confusion& c) {
    const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
    const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
    const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denom == 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(denom);
}

EvalReport evaluate(std::span<const ScoredSample> samples, double threshold) {
    EvalReport r;
    r.threshold = threshold;
    r.counts = confusion(samples, threshold);
    r.f1 = f1(r.counts);
    r.bacc = bacc(r.counts);
    r.mcc = mcc(r.counts);
    r.auroc = auroc(samples);
    for (double budget : {0.01, 0.05, 0.10}) {
        r.recall_at_fpr[budget] = recall_at_fpr(samples, budget);
    }
    return r;
}

SweepResult sweep(std::span<const ScoredSample> samples, std::span<const double> grid) {
    if (grid.empty()) throw error(errc::invalid_config, "threshold grid must not be empty");
    SweepResult out;
    out.grid.assign(grid.begin(), grid.end());
    out.reports.reserve(grid.size());
    for (double t : grid) out.reports.push_back(evaluate(samples, t));

    out.best_index = 0;
    for (std::size_t i = 1; i < out.reports.size(); ++i) {
        const EvalReport& best = out.reports[out.best_index];
        const EvalReport& cand = out.reports[i];
        if (cand.f1 > best.f1 ||
            (cand.f1 == best.f1 && cand.threshold < best.threshold)) {
            out.best_index = i;
        }
    }
    return out;
}

double asr_delta(double standard_asr, double adaptive_asr) {
    return adaptive_asr - standard_asr;
}

namespace {

const char* budget_key(double budget) {
    if (budget == 0.01) return "0.01";
    if (budget == 0.05) return "0.05";
    if (budget == 0.10) return "0.10";
    return "other";
}

} // namespace

std::string EvalReport::to_json_string() const {
    ordered_json j;
    j["threshold"] = threshold;
    j["tp"] = counts.tp;
    j["fp"] = counts.fp;
    j["tn"] = counts.tn;
    j["fn"] = counts.fn;
    j["f1"] = f1;
    j["auroc"] = auroc;
    ordered_json r;
    for (const auto& [budget, value] : recall_at_fpr) r[budget_key(budget)] = value;
    j["recall_at_fpr"] = r;
    j["bacc"] = bacc;
    j["mcc"] = mcc;
    return j.dump();
}

EvalReport EvalReport::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw error(errc::io, std::string("report parse: ") + e.what());
    }
    EvalReport r;
    r.threshold = j.at("threshold").get<double>();
    r.counts.tp = j.at("tp").get<std::size_t>();
    r.counts.fp = j.at("fp").get<std::size_t>();
    r.counts.tn = j.at("tn").get<std::size_t>();
    r.counts.fn = j.at("fn").get<std::size_t>();
    r.f1 = j.at("f1").get<double>();
    r.auroc = j.at("auroc").get<double>();
    for (auto& [key, value] : j.at("recall_at_fpr").items()) {
        r.recall_at_fpr[std::stod(key)] = value.get<double>();
    }
    r.bacc = j.at("bacc").get<double>();
    r.mcc = j.at("mcc").get<double>();
    return r;
}

std::string EvalReport::csv_header() {
    // Column order mirrors the usual comparison tables: F1, AUC, R@5.
    return "label,f1,auc,r_at_5,r_at_1,r_at_10,bacc,mcc,threshold,tp,fp,tn,fn";
}

std::string EvalReport::csv_row(const std::string& label) const {
    char buf[256];
    auto rec = [&](double b) {
        auto it = recall_at_fpr.find(b);
        return it == recall_at_fpr.end() ? 0.0 : it->second;
    };
    std::snprintf(buf, sizeof(buf), "%s,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%g,%zu,%zu,%zu,%zu",
                  label.c_str(), f1, auroc, rec(0.05), rec(0.01), rec(0.10), bacc, mcc,
                  threshold, counts.tp, counts.fp, counts.tn, counts.fn);
    return buf;
}

} // namespace star
