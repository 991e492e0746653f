#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace star {

struct ScoredSample {
    std::string id;
    bool is_attack = false;
    double score = 0.0;
};

struct Confusion {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::size_t total() const noexcept { return tp + fp + tn + fn; }
};

// Flagging rule everywhere: score > threshold (strict).
Confusion confusion(std::span<const ScoredSample> samples, double threshold);

// Mann-Whitney formulation: probability that a random attack sample outranks
// a random benign one, ties counted half. Throws undefined_metric on
// single-class input.
double auroc(std::span<const ScoredSample> samples);

// Smallest threshold whose benign false-positive rate stays within budget;
// returns attack recall there. Empirical FPR, no interpolation.
double recall_at_fpr(std::span<const ScoredSample> samples, double fpr_budget);

double f1(const Confusion& c);
double bacc(const Confusion& c);
// Matthews correlation; 0 when any marginal is zero.
double mcc(const Confusion& c);

struct EvalReport {
    double threshold = 0.0;
    Confusion counts;
    double f1 = 0.0;
    double auroc = 0.0;
    std::map<double, double> recall_at_fpr; // budgets 0.01 / 0.05 / 0.10
    double bacc = 0.0;
    double mcc = 0.0;

    std::string to_json_string() const; // fixed field order
    static EvalReport from_json_string(const std::string& text);
    static std::string csv_header();
    std::string csv_row(const std::string& label) const;
};

// Full metric family at one threshold.
EvalReport evaluate(std::span<const ScoredSample> samples, double threshold);

struct SweepResult {
    std::vector<double> grid;
    std::vector<EvalReport> reports;
    std::size_t best_index = 0; // argmax F1, ties toward the smallest threshold
};
SweepResult sweep(std::span<const ScoredSample> samples, std::span<const double> grid);

// Change in attack success rate, adaptive minus standard, percentage points.
double asr_delta(double standard_asr, double adaptive_asr);

} // namespace star
