#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "star/corpus.hpp"
#include "star/provider.hpp"
#include "star/toy_lm.hpp"

namespace star {

// Exact decimal arithmetic on answer strings, so rendered equations like
// "6 * 2.1 = 12.6" never pick up binary floating-point artifacts.
struct Decimal {
    long long units = 0; // value = units / 10^scale
    int scale = 0;

    static Decimal parse(const std::string& text);
    Decimal times_2_1() const;
    Decimal minus(const Decimal& other) const;
    Decimal plus(const Decimal& other) const;
    std::string str() const; // trailing zeros trimmed
    bool equals(const Decimal& other) const;
};

struct TemplateCatalog {
    // Keyed by "<kind>.<family>", e.g. "bcp.gsm8k_like".
    std::map<std::string, AttackTemplate> templates;

    const AttackTemplate& get(AttackKind kind, TaskFamily family) const;
};

// Built-in templates (also shipped as data/attack_templates.cfg).
const TemplateCatalog& default_catalog();
// Parses the human-editable key/value catalog file and overlays it onto the
// defaults. Sections are "[kind.family]"; keys: trigger, site, rationale,
// transform, instruction.
TemplateCatalog load_template_catalog(const std::string& path);

// Hand-authored item banks, about 20 items per family.
const std::vector<TaskItem>& item_bank(TaskFamily family);

// Renders a benign prompt sample: n_demos worked demonstrations plus a final
// query block, all drawn from the family's item bank.
LabeledSample make_benign(TaskFamily family, std::size_t query_index, std::uint64_t seed,
                          std::size_t n_demos = 1);

// Injects the template's trigger and malicious reasoning into one
// demonstration and the query, and sets the target answer. Passing nullopt
// returns the sample unchanged. Applying to an attacked sample is an error.
LabeledSample apply_attack(const LabeledSample& benign,
                           const std::optional<AttackTemplate>& tmpl, std::uint64_t seed);

// Premise-first variant: the malicious step lands right after the first
// reasoning sentence instead of before the conclusion.
LabeledSample apply_adaptive(const LabeledSample& benign, const AttackTemplate& tmpl,
                             std::uint64_t seed);

// True iff the observed final answer matches the sample's target answer after
// normalization (trim, case-fold, strip quotes and trailing period, compare
// numerics as decimals).
bool attack_success(const LabeledSample& sample, const std::string& observed_answer);

// ---------------------------------------------------------------------------
// Synthetic toy corpora with filled probability streams.

enum class AttackPosition { post_warmup, pre_warmup, mixed };

struct SynthSpec {
    std::size_t n_benign = 200;
    std::size_t n_attack = 200;
    ToyLmSpec lm;                  // early_window defaults to warmup_boundary when unset
    double amplification = 3.0;    // per-token evidence of the planted run
    std::size_t run_length = 10;
    AttackPosition position = AttackPosition::post_warmup;
    std::size_t warmup_boundary = 10;
    std::size_t response_length = 48;
    std::size_t input_length = 32;
    double temperature = 1.0;
    std::uint64_t seed = 1;
};

struct SynthResult {
    std::vector<LabeledSample> samples;
    ProviderBinding binding;      // toy binding able to re-score the corpus
    std::uint64_t q_pass_calls = 0;
    std::uint64_t p_pass_calls = 0;
};

// Benign samples follow the base chain (with hash-derived early topic bursts
// standing in for early-decoding instability); attack samples carry a
// contiguous run of run_length tokens whose evidence is exactly the
// amplification, placed after the warmup boundary or entirely inside it.
// The conditional stream is cached at generation time, so scoring costs one
// unconditional pass per sample.
SynthResult synth_toy_corpus(const SynthSpec& spec);

} // namespace star
