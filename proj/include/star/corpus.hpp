#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "star/types.hpp"

namespace star {

enum class TaskFamily { gsm8k_like, asdiv_like, csqa_like, strategyqa_like, letter_like, toy };
enum class AttackKind { bcn, bcp, inst, adaptive_bcn };
enum class InjectionSite { user_prompt, instruction };

std::string to_string(TaskFamily f);
std::string to_string(AttackKind k);
TaskFamily task_family_from_string(const std::string& s);
AttackKind attack_kind_from_string(const std::string& s);

// One trigger-injection recipe: the trigger string, where it goes, the
// malicious reasoning line it renders and how the target answer is derived
// from the ground truth.
struct AttackTemplate {
    AttackKind kind = AttackKind::bcn;
    std::string trigger;
    InjectionSite injection_site = InjectionSite::user_prompt;
    std::string rationale_pattern;
    std::string target_transform; // times_2_1 | option_shift | negate | reverse
    std::string instruction_text; // inst kind: the protocol placed in the instruction
};

// Structured task item backing prompt rendering. Math items carry two decimal
// operands, a shape ("difference" or "sum") and the pieces of their
// conclusion sentence so that both the standard and the premise-first
// malicious chains can be re-rendered with exact decimal arithmetic.
struct TaskItem {
    std::string question;
    std::vector<std::string> steps;    // csqa/strategyqa reasoning; math: the two intro sentences
    std::string answer;
    std::string shape;                 // math families: "difference" | "sum"
    std::string operand_a, operand_b;  // math families, decimal strings
    std::string conclusion_prefix;     // math: text before "b - a = r"
    std::string conclusion_suffix;     // math: text after the equation, usually "."
    std::vector<std::string> options;  // csqa: texts for (A)..(E)
    char correct_option = 0;           // csqa
    std::vector<std::string> words;    // letter family
};

// A labeled corpus entry. `tokens`/`log_q`/`log_p` are filled when a provider
// has scored (or synthesized) the response; prompt-level corpora leave them
// empty. The structured items survive only in memory so attacks can be
// applied after construction; serialization keeps the rendered strings.
struct LabeledSample {
    std::string id;
    TaskFamily task = TaskFamily::toy;
    bool is_attack = false;
    std::optional<AttackTemplate> attack;
    std::optional<std::string> attack_kind; // serialized label, e.g. "bcp" or "toy"
    std::string instruction;
    std::string user_input;
    std::vector<std::string> tokens;
    std::vector<double> log_q;
    std::vector<double> log_p;
    std::optional<std::vector<double>> onion_f;
    std::string ground_truth;
    std::optional<std::string> target_answer;

    // In-memory only:
    std::optional<TaskItem> query_item;
    std::vector<TaskItem> demo_items;
    std::size_t poisoned_demo = 0;

    std::vector<TokenRecord> records() const;
    void validate() const; // throws on schema violations
};

// JSON-Lines replay dump: one object per sample, arrays of equal length,
// floats written with 17 significant digits so values round-trip exactly.
void write_dump(std::ostream& out, const std::vector<LabeledSample>& samples);
void write_dump_file(const std::string& path, const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> read_dump(std::istream& in);
std::vector<LabeledSample> read_dump_file(const std::string& path);

} // namespace star
