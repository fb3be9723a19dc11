#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace graphcorpus {

enum class Task { node_classification, link_prediction, graph_to_text };
enum class RecordKind { standard, cot };

std::string_view to_string(Task task);
std::string_view to_string(RecordKind kind);
Task task_from_string(std::string_view name);
RecordKind record_kind_from_string(std::string_view name);

struct InstructionRecord {
    Task task = Task::node_classification;
    std::string dataset;
    RecordKind kind = RecordKind::standard;
    std::string instruction;
    std::string input;
    std::string output;

    friend bool operator==(const InstructionRecord&, const InstructionRecord&) = default;
};

nlohmann::ordered_json record_to_json(const InstructionRecord& record);
InstructionRecord record_from_json(const nlohmann::json& j);

/// Everything needed to instantiate the records of one task instance: a node
/// for classification and graph-to-text, a node pair for link prediction.
struct TaskInstance {
    std::string id;
    Task task = Task::node_classification;
    std::string dataset;
    std::string node_type;
    /// Rendered compact descriptions, one per involved node.
    std::vector<std::string> descriptions;
    /// Display name of the (first) target.
    std::string title;
    /// Display names of the selected context nodes, in selection order.
    std::vector<std::string> key_entities;
    std::vector<std::string> label_space;
    /// Category name, "yes"/"no", or the reference text.
    std::string gold;
};

/// Instruction wording for one task. Placeholders: {{dataset}},
/// {{node_type}}, {{title}}, {{label_space}}, {{answer}}; cot_output also
/// takes {{cot}}.
struct InstructionTemplates {
    std::string standard_instruction;
    /// Request sent to the distillation model; conditioned on the answer.
    std::string cot_prompt;
    /// Instruction of the CoT record in the tuning corpus.
    std::string cot_instruction;
    std::string cot_output;

    void validate() const;
    static InstructionTemplates builtin(Task task);
    /// Fields absent from `j` keep the task's built-in wording.
    static InstructionTemplates from_json(Task task, const nlohmann::json& j);
    nlohmann::json to_json() const;
    /// "builtin" or a path to a JSON file.
    static InstructionTemplates resolve(Task task, std::string_view spec,
                                        const std::filesystem::path& base_dir = {});
};

/// Joined descriptions, as used for record inputs and CoT prompts.
std::string instance_input(const TaskInstance& instance);

/// Throws ValidationError when the gold answer is missing or outside the
/// task's answer grammar.
InstructionRecord render_standard(const TaskInstance& instance, const InstructionTemplates& tmpl);

struct CotPrompt {
    Task task = Task::node_classification;
    std::string text;
    std::string node_type;
    std::string title;
    std::string answer;
    std::vector<std::string> key_entities;
};

CotPrompt render_cot_prompt(const TaskInstance& instance, const InstructionTemplates& tmpl);

/// CoT record reusing the standard input; `cot` is the distilled text.
InstructionRecord render_cot_record(const TaskInstance& instance, const InstructionTemplates& tmpl,
                                    std::string_view cot);

struct PackageRatio {
    std::size_t standard = 1000;
    std::size_t cot = 100;
};

struct InstructionPackage {
    Task task = Task::node_classification;
    std::string dataset;
    std::vector<InstructionRecord> records;
    std::size_t standard_count = 0;
    std::size_t cot_count = 0;
    PackageRatio ratio;
};

/// CoT records a package set needs: `ratio.cot` per full package plus the
/// floor-proportional share for a partial remainder.
std::size_t required_cot(std::size_t standard, PackageRatio ratio);

/// Shuffles both lists with `seed`, then packs full packages of exactly
/// ratio.standard + ratio.cot records and one partial package for the
/// remainder. Surplus CoT records are left out. Throws InsufficientDataError
/// when fewer CoT records than required are supplied. All records must share
/// one (task, dataset).
std::vector<InstructionPackage> assemble_packages(std::vector<InstructionRecord> standard,
                                                  std::vector<InstructionRecord> cot,
                                                  PackageRatio ratio, std::uint64_t seed);

} // namespace graphcorpus
