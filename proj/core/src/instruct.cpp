#include "graphcorpus/instruct.hpp"

#include "graphcorpus/error.hpp"
#include "graphcorpus/rng.hpp"
#include "graphcorpus/text_template.hpp"

#include <algorithm>
#include <fstream>

namespace graphcorpus {

using nlohmann::json;

std::string_view to_string(Task task) {
    switch (task) {
    case Task::node_classification: return "node_classification";
    case Task::link_prediction: return "link_prediction";
    case Task::graph_to_text: return "graph_to_text";
    }
    return "?";
}

std::string_view to_string(RecordKind kind) {
    return kind == RecordKind::standard ? "standard" : "cot";
}

Task task_from_string(std::string_view name) {
    for (auto t : {Task::node_classification, Task::link_prediction, Task::graph_to_text})
        if (to_string(t) == name) return t;
    throw ValidationError("unknown task '" + std::string(name) + "'");
}

RecordKind record_kind_from_string(std::string_view name) {
    if (name == "standard") return RecordKind::standard;
    if (name == "cot") return RecordKind::cot;
    throw ValidationError("unknown record kind '" + std::string(name) + "'");
}

nlohmann::ordered_json record_to_json(const InstructionRecord& r) {
    nlohmann::ordered_json j;
    j["task"] = to_string(r.task);
    j["dataset"] = r.dataset;
    j["kind"] = to_string(r.kind);
    j["instruction"] = r.instruction;
    j["input"] = r.input;
    j["output"] = r.output;
    return j;
}

InstructionRecord record_from_json(const json& j) {
    try {
        InstructionRecord r;
        r.task = task_from_string(j.at("task").get<std::string>());
        r.dataset = j.at("dataset").get<std::string>();
        r.kind = record_kind_from_string(j.at("kind").get<std::string>());
        r.instruction = j.at("instruction").get<std::string>();
        r.input = j.at("input").get<std::string>();
        r.output = j.at("output").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("instruction record: ") + e.what());
    }
}

// ---------------------------------------------------------------- templates

void InstructionTemplates::validate() const {
    auto check = [](std::string_view field, const std::string& text, bool allow_cot) {
        if (text.empty()) throw ValidationError("instruction template: empty " + std::string(field));
        for (const auto& ph : template_placeholders(text)) {
            if (ph == "dataset" || ph == "node_type" || ph == "title" || ph == "label_space" ||
                ph == "answer" || (allow_cot && ph == "cot"))
                continue;
            throw ValidationError("instruction template " + std::string(field) +
                                  ": unknown placeholder '{{" + ph + "}}'");
        }
    };
    check("standard_instruction", standard_instruction, false);
    check("cot_prompt", cot_prompt, false);
    check("cot_instruction", cot_instruction, false);
    check("cot_output", cot_output, true);
}

InstructionTemplates InstructionTemplates::builtin(Task task) {
    InstructionTemplates t;
    switch (task) {
    case Task::node_classification:
        t.standard_instruction =
            "Given the target {{node_type}} with the compact graph description in the {{dataset}} "
            "dataset, which of the following subcategories of computer science does this "
            "{{node_type}} belong to {{{label_space}}}. Directly give the most likely category of "
            "this {{node_type}}.";
        t.cot_prompt =
            "Given the classification of target {{node_type}} {{title}} with {{answer}} in the "
            "{{dataset}} dataset, give your explanation based on the provided compact graph "
            "description. Focus your analysis on elucidating the reasons behind this "
            "classification in a clear Chain of Thought. Keep the analysis brief and to the point.";
        t.cot_instruction =
            "Given the target {{node_type}} {{title}} with the compact graph description in the "
            "{{dataset}} dataset, which of the following subcategories of computer science does "
            "this {{node_type}} belong to {{{label_space}}}. Give the most likely category and the "
            "Chain-of-Thought process that could lead to this answer.";
        t.cot_output =
            "Considering the {{node_type}}'s compact graph description, its classification is "
            "valid under {{answer}}. {{cot}}";
        break;
    case Task::link_prediction:
        t.standard_instruction =
            "Given the compact graph descriptions of {{node_type}} 1 and {{node_type}} 2 in the "
            "{{dataset}} dataset. If the connection between the {{node_type}}s represents the "
            "relationship between them, are they connected? Give me a direct answer of \"yes\" or "
            "\"no\".";
        t.cot_prompt =
            "Given the established link between {{node_type}} 1 and {{node_type}} 2 in the "
            "{{dataset}} dataset, give your explanation based on the provided compact graph "
            "description. Focus your analysis on elucidating the reasons behind this link in a "
            "clear Chain of Thought. Keep the analysis brief and to the point.";
        t.cot_instruction =
            "Given the compact graph descriptions of {{node_type}} 1 and {{node_type}} 2 in the "
            "{{dataset}} dataset, are they connected? Answer \"yes\" or \"no\" and give the "
            "Chain-of-Thought process that could lead to this answer.";
        t.cot_output =
            "{{answer}}. The connection between {{node_type}} 1 and {{node_type}} 2 seems to be "
            "grounded on the following. {{cot}}";
        break;
    case Task::graph_to_text:
        t.standard_instruction =
            "Given the target {{node_type}} in the {{dataset}} dataset with the compact graph "
            "description. Please generate the target {{node_type}} abstract from the compact graph "
            "description.";
        t.cot_prompt =
            "Given the generated abstract of the target {{node_type}} in the {{dataset}} dataset. "
            "Please use the provided compact graph description, to examine how these elements "
            "influenced the generation of the abstract with a clear Chain of Thought (CoT). Keep "
            "the CoT brief and to the point. Abstract: {{answer}}";
        t.cot_instruction =
            "Given the target {{node_type}} {{title}} with the compact graph description. Please "
            "generate the target {{node_type}}'s abstract and the Chain-of-Thought process that "
            "could lead to this generation.";
        t.cot_output = "{{answer}} {{cot}}";
        break;
    }
    return t;
}

InstructionTemplates InstructionTemplates::from_json(Task task, const json& j) {
    if (!j.is_object()) throw ValidationError("instruction template must be a JSON object");
    InstructionTemplates t = builtin(task);
    try {
        t.standard_instruction = j.value("standard_instruction", t.standard_instruction);
        t.cot_prompt = j.value("cot_prompt", t.cot_prompt);
        t.cot_instruction = j.value("cot_instruction", t.cot_instruction);
        t.cot_output = j.value("cot_output", t.cot_output);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("instruction template: ") + e.what());
    }
    t.validate();
    return t;
}

json InstructionTemplates::to_json() const {
    return {{"standard_instruction", standard_instruction},
            {"cot_prompt", cot_prompt},
            {"cot_instruction", cot_instruction},
            {"cot_output", cot_output}};
}

InstructionTemplates InstructionTemplates::resolve(Task task, std::string_view spec,
                                                   const std::filesystem::path& base_dir) {
    if (spec.empty() || spec == "builtin") return builtin(task);
    std::filesystem::path path(spec);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instruction template " + path.string());
    try {
        return from_json(task, json::parse(in));
    } catch (const json::parse_error& e) {
        throw ValidationError("instruction template " + path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------- rendering

namespace {

void check_instance(const TaskInstance& in) {
    if (in.descriptions.empty())
        throw ValidationError("instance '" + in.id + "' has no description");
    if (in.gold.empty()) throw ValidationError("instance '" + in.id + "' has no gold answer");
    switch (in.task) {
    case Task::node_classification:
        if (in.label_space.empty())
            throw ValidationError("instance '" + in.id + "': empty label space");
        if (std::find(in.label_space.begin(), in.label_space.end(), in.gold) == in.label_space.end())
            throw ValidationError("instance '" + in.id + "': label '" + in.gold +
                                  "' is not in the label space");
        break;
    case Task::link_prediction:
        if (in.descriptions.size() != 2)
            throw ValidationError("instance '" + in.id + "': link prediction needs two descriptions");
        if (in.gold != "yes" && in.gold != "no")
            throw ValidationError("instance '" + in.id + "': link answer must be yes or no");
        break;
    case Task::graph_to_text: break;
    }
}

std::string fill(const std::string& text, const TaskInstance& in, std::string_view cot = {}) {
    return fill_template(text, [&](std::string_view ph) -> std::optional<std::string> {
        if (ph == "dataset") return in.dataset;
        if (ph == "node_type") return in.node_type;
        if (ph == "title") return in.title;
        if (ph == "answer") return in.gold;
        if (ph == "cot") return std::string(cot);
        if (ph == "label_space") {
            std::string s;
            for (const auto& l : in.label_space) {
                if (!s.empty()) s += ", ";
                s += l;
            }
            return s;
        }
        return std::nullopt;
    });
}

} // namespace

std::string instance_input(const TaskInstance& instance) {
    std::string s;
    for (const auto& d : instance.descriptions) {
        if (!s.empty()) s.push_back(' ');
        s += d;
    }
    return s;
}

InstructionRecord render_standard(const TaskInstance& instance, const InstructionTemplates& tmpl) {
    check_instance(instance);
    InstructionRecord r;
    r.task = instance.task;
    r.dataset = instance.dataset;
    r.kind = RecordKind::standard;
    r.instruction = fill(tmpl.standard_instruction, instance);
    r.input = instance_input(instance);
    r.output = instance.gold;
    return r;
}

CotPrompt render_cot_prompt(const TaskInstance& instance, const InstructionTemplates& tmpl) {
    check_instance(instance);
    CotPrompt p;
    p.task = instance.task;
    p.text = instance_input(instance) + "\n\n" + fill(tmpl.cot_prompt, instance);
    p.node_type = instance.node_type;
    p.title = instance.title;
    p.answer = instance.gold;
    p.key_entities = instance.key_entities;
    return p;
}

InstructionRecord render_cot_record(const TaskInstance& instance, const InstructionTemplates& tmpl,
                                    std::string_view cot) {
    check_instance(instance);
    if (cot.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw ValidationError("instance '" + instance.id + "': empty CoT text");
    InstructionRecord r;
    r.task = instance.task;
    r.dataset = instance.dataset;
    r.kind = RecordKind::cot;
    r.instruction = fill(tmpl.cot_instruction, instance);
    r.input = instance_input(instance);
    r.output = fill(tmpl.cot_output, instance, cot);
    return r;
}

// ---------------------------------------------------------------- packages

std::size_t required_cot(std::size_t standard, PackageRatio ratio) {
    if (ratio.standard == 0) throw ValidationError("package ratio needs standard > 0");
    const std::size_t full = standard / ratio.standard;
    const std::size_t rest = standard % ratio.standard;
    return full * ratio.cot + rest * ratio.cot / ratio.standard;
}

std::vector<InstructionPackage> assemble_packages(std::vector<InstructionRecord> standard,
                                                  std::vector<InstructionRecord> cot,
                                                  PackageRatio ratio, std::uint64_t seed) {
    if (ratio.standard == 0) throw ValidationError("package ratio needs standard > 0");
    std::vector<InstructionPackage> packages;
    if (standard.empty() && cot.empty()) return packages;
    if (standard.empty()) throw InsufficientDataError("CoT records supplied without standard records");

    const Task task = standard.front().task;
    const std::string dataset = standard.front().dataset;
    auto same_pair = [&](const InstructionRecord& r) { return r.task == task && r.dataset == dataset; };
    if (!std::all_of(standard.begin(), standard.end(), same_pair) ||
        !std::all_of(cot.begin(), cot.end(), same_pair))
        throw ValidationError("a package set must hold a single (task, dataset) pair");

    const std::size_t needed = required_cot(standard.size(), ratio);
    if (ratio.cot > 0 && cot.empty())
        throw InsufficientDataError("no CoT records for " + std::string(to_string(task)) + "/" +
                                    dataset + " but the package ratio asks for " +
                                    std::to_string(ratio.cot) + " per package");
    if (cot.size() < needed)
        throw InsufficientDataError("insufficient CoT records for " + std::string(to_string(task)) +
                                    "/" + dataset + ": " + std::to_string(cot.size()) + " < " +
                                    std::to_string(needed));

    Rng(derive_seed(seed, "packages.standard")).shuffle(std::span(standard));
    Rng(derive_seed(seed, "packages.cot")).shuffle(std::span(cot));

    std::size_t si = 0, ci = 0;
    while (si < standard.size()) {
        const std::size_t s = std::min(ratio.standard, standard.size() - si);
        const std::size_t c = s == ratio.standard ? ratio.cot : s * ratio.cot / ratio.standard;
        InstructionPackage pkg;
        pkg.task = task;
        pkg.dataset = dataset;
        pkg.ratio = ratio;
        pkg.standard_count = s;
        pkg.cot_count = c;
        pkg.records.reserve(s + c);
        for (std::size_t i = 0; i < s; ++i) pkg.records.push_back(std::move(standard[si++]));
        for (std::size_t i = 0; i < c; ++i) pkg.records.push_back(std::move(cot[ci++]));
        Rng(derive_seed(seed, "packages.order", std::to_string(packages.size())))
            .shuffle(std::span(pkg.records));
        packages.push_back(std::move(pkg));
    }
    return packages;
}

} // namespace graphcorpus
