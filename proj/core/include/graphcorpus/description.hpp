#pragma once

#include "graphcorpus/graph.hpp"
#include "graphcorpus/selection.hpp"
#include "graphcorpus/tokenizer.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace graphcorpus {

enum class SectionKind { attributes, ego_nodes, one_hop, walks };

std::string_view to_string(SectionKind kind);
SectionKind section_kind_from_string(std::string_view name);

/// Declarative layout of a compact description.
///
/// Section texts use `{{name}}` placeholders:
///   attributes section   {{node_type}} {{ordinal}} {{id}} {{display}}
///                        {{attr:FIELD}} {{attributes}}
///   entry sections       {{entries}} {{node_type}} {{ordinal}}
///   ego_group            {{index}} {{node_type}} {{members}}
///   one_hop_entry        {{display}} {{relation}} {{node_type}} {{id}}
///   walk_entry           {{index}} {{path}}
///   walk_hop             {{relation}} {{display}} {{node_type}} {{id}}
/// Rendered sections are joined by single spaces; list sections with no
/// entries are omitted.
struct DescriptionTemplate {
    std::string name;
    std::vector<SectionKind> section_order;
    std::map<SectionKind, std::string> sections;

    std::string ego_group = "{{index}}. {{node_type}}: [{{members}}]";
    std::string ego_group_separator = "; ";
    std::string member_separator = ", ";
    std::string one_hop_entry = "{{display}} ({{relation}})";
    std::string one_hop_separator = ", ";
    std::string walk_entry = "{{index}}. {{path}}.";
    std::string walk_separator = " ";
    std::string walk_hop = " {{relation}} {{display}}";

    /// First attribute present on a node names it in lists and walks. Empty
    /// means the node's first attribute; the id is the last resort.
    std::vector<std::string> display_attributes;

    /// Throws ValidationError on unknown sections or placeholders.
    void validate() const;

    static DescriptionTemplate from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    /// "paper_full", "paper_title" or "generic".
    static DescriptionTemplate builtin(std::string_view name);
    /// "builtin:NAME" or a path to a JSON template file.
    static DescriptionTemplate resolve(std::string_view spec,
                                       const std::filesystem::path& base_dir = {});
};

struct CompactDescription {
    NodeIndex target = 0;
    std::string text;
    std::size_t token_count = 0;
    /// Keyed by section name ("attributes", "ego_nodes", "one_hop", "walks").
    std::map<std::string, std::string> sections;
};

/// Renders descriptions for one graph and template. Also serves as the cost
/// model for selection: tokens() renders the candidate and counts it.
class DescriptionRenderer final : public DescriptionCost {
public:
    /// `ordinal` is substituted for {{ordinal}}, e.g. " 1" and " 2" for the
    /// two sides of a link-prediction pair.
    DescriptionRenderer(const AttributedGraph& graph, DescriptionTemplate tmpl, Tokenizer tokenizer,
                        std::string ordinal = {});

    CompactDescription render(NodeIndex target, const KeyNeighborSet& neighbors,
                              std::span<const Walk> walks) const;
    CompactDescription render(NodeIndex target, const Selection& selection) const {
        return render(target, selection.neighbors, selection.walks);
    }

    /// Cost of the empty selection, the target's own attributes included.
    std::size_t boilerplate_cost(NodeIndex target) const;

    std::size_t tokens(NodeIndex target, std::span<const NeighborEntry> neighbors,
                       std::span<const Walk> walks) const override;

    std::string display_name(NodeIndex v) const;

    const AttributedGraph& graph() const noexcept { return *graph_; }
    const DescriptionTemplate& description_template() const noexcept { return tmpl_; }
    const Tokenizer& tokenizer() const noexcept { return tokenizer_; }

private:
    std::string render_section(SectionKind kind, NodeIndex target,
                               std::span<const NeighborEntry> neighbors,
                               std::span<const Walk> walks) const;
    std::string render_text(NodeIndex target, std::span<const NeighborEntry> neighbors,
                            std::span<const Walk> walks,
                            std::map<std::string, std::string>* sections) const;

    const AttributedGraph* graph_;
    DescriptionTemplate tmpl_;
    Tokenizer tokenizer_;
    std::string ordinal_;
};

CompactDescription render_description(const AttributedGraph& graph, NodeIndex target,
                                      const KeyNeighborSet& neighbors, std::span<const Walk> walks,
                                      const DescriptionTemplate& tmpl,
                                      const Tokenizer& tokenizer = Tokenizer{});

std::size_t boilerplate_cost(const DescriptionTemplate& tmpl, NodeIndex target,
                             const AttributedGraph& graph, const Tokenizer& tokenizer = Tokenizer{});

nlohmann::ordered_json description_to_json(const AttributedGraph& graph,
                                           const CompactDescription& description);

} // namespace graphcorpus
