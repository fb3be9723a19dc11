#include "graphcorpus/description.hpp"

#include "graphcorpus/error.hpp"
#include "graphcorpus/text_template.hpp"

#include <algorithm>
#include <fstream>

namespace graphcorpus {

using nlohmann::json;

namespace {

constexpr std::string_view kPreamble =
    "The compact graph description of this {{node_type}}{{ordinal}} is listed as follows:";

bool allowed_placeholder(SectionKind kind, std::string_view name) {
    if (name == "node_type" || name == "ordinal") return true;
    if (kind == SectionKind::attributes)
        return name == "id" || name == "display" || name == "attributes" ||
               name.starts_with("attr:");
    return name == "entries";
}

void check_placeholders(std::string_view where, std::string_view text,
                        std::initializer_list<std::string_view> allowed) {
    for (const auto& name : template_placeholders(text))
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            throw ValidationError("template " + std::string(where) + ": unknown placeholder '{{" +
                                  name + "}}'");
}

std::string capitalized(std::string_view field) {
    std::string s(field);
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

// Templates supply their own sentence punctuation.
std::string without_final_period(std::string_view value) {
    while (!value.empty() && (value.back() == ' ' || value.back() == '.')) value.remove_suffix(1);
    return std::string(value);
}

template <class Range, class Fn>
std::string join(const Range& items, std::string_view sep, Fn&& fn) {
    std::string out;
    bool first = true;
    for (const auto& item : items) {
        if (!first) out.append(sep);
        first = false;
        out += fn(item);
    }
    return out;
}

} // namespace

std::string_view to_string(SectionKind kind) {
    switch (kind) {
    case SectionKind::attributes: return "attributes";
    case SectionKind::ego_nodes: return "ego_nodes";
    case SectionKind::one_hop: return "one_hop";
    case SectionKind::walks: return "walks";
    }
    return "?";
}

SectionKind section_kind_from_string(std::string_view name) {
    for (auto k : {SectionKind::attributes, SectionKind::ego_nodes, SectionKind::one_hop,
                   SectionKind::walks})
        if (to_string(k) == name) return k;
    throw ValidationError("unknown description section '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- template

void DescriptionTemplate::validate() const {
    if (section_order.empty()) throw ValidationError("template '" + name + "' has no sections");
    for (std::size_t i = 0; i < section_order.size(); ++i) {
        const auto kind = section_order[i];
        if (std::find(section_order.begin(), section_order.begin() + static_cast<std::ptrdiff_t>(i),
                      kind) != section_order.begin() + static_cast<std::ptrdiff_t>(i))
            throw ValidationError("template '" + name + "' repeats section " +
                                  std::string(to_string(kind)));
        auto it = sections.find(kind);
        if (it == sections.end())
            throw ValidationError("template '" + name + "' lacks text for section " +
                                  std::string(to_string(kind)));
        for (const auto& ph : template_placeholders(it->second))
            if (!allowed_placeholder(kind, ph))
                throw ValidationError("template '" + name + "' section " +
                                      std::string(to_string(kind)) + ": unknown placeholder '{{" +
                                      ph + "}}'");
    }
    check_placeholders("ego_group", ego_group, {"index", "node_type", "members"});
    check_placeholders("one_hop_entry", one_hop_entry, {"display", "relation", "node_type", "id"});
    check_placeholders("walk_entry", walk_entry, {"index", "path"});
    check_placeholders("walk_hop", walk_hop, {"relation", "display", "node_type", "id"});
}

DescriptionTemplate DescriptionTemplate::from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("description template must be a JSON object");
    DescriptionTemplate t;
    try {
        t.name = j.value("name", std::string("custom"));
        for (const auto& s : j.at("section_order")) t.section_order.push_back(section_kind_from_string(s.get<std::string>()));
        for (const auto& [key, value] : j.at("sections").items())
            t.sections[section_kind_from_string(key)] = value.get<std::string>();
        t.ego_group = j.value("ego_group", t.ego_group);
        t.ego_group_separator = j.value("ego_group_separator", t.ego_group_separator);
        t.member_separator = j.value("member_separator", t.member_separator);
        t.one_hop_entry = j.value("one_hop_entry", t.one_hop_entry);
        t.one_hop_separator = j.value("one_hop_separator", t.one_hop_separator);
        t.walk_entry = j.value("walk_entry", t.walk_entry);
        t.walk_separator = j.value("walk_separator", t.walk_separator);
        t.walk_hop = j.value("walk_hop", t.walk_hop);
        t.display_attributes = j.value("display_attributes", t.display_attributes);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("description template: ") + e.what());
    }
    t.validate();
    return t;
}

json DescriptionTemplate::to_json() const {
    json j;
    j["name"] = name;
    j["section_order"] = json::array();
    for (auto k : section_order) j["section_order"].push_back(std::string(to_string(k)));
    j["sections"] = json::object();
    for (const auto& [k, v] : sections) j["sections"][std::string(to_string(k))] = v;
    j["ego_group"] = ego_group;
    j["ego_group_separator"] = ego_group_separator;
    j["member_separator"] = member_separator;
    j["one_hop_entry"] = one_hop_entry;
    j["one_hop_separator"] = one_hop_separator;
    j["walk_entry"] = walk_entry;
    j["walk_separator"] = walk_separator;
    j["walk_hop"] = walk_hop;
    j["display_attributes"] = display_attributes;
    return j;
}

DescriptionTemplate DescriptionTemplate::builtin(std::string_view name) {
    DescriptionTemplate t;
    t.name = std::string(name);
    t.section_order = {SectionKind::attributes, SectionKind::ego_nodes, SectionKind::one_hop,
                       SectionKind::walks};
    t.sections[SectionKind::ego_nodes] = "Ego graph nodes: {{{entries}}}.";
    t.sections[SectionKind::one_hop] = "One-hop neighbors: {{{entries}}}.";
    t.sections[SectionKind::walks] = "Random walks: {{{entries}}}.";
    t.display_attributes = {"title", "name"};
    const std::string preamble(kPreamble);
    if (name == "paper_full") {
        t.sections[SectionKind::attributes] =
            preamble + " Title: {{attr:title}}. Abstract: {{attr:abstract}}.";
    } else if (name == "paper_title") {
        t.sections[SectionKind::attributes] = preamble + " Title: {{attr:title}}.";
    } else if (name == "generic") {
        t.sections[SectionKind::attributes] = preamble + " {{attributes}}";
        t.display_attributes.clear();
    } else {
        throw ValidationError("unknown built-in description template '" + std::string(name) + "'");
    }
    return t;
}

DescriptionTemplate DescriptionTemplate::resolve(std::string_view spec,
                                                 const std::filesystem::path& base_dir) {
    if (spec.starts_with("builtin:")) return builtin(spec.substr(8));
    std::filesystem::path path(spec);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open description template " + path.string());
    try {
        return from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ValidationError("description template " + path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------- renderer

DescriptionRenderer::DescriptionRenderer(const AttributedGraph& graph, DescriptionTemplate tmpl,
                                         Tokenizer tokenizer, std::string ordinal)
    : graph_(&graph), tmpl_(std::move(tmpl)), tokenizer_(std::move(tokenizer)),
      ordinal_(std::move(ordinal)) {
    tmpl_.validate();
}

std::string DescriptionRenderer::display_name(NodeIndex v) const {
    const Node& node = graph_->node(v);
    for (const auto& field : tmpl_.display_attributes)
        if (const auto* value = node.attribute(field)) return *value;
    if (tmpl_.display_attributes.empty() && !node.attributes.empty())
        return node.attributes.front().second;
    return node.id;
}

std::string DescriptionRenderer::render_section(SectionKind kind, NodeIndex target,
                                                std::span<const NeighborEntry> neighbors,
                                                std::span<const Walk> walks) const {
    const Node& node = graph_->node(target);
    const std::string& text = tmpl_.sections.at(kind);

    if (kind == SectionKind::attributes) {
        return fill_template(text, [&](std::string_view ph) -> std::optional<std::string> {
            if (ph == "node_type") return node.node_type;
            if (ph == "ordinal") return ordinal_;
            if (ph == "id") return node.id;
            if (ph == "display") return display_name(target);
            if (ph == "attributes")
                return join(node.attributes, " ", [](const auto& kv) {
                    return capitalized(kv.first) + ": " + without_final_period(kv.second) + ".";
                });
            if (ph.starts_with("attr:")) {
                const auto field = ph.substr(5);
                if (const auto* value = node.attribute(field)) return without_final_period(*value);
                throw MissingAttributeError(node.id, std::string(field));
            }
            return std::nullopt;
        });
    }

    // list sections with nothing selected are left out entirely
    if (kind == SectionKind::walks ? walks.empty() : neighbors.empty()) return {};

    std::string entries;
    if (kind == SectionKind::ego_nodes) {
        // group by node type, types ascending, members in selection order
        std::map<std::string, std::vector<NodeIndex>> groups;
        for (const auto& m : neighbors) groups[graph_->node(m.node).node_type].push_back(m.node);
        std::size_t index = 0;
        entries = join(groups, tmpl_.ego_group_separator, [&](const auto& group) {
            const std::string members = join(group.second, tmpl_.member_separator,
                                             [&](NodeIndex v) { return display_name(v); });
            const std::string idx = std::to_string(++index);
            return fill_template(tmpl_.ego_group, [&](std::string_view ph) -> std::optional<std::string> {
                if (ph == "index") return idx;
                if (ph == "node_type") return group.first;
                if (ph == "members") return members;
                return std::nullopt;
            });
        });
    } else if (kind == SectionKind::one_hop) {
        entries = join(neighbors, tmpl_.one_hop_separator, [&](const NeighborEntry& m) {
            return fill_template(tmpl_.one_hop_entry, [&](std::string_view ph) -> std::optional<std::string> {
                if (ph == "display") return display_name(m.node);
                if (ph == "relation") return graph_->relation_name(m.relation);
                if (ph == "node_type") return graph_->node(m.node).node_type;
                if (ph == "id") return graph_->node(m.node).id;
                return std::nullopt;
            });
        });
    } else {
        std::size_t index = 0;
        entries = join(walks, tmpl_.walk_separator, [&](const Walk& w) {
            std::string path = display_name(target);
            for (const auto& step : w.steps)
                path += fill_template(tmpl_.walk_hop, [&](std::string_view ph) -> std::optional<std::string> {
                    if (ph == "relation") return graph_->relation_name(step.relation);
                    if (ph == "display") return display_name(step.node);
                    if (ph == "node_type") return graph_->node(step.node).node_type;
                    if (ph == "id") return graph_->node(step.node).id;
                    return std::nullopt;
                });
            const std::string idx = std::to_string(++index);
            return fill_template(tmpl_.walk_entry, [&](std::string_view ph) -> std::optional<std::string> {
                if (ph == "index") return idx;
                if (ph == "path") return path;
                return std::nullopt;
            });
        });
    }
    return fill_template(text, [&](std::string_view ph) -> std::optional<std::string> {
        if (ph == "entries") return entries;
        if (ph == "node_type") return node.node_type;
        if (ph == "ordinal") return ordinal_;
        return std::nullopt;
    });
}

std::string DescriptionRenderer::render_text(NodeIndex target,
                                             std::span<const NeighborEntry> neighbors,
                                             std::span<const Walk> walks,
                                             std::map<std::string, std::string>* sections) const {
    std::string text;
    for (auto kind : tmpl_.section_order) {
        std::string part = render_section(kind, target, neighbors, walks);
        if (part.empty()) continue;
        if (!text.empty()) text.push_back(' ');
        text += part;
        if (sections) (*sections)[std::string(to_string(kind))] = std::move(part);
    }
    return text;
}

CompactDescription DescriptionRenderer::render(NodeIndex target, const KeyNeighborSet& neighbors,
                                               std::span<const Walk> walks) const {
    CompactDescription d;
    d.target = target;
    d.text = render_text(target, neighbors.members, walks, &d.sections);
    d.token_count = tokenizer_.count(d.text);
    return d;
}

std::size_t DescriptionRenderer::boilerplate_cost(NodeIndex target) const {
    return tokens(target, {}, {});
}

std::size_t DescriptionRenderer::tokens(NodeIndex target, std::span<const NeighborEntry> neighbors,
                                        std::span<const Walk> walks) const {
    return tokenizer_.count(render_text(target, neighbors, walks, nullptr));
}

CompactDescription render_description(const AttributedGraph& graph, NodeIndex target,
                                      const KeyNeighborSet& neighbors, std::span<const Walk> walks,
                                      const DescriptionTemplate& tmpl, const Tokenizer& tokenizer) {
    return DescriptionRenderer(graph, tmpl, tokenizer).render(target, neighbors, walks);
}

std::size_t boilerplate_cost(const DescriptionTemplate& tmpl, NodeIndex target,
                             const AttributedGraph& graph, const Tokenizer& tokenizer) {
    return DescriptionRenderer(graph, tmpl, tokenizer).boilerplate_cost(target);
}

nlohmann::ordered_json description_to_json(const AttributedGraph& graph,
                                           const CompactDescription& description) {
    nlohmann::ordered_json j;
    j["target"] = graph.node(description.target).id;
    j["token_count"] = description.token_count;
    j["text"] = description.text;
    j["sections"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : description.sections) j["sections"][k] = v;
    return j;
}

} // namespace graphcorpus
