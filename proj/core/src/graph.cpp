#include "graphcorpus/graph.hpp"

#include "graphcorpus/error.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <sstream>

namespace graphcorpus {

using nlohmann::json;

// ---------------------------------------------------------------- schema

SchemaConfig SchemaConfig::from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("schema must be a JSON object");
    SchemaConfig s;
    auto get_str = [&](const char* key, std::string& out) {
        if (auto it = j.find(key); it != j.end()) {
            if (!it->is_string()) throw ValidationError(std::string("schema field '") + key + "' must be a string");
            out = it->get<std::string>();
        }
    };
    get_str("id_field", s.id_field);
    get_str("type_field", s.type_field);
    get_str("default_node_type", s.default_node_type);
    get_str("src_field", s.src_field);
    get_str("dst_field", s.dst_field);
    get_str("relation_field", s.relation_field);
    get_str("directed_field", s.directed_field);
    get_str("default_relation", s.default_relation);
    if (auto it = j.find("attribute_fields"); it != j.end()) {
        if (!it->is_array()) throw ValidationError("schema field 'attribute_fields' must be an array");
        for (const auto& f : *it) {
            if (!f.is_string()) throw ValidationError("attribute field names must be strings");
            s.attribute_fields.push_back(f.get<std::string>());
        }
    }
    if (auto it = j.find("label_field"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw ValidationError("schema field 'label_field' must be a string");
        s.label_field = it->get<std::string>();
    }
    if (auto it = j.find("default_directed"); it != j.end()) s.default_directed = it->get<bool>();
    if (auto it = j.find("directed_traversal"); it != j.end()) s.directed_traversal = it->get<bool>();
    if (s.id_field.empty()) throw ValidationError("schema id_field is empty");
    return s;
}

SchemaConfig SchemaConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot open schema file " + file.string());
    try {
        return from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw ValidationError("schema file " + file.string() + ": " + e.what());
    }
}

json SchemaConfig::to_json() const {
    json j;
    j["id_field"] = id_field;
    j["type_field"] = type_field;
    j["default_node_type"] = default_node_type;
    j["attribute_fields"] = attribute_fields;
    j["label_field"] = label_field ? json(*label_field) : json(nullptr);
    j["src_field"] = src_field;
    j["dst_field"] = dst_field;
    j["relation_field"] = relation_field;
    j["directed_field"] = directed_field;
    j["default_relation"] = default_relation;
    j["default_directed"] = default_directed;
    j["directed_traversal"] = directed_traversal;
    return j;
}

// ---------------------------------------------------------------- node / graph

const std::string* Node::attribute(std::string_view field) const noexcept {
    for (const auto& [name, value] : attributes)
        if (name == field) return &value;
    return nullptr;
}

std::optional<NodeIndex> AttributedGraph::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeIndex AttributedGraph::require(std::string_view id) const {
    if (auto v = find(id)) return *v;
    throw UnknownNodeError(std::string(id));
}

std::span<const Neighbor> AttributedGraph::neighbors(NodeIndex v) const {
    if (v >= nodes_.size()) throw UnknownNodeError("#" + std::to_string(v));
    return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::size_t AttributedGraph::degree(NodeIndex v) const { return neighbors(v).size(); }

std::string AttributedGraph::serialize() const {
    std::ostringstream out;
    nlohmann::ordered_json head;
    head["dataset"] = dataset_;
    head["nodes"] = nodes_.size();
    head["edges"] = edges_.size();
    head["relations"] = relations_;
    out << head.dump() << '\n';
    for (const auto& n : nodes_) {
        nlohmann::ordered_json j;
        j["id"] = n.id;
        j["type"] = n.node_type;
        j["attributes"] = json::array();
        for (const auto& [k, v] : n.attributes) j["attributes"].push_back({k, v});
        j["label"] = n.label ? json(*n.label) : json(nullptr);
        out << j.dump() << '\n';
    }
    for (const auto& e : edges_) {
        nlohmann::ordered_json j;
        j["src"] = nodes_[e.src].id;
        j["dst"] = nodes_[e.dst].id;
        j["relation"] = relations_[e.relation];
        j["directed"] = e.directed;
        out << j.dump() << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------- builder

GraphBuilder::GraphBuilder(std::string dataset_name, SchemaConfig schema)
    : dataset_(std::move(dataset_name)), schema_(std::move(schema)) {}

void GraphBuilder::add_node(Node node) {
    if (node.id.empty()) throw ValidationError("node id is empty");
    if (ids_.contains(node.id)) throw ValidationError("duplicate node id '" + node.id + "'");
    ids_.emplace(node.id, nodes_.size());
    nodes_.push_back(std::move(node));
}

bool GraphBuilder::has_node(std::string_view id) const { return ids_.contains(std::string(id)); }

void GraphBuilder::add_edge(std::string_view src, std::string_view dst, std::string_view relation,
                            bool directed) {
    auto s = ids_.find(std::string(src));
    if (s == ids_.end()) throw UnknownNodeError(std::string(src));
    auto d = ids_.find(std::string(dst));
    if (d == ids_.end()) throw UnknownNodeError(std::string(dst));
    auto [it, inserted] =
        relation_ids_.try_emplace(std::string(relation), static_cast<RelationId>(relations_.size()));
    if (inserted) relations_.emplace_back(relation);
    edges_.push_back({s->second, d->second, it->second, directed});
}

AttributedGraph GraphBuilder::build() && {
    AttributedGraph g;
    g.dataset_ = std::move(dataset_);
    g.schema_ = std::move(schema_);
    g.relations_ = std::move(relations_);

    const std::size_t n = nodes_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return nodes_[a].id < nodes_[b].id; });
    std::vector<NodeIndex> remap(n);
    g.nodes_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        remap[order[i]] = static_cast<NodeIndex>(i);
        g.index_.emplace(nodes_[order[i]].id, static_cast<NodeIndex>(i));
        g.nodes_.push_back(std::move(nodes_[order[i]]));
    }

    const bool one_way = g.schema_.directed_traversal;
    std::vector<std::size_t> counts(n + 1, 0);
    g.edges_.reserve(edges_.size());
    for (const auto& e : edges_) {
        Edge edge{remap[e.src], remap[e.dst], e.relation, e.directed};
        g.edges_.push_back(edge);
        ++counts[edge.src];
        if (!(edge.directed && one_way)) ++counts[edge.dst];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : g.edges_) {
        g.adjacency_[cursor[e.src]++] = {e.dst, e.relation};
        if (!(e.directed && one_way)) g.adjacency_[cursor[e.dst]++] = {e.src, e.relation};
    }
    for (std::size_t i = 0; i < n; ++i)
        std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                  g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    return g;
}

// ---------------------------------------------------------------- loader

namespace {

std::optional<std::string> scalar_text(const json& v) {
    if (v.is_null()) return std::nullopt;
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

template <class Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(path, lineno, std::string("malformed JSON: ") + e.what());
        }
        if (!rec.is_object()) throw ParseError(path, lineno, "record is not a JSON object");
        try {
            fn(rec);
        } catch (const ParseError&) {
            throw;
        } catch (const UnknownNodeError& e) {
            throw ParseError(path, lineno, "dangling edge endpoint '" + e.node_id() + "'");
        } catch (const std::exception& e) {
            throw ParseError(path, lineno, e.what());
        }
    }
}

std::string required_id(const json& rec, const std::string& field) {
    auto it = rec.find(field);
    if (it == rec.end() || it->is_null()) throw ValidationError("missing field '" + field + "'");
    if (!it->is_string() && !it->is_number_integer())
        throw ValidationError("field '" + field + "' must be a string or integer");
    return it->is_string() ? it->get<std::string>() : it->dump();
}

} // namespace

AttributedGraph load_graph(const std::filesystem::path& nodes_path,
                           const std::filesystem::path& edges_path, const SchemaConfig& schema,
                           std::string dataset_name) {
    GraphBuilder builder(std::move(dataset_name), schema);

    for_each_record(nodes_path, [&](const json& rec) {
        Node node;
        node.id = required_id(rec, schema.id_field);
        node.node_type = schema.default_node_type;
        if (auto it = rec.find(schema.type_field); it != rec.end())
            if (auto t = scalar_text(*it)) node.node_type = *t;
        for (const auto& field : schema.attribute_fields) {
            if (auto it = rec.find(field); it != rec.end())
                if (auto text = scalar_text(*it)) node.attributes.emplace_back(field, *text);
        }
        if (schema.label_field) {
            if (auto it = rec.find(*schema.label_field); it != rec.end()) node.label = scalar_text(*it);
        }
        builder.add_node(std::move(node));
    });

    for_each_record(edges_path, [&](const json& rec) {
        std::string src = required_id(rec, schema.src_field);
        std::string dst = required_id(rec, schema.dst_field);
        std::string relation = schema.default_relation;
        if (auto it = rec.find(schema.relation_field); it != rec.end())
            if (auto r = scalar_text(*it)) relation = *r;
        if (relation.empty()) throw ValidationError("empty relation name");
        bool directed = schema.default_directed;
        if (auto it = rec.find(schema.directed_field); it != rec.end() && !it->is_null()) {
            if (!it->is_boolean()) throw ValidationError("field '" + schema.directed_field + "' must be a boolean");
            directed = it->get<bool>();
        }
        builder.add_edge(src, dst, relation, directed);
    });

    return std::move(builder).build();
}

std::vector<Neighbor> one_hop_neighbors(const AttributedGraph& graph, std::string_view id) {
    auto span = graph.neighbors(graph.require(id));
    return {span.begin(), span.end()};
}

std::size_t degree(const AttributedGraph& graph, std::string_view id) {
    return graph.degree(graph.require(id));
}

std::optional<KnownDatasetStats> known_dataset_stats(std::string_view name) {
    static constexpr std::array<KnownDatasetStats, 3> table{{
        {"arxiv", 169'343, 1'116'243, 169'343, 40},
        {"mimic-iii", 32'267, 559'290, 4'880, 19},
        {"cora", 25'120, 182'280, 17'093, 70},
    }};
    for (const auto& s : table)
        if (s.name == name) return s;
    return std::nullopt;
}

} // namespace graphcorpus
