#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphcorpus {

/// Dense node handle. Indices follow ascending node-id order, so comparing
/// indices is the same as comparing ids.
using NodeIndex = std::uint32_t;
using RelationId = std::uint32_t;

/// Maps record fields onto the graph model.
struct SchemaConfig {
    std::string id_field = "id";
    std::string type_field = "type";
    std::string default_node_type = "NODE";
    std::vector<std::string> attribute_fields;
    std::optional<std::string> label_field;

    std::string src_field = "src";
    std::string dst_field = "dst";
    std::string relation_field = "relation";
    std::string directed_field = "directed";
    std::string default_relation = "RELATED-TO";
    bool default_directed = false;

    /// When true, directed edges are visible only from their source.
    /// By default neighborhoods ignore orientation.
    bool directed_traversal = false;

    static SchemaConfig from_json(const nlohmann::json& j);
    static SchemaConfig load(const std::filesystem::path& file);
    nlohmann::json to_json() const;
};

struct Node {
    std::string id;
    std::string node_type;
    /// Present attributes only, in schema order.
    std::vector<std::pair<std::string, std::string>> attributes;
    std::optional<std::string> label;

    const std::string* attribute(std::string_view field) const noexcept;
};

struct Edge {
    NodeIndex src;
    NodeIndex dst;
    RelationId relation;
    bool directed;
};

struct Neighbor {
    NodeIndex node;
    RelationId relation;

    friend auto operator<=>(const Neighbor&, const Neighbor&) = default;
};

/// Immutable attributed multigraph with CSR adjacency.
class AttributedGraph {
public:
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Node& node(NodeIndex v) const { return nodes_.at(v); }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::optional<NodeIndex> find(std::string_view id) const;
    /// Throws UnknownNodeError.
    NodeIndex require(std::string_view id) const;

    /// Sorted by (neighbor, relation).
    std::span<const Neighbor> neighbors(NodeIndex v) const;
    std::size_t degree(NodeIndex v) const;

    const std::string& relation_name(RelationId r) const { return relations_.at(r); }
    std::span<const std::string> relations() const noexcept { return relations_; }

    const std::string& dataset_name() const noexcept { return dataset_; }
    const SchemaConfig& schema() const noexcept { return schema_; }

    /// Canonical text form; identical graphs serialize to identical bytes.
    std::string serialize() const;

private:
    friend class GraphBuilder;

    std::string dataset_;
    SchemaConfig schema_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::string> relations_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adjacency_;
    std::unordered_map<std::string, NodeIndex> index_;
};

/// Collects nodes and edges by string id, then freezes them into a graph.
class GraphBuilder {
public:
    explicit GraphBuilder(std::string dataset_name, SchemaConfig schema = {});

    /// Throws ValidationError on an empty or duplicate id.
    void add_node(Node node);
    /// Endpoints must already be added; throws UnknownNodeError otherwise.
    void add_edge(std::string_view src, std::string_view dst, std::string_view relation,
                  bool directed);

    bool has_node(std::string_view id) const;

    AttributedGraph build() &&;

private:
    struct PendingEdge {
        std::size_t src;
        std::size_t dst;
        RelationId relation;
        bool directed;
    };

    std::string dataset_;
    SchemaConfig schema_;
    std::vector<Node> nodes_;
    std::unordered_map<std::string, std::size_t> ids_;
    std::vector<std::string> relations_;
    std::unordered_map<std::string, RelationId> relation_ids_;
    std::vector<PendingEdge> edges_;
};

/// Loads newline-delimited JSON node and edge records.
/// Throws ParseError (with line number) on malformed records, dangling
/// endpoints and duplicate ids.
AttributedGraph load_graph(const std::filesystem::path& nodes_path,
                           const std::filesystem::path& edges_path, const SchemaConfig& schema,
                           std::string dataset_name);

std::vector<Neighbor> one_hop_neighbors(const AttributedGraph& graph, std::string_view id);
std::size_t degree(const AttributedGraph& graph, std::string_view id);

/// Reference sizes of the public benchmark exports, used to sanity-check
/// full loads.
struct KnownDatasetStats {
    std::string_view name;
    std::size_t nodes;
    std::size_t edges;
    std::size_t labeled_nodes;
    std::size_t classes;
};
std::optional<KnownDatasetStats> known_dataset_stats(std::string_view name);

} // namespace graphcorpus
