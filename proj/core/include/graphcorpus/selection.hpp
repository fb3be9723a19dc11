#pragma once

#include "graphcorpus/energy.hpp"
#include "graphcorpus/graph.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace graphcorpus {

struct SelectionConfig {
    /// Share of the effective budget offered to neighbors first.
    double neighbor_budget_fraction = 0.5;
    std::size_t max_walk_length = 4;
    std::size_t max_walks = 8;
    double softmax_temperature = 1.0;
    std::uint64_t rng_seed = 0;

    /// Throws ValidationError.
    void validate() const;
    static SelectionConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct NeighborEntry {
    NodeIndex node;
    RelationId relation;
    friend bool operator==(const NeighborEntry&, const NeighborEntry&) = default;
};

struct KeyNeighborSet {
    NodeIndex target = 0;
    std::vector<NeighborEntry> members;
    /// Tokens the members add to the rendered description.
    std::size_t token_cost = 0;
};

struct WalkStep {
    RelationId relation;
    NodeIndex node;
    friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

struct Walk {
    NodeIndex target = 0;
    std::vector<WalkStep> steps;
    /// Tokens this walk added to the rendered description.
    std::size_t token_cost = 0;
};

/// Token count of the full description for a candidate selection.
/// Implemented by the description renderer; selection only queries it, so
/// budget accounting always matches the text that is finally produced.
class DescriptionCost {
public:
    virtual ~DescriptionCost() = default;
    virtual std::size_t tokens(NodeIndex target, std::span<const NeighborEntry> neighbors,
                               std::span<const Walk> walks) const = 0;
};

struct Selection {
    KeyNeighborSet neighbors;
    std::vector<Walk> walks;
    std::size_t boilerplate = 0;
    /// Full description tokens, boilerplate included.
    std::size_t token_cost = 0;
};

/// Key neighbors: distinct one-hop neighbors with H >= H(target) whose own
/// token count fits the budget, ordered by descending H then ascending id,
/// admitted as the longest prefix whose rendered cost fits `neighbor_budget`.
KeyNeighborSet select_neighbors(const AttributedGraph& graph, const EnergyTable& energies,
                                NodeIndex target, std::size_t neighbor_budget,
                                const DescriptionCost& cost);

/// Seeded walks over threshold-clearing, unvisited nodes. `context` is the
/// neighbor selection already committed to the description; walk costs are
/// measured on top of it.
std::vector<Walk> expand_walks(const AttributedGraph& graph, const EnergyTable& energies,
                               NodeIndex target, std::size_t walk_budget,
                               const SelectionConfig& cfg, const DescriptionCost& cost,
                               std::span<const NeighborEntry> context = {});

/// Splits `total_budget` across nodes in proportion to softmax(H / tau).
/// Integerized by largest remainder; equal remainders go to the lower id.
std::vector<std::size_t> allocate_multi_node_budget(std::span<const NodeEnergy> energies,
                                                    std::size_t total_budget, double temperature);

/// Full adaptive selection for one target under token limit `limit`.
/// Throws BudgetTooSmallError when `limit` is below the boilerplate cost.
Selection select_for_target(const AttributedGraph& graph, const EnergyTable& energies,
                            NodeIndex target, std::size_t limit, const SelectionConfig& cfg,
                            const DescriptionCost& cost);

nlohmann::ordered_json selection_to_json(const AttributedGraph& graph, const Selection& selection);

} // namespace graphcorpus
