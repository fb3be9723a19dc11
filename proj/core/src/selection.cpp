#include "graphcorpus/selection.hpp"

#include "graphcorpus/apportion.hpp"
#include "graphcorpus/error.hpp"
#include "graphcorpus/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graphcorpus {

void SelectionConfig::validate() const {
    if (!(neighbor_budget_fraction >= 0.0 && neighbor_budget_fraction <= 1.0))
        throw ValidationError("neighbor_budget_fraction must lie in [0, 1]");
    if (!(softmax_temperature > 0.0) || !std::isfinite(softmax_temperature))
        throw ValidationError("softmax_temperature must be > 0");
    if (max_walk_length == 0) throw ValidationError("max_walk_length must be positive");
    if (max_walks == 0) throw ValidationError("max_walks must be positive");
}

SelectionConfig SelectionConfig::from_json(const nlohmann::json& j) {
    SelectionConfig c;
    if (!j.is_object()) throw ValidationError("selection config must be an object");
    c.neighbor_budget_fraction = j.value("neighbor_budget_fraction", c.neighbor_budget_fraction);
    c.max_walk_length = j.value("max_walk_length", c.max_walk_length);
    c.max_walks = j.value("max_walks", c.max_walks);
    c.softmax_temperature = j.value("softmax_temperature", c.softmax_temperature);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.validate();
    return c;
}

nlohmann::json SelectionConfig::to_json() const {
    return {{"neighbor_budget_fraction", neighbor_budget_fraction},
            {"max_walk_length", max_walk_length},
            {"max_walks", max_walks},
            {"softmax_temperature", softmax_temperature},
            {"rng_seed", rng_seed}};
}

namespace {

std::size_t added(std::size_t total, std::size_t base) { return total > base ? total - base : 0; }

} // namespace

KeyNeighborSet select_neighbors(const AttributedGraph& graph, const EnergyTable& energies,
                                NodeIndex target, std::size_t neighbor_budget,
                                const DescriptionCost& cost) {
    KeyNeighborSet result;
    result.target = target;
    const auto threshold = energies.energy(target);

    std::vector<NeighborEntry> candidates;
    NodeIndex last = target;
    bool first = true;
    for (const auto& nb : graph.neighbors(target)) {
        // adjacency is sorted by node, so the first entry per node carries
        // the lowest relation id
        if (nb.node == target || (!first && nb.node == last)) continue;
        first = false;
        last = nb.node;
        const auto& e = energies[nb.node];
        if (e.energy >= threshold && e.token_count <= neighbor_budget)
            candidates.push_back({nb.node, nb.relation});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const NeighborEntry& a, const NeighborEntry& b) {
                         auto ha = energies.energy(a.node), hb = energies.energy(b.node);
                         if (ha != hb) return ha > hb;
                         return a.node < b.node;
                     });

    const std::size_t base = cost.tokens(target, {}, {});
    for (const auto& c : candidates) {
        result.members.push_back(c);
        const std::size_t used = added(cost.tokens(target, result.members, {}), base);
        if (used > neighbor_budget) {
            result.members.pop_back();
            break;
        }
        result.token_cost = used;
    }
    return result;
}

std::vector<Walk> expand_walks(const AttributedGraph& graph, const EnergyTable& energies,
                               NodeIndex target, std::size_t walk_budget,
                               const SelectionConfig& cfg, const DescriptionCost& cost,
                               std::span<const NeighborEntry> context) {
    std::vector<Walk> walks;
    const auto threshold = energies.energy(target);
    Rng rng(derive_seed(cfg.rng_seed, "walks", graph.node(target).id));

    const std::size_t base = cost.tokens(target, context, {});
    const std::size_t limit = base + walk_budget;
    std::size_t current = base;

    std::vector<NodeIndex> visited;
    std::vector<WalkStep> eligible;
    while (walks.size() < cfg.max_walks) {
        walks.push_back(Walk{target, {}, 0});
        const std::size_t before = current;
        visited.assign(1, target);
        NodeIndex at = target;
        while (walks.back().steps.size() < cfg.max_walk_length) {
            eligible.clear();
            for (const auto& nb : graph.neighbors(at)) {
                if (!eligible.empty() && eligible.back().node == nb.node) continue;
                if (energies.energy(nb.node) < threshold) continue;
                if (std::find(visited.begin(), visited.end(), nb.node) != visited.end()) continue;
                eligible.push_back({nb.relation, nb.node});
            }
            if (eligible.empty()) break;
            const WalkStep hop = eligible[rng.uniform_index(eligible.size())];
            walks.back().steps.push_back(hop);
            const std::size_t with_hop = cost.tokens(target, context, walks);
            if (with_hop > limit) {
                walks.back().steps.pop_back();
                break;
            }
            current = with_hop;
            visited.push_back(hop.node);
            at = hop.node;
        }
        if (walks.back().steps.empty()) {
            // nothing reachable or nothing affordable: later walks cannot do better
            walks.pop_back();
            break;
        }
        walks.back().token_cost = added(current, before);
    }
    return walks;
}

std::vector<std::size_t> allocate_multi_node_budget(std::span<const NodeEnergy> energies,
                                                    std::size_t total_budget, double temperature) {
    if (energies.empty()) throw ValidationError("allocate_multi_node_budget: no nodes");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw ValidationError("softmax temperature must be > 0");

    std::uint64_t top = 0;
    for (const auto& e : energies) top = std::max(top, e.energy);
    // Differences are taken in integers before dividing, so shifting every
    // energy by the same amount leaves the weights bit-identical.
    std::vector<double> weights;
    weights.reserve(energies.size());
    for (const auto& e : energies) {
        const auto diff = -static_cast<double>(top - e.energy);
        weights.push_back(std::exp(diff / temperature));
    }

    std::vector<std::size_t> order(energies.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return energies[a].node < energies[b].node;
    });
    std::vector<std::size_t> rank(energies.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

    auto seats = largest_remainder(weights, total_budget, rank);
    return {seats.begin(), seats.end()};
}

Selection select_for_target(const AttributedGraph& graph, const EnergyTable& energies,
                            NodeIndex target, std::size_t limit, const SelectionConfig& cfg,
                            const DescriptionCost& cost) {
    Selection sel;
    sel.boilerplate = cost.tokens(target, {}, {});
    if (limit < sel.boilerplate)
        throw BudgetTooSmallError(graph.node(target).id, limit, sel.boilerplate);
    const std::size_t effective = limit - sel.boilerplate;
    const auto neighbor_budget = static_cast<std::size_t>(
        std::floor(cfg.neighbor_budget_fraction * static_cast<double>(effective)));

    sel.neighbors = select_neighbors(graph, energies, target, neighbor_budget, cost);
    const std::size_t walk_budget = effective - sel.neighbors.token_cost;
    sel.walks = expand_walks(graph, energies, target, walk_budget, cfg, cost, sel.neighbors.members);
    sel.token_cost = cost.tokens(target, sel.neighbors.members, sel.walks);
    return sel;
}

nlohmann::ordered_json selection_to_json(const AttributedGraph& graph, const Selection& selection) {
    nlohmann::ordered_json j;
    j["target"] = graph.node(selection.neighbors.target).id;
    j["neighbors"] = nlohmann::ordered_json::array();
    for (const auto& m : selection.neighbors.members)
        j["neighbors"].push_back({{"node", graph.node(m.node).id},
                                  {"relation", graph.relation_name(m.relation)}});
    j["walks"] = nlohmann::ordered_json::array();
    for (const auto& w : selection.walks) {
        auto steps = nlohmann::ordered_json::array();
        for (const auto& s : w.steps)
            steps.push_back({{"relation", graph.relation_name(s.relation)},
                             {"node", graph.node(s.node).id}});
        j["walks"].push_back({{"steps", steps}, {"token_cost", w.token_cost}});
    }
    j["boilerplate"] = selection.boilerplate;
    j["token_cost"] = selection.token_cost;
    return j;
}

} // namespace graphcorpus
