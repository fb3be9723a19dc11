#pragma once

#include "graphcorpus/energy.hpp"
#include "graphcorpus/instruct.hpp"
#include "graphcorpus/tokenizer.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace graphcorpus {

/// A (task, dataset) pair. Ordered by task name, then dataset name.
struct PairKey {
    Task task = Task::node_classification;
    std::string dataset;

    friend bool operator==(const PairKey&, const PairKey&) = default;
    friend bool operator<(const PairKey& a, const PairKey& b) {
        const auto ta = to_string(a.task), tb = to_string(b.task);
        if (ta != tb) return ta < tb;
        return a.dataset < b.dataset;
    }
};

std::string to_string(const PairKey& key);

struct ComplexityProfile {
    std::map<PairKey, double> task_complexity;
    std::map<std::string, std::uint64_t> dataset_complexity;
};

/// Mean token count of the outputs. Throws ValidationError on an empty list.
double task_complexity(std::span<const InstructionRecord> records,
                       const Tokenizer& tokenizer = Tokenizer{});

/// Total node energy.
std::uint64_t dataset_complexity(const EnergyTable& energies);

enum class WeightCombine { product, sum };

struct AllocationOptions {
    std::uint64_t total_packages = 0;
    std::uint64_t min_packages = 1;
    WeightCombine combine = WeightCombine::product;
};

struct AllocationPlan {
    std::map<PairKey, std::uint64_t> counts;
    std::map<PairKey, double> weights;
    std::uint64_t total = 0;
    /// Set when every weight was zero and the split fell back to uniform.
    bool uniform_fallback = false;

    nlohmann::ordered_json to_json() const;
};

/// Each signal is normalized to sum 1 over the active pairs, then combined
/// into a weight per pair. Every pair gets `min_packages`; the rest is split
/// by largest remainder, equal remainders going to the lower pair.
/// Throws ValidationError when total < |pairs| * min_packages or when a pair
/// has no complexity entry.
AllocationPlan allocation_plan(const ComplexityProfile& profile, std::span<const PairKey> active_pairs,
                               const AllocationOptions& options);

} // namespace graphcorpus
