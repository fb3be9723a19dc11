#pragma once

#include "graphcorpus/graph.hpp"
#include "graphcorpus/tokenizer.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace graphcorpus {

/// Base of the logarithm in the energy formula. Must exceed 1.
class LogBase {
public:
    /// Throws ValidationError when base <= 1 or not finite.
    explicit LogBase(double base);
    static LogBase natural();

    double value() const noexcept { return base_; }
    bool is_natural() const noexcept { return natural_; }

private:
    double base_;
    bool natural_ = false;
};

/// Smallest k >= 0 with base^k >= x, i.e. ceil(log_base(x)). x must be >= 1.
std::uint64_t ceil_log(std::uint64_t x, LogBase base);

/// H = T * ceil(log(D + 1)).
std::uint64_t node_energy(std::uint64_t token_count, std::uint64_t degree,
                          LogBase base = LogBase::natural());

struct NodeEnergy {
    NodeIndex node = 0;
    std::uint64_t token_count = 0;
    std::uint64_t degree = 0;
    std::uint64_t energy = 0;
};

/// Per-node energies indexed by NodeIndex.
class EnergyTable {
public:
    EnergyTable() = default;
    explicit EnergyTable(std::vector<NodeEnergy> entries) : entries_(std::move(entries)) {}

    const NodeEnergy& operator[](NodeIndex v) const { return entries_[v]; }
    const NodeEnergy& at(NodeIndex v) const { return entries_.at(v); }
    std::uint64_t energy(NodeIndex v) const { return entries_[v].energy; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const NodeEnergy> entries() const noexcept { return entries_; }

    std::uint64_t total() const;

private:
    std::vector<NodeEnergy> entries_;
};

/// Attribute values in schema order joined by single spaces; this is the
/// text T(v) is measured over.
std::string node_text(const Node& node);

EnergyTable compute_energies(const AttributedGraph& graph, const Tokenizer& tokenizer,
                             LogBase base = LogBase::natural(), unsigned threads = 1);

/// One {node, token_count, degree, energy} object per line, in id order.
void write_energies_jsonl(const AttributedGraph& graph, const EnergyTable& energies,
                          std::ostream& out);

} // namespace graphcorpus
