#pragma once

#include "graphcorpus/error.hpp"
#include "graphcorpus/instruct.hpp"
#include "graphcorpus/rng.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace graphcorpus {

enum class SplitUnit { node, graph, record };

std::string_view to_string(SplitUnit unit);
SplitUnit split_unit_from_string(std::string_view name);

struct SplitSpec {
    /// train : val : test
    std::array<std::uint64_t, 3> ratios{5, 1, 4};
    std::uint64_t seed = 0;
    SplitUnit unit = SplitUnit::node;

    /// Throws ValidationError when all ratios are zero.
    void validate() const;
    static SplitSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Partition sizes by largest remainder over the ratios; equal remainders
/// favor train, then val.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitSpec& spec);

template <class T>
struct SplitResult {
    std::vector<T> train;
    std::vector<T> val;
    std::vector<T> test;
};

/// Seeded shuffle, then contiguous cuts at split_sizes(). Throws
/// ValidationError on an empty input.
template <class T>
SplitResult<T> split(std::vector<T> items, const SplitSpec& spec) {
    spec.validate();
    if (items.empty()) throw ValidationError("split: no items");
    const auto sizes = split_sizes(items.size(), spec);
    Rng(derive_seed(spec.seed, "split")).shuffle(std::span(items));
    SplitResult<T> out;
    auto it = std::make_move_iterator(items.begin());
    out.train.assign(it, it + static_cast<std::ptrdiff_t>(sizes[0]));
    it += static_cast<std::ptrdiff_t>(sizes[0]);
    out.val.assign(it, it + static_cast<std::ptrdiff_t>(sizes[1]));
    it += static_cast<std::ptrdiff_t>(sizes[1]);
    out.test.assign(it, std::make_move_iterator(items.end()));
    return out;
}

/// One JSON object per line: task, dataset, kind, instruction, input, output.
std::size_t emit_jsonl(std::span<const InstructionRecord> records, std::ostream& out);
/// Creates parent directories and replaces the file. Throws a runtime Error
/// on I/O failure.
std::size_t emit_jsonl(std::span<const InstructionRecord> records, const std::filesystem::path& path);

std::vector<InstructionRecord> read_jsonl(const std::filesystem::path& path);

/// Writes `lines` (each already serialized) with a newline after each.
void write_lines(const std::filesystem::path& path, std::span<const std::string> lines);

} // namespace graphcorpus
