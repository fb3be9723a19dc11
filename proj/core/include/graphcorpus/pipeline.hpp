#pragma once

#include "graphcorpus/allocate.hpp"
#include "graphcorpus/corpus.hpp"
#include "graphcorpus/description.hpp"
#include "graphcorpus/energy.hpp"
#include "graphcorpus/graph.hpp"
#include "graphcorpus/instruct.hpp"
#include "graphcorpus/llm_client.hpp"
#include "graphcorpus/selection.hpp"
#include "graphcorpus/tokenizer.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace graphcorpus {

struct DatasetConfig {
    std::string name;
    /// Resolved against the config directory.
    std::filesystem::path nodes;
    std::filesystem::path edges;
    /// As written in the config file.
    std::string nodes_ref;
    std::string edges_ref;
    SchemaConfig schema;
    std::array<std::uint64_t, 3> split_ratios{5, 1, 4};
    std::string description_template = "builtin:paper_full";
};

struct TaskConfig {
    Task task = Task::node_classification;
    std::string dataset;
    /// Empty means the sorted distinct labels of the graph.
    std::vector<std::string> label_space;
    /// Graph-to-text reference field; empty means the node label.
    std::string gold_attribute;
    /// Overrides the dataset's description template when set.
    std::optional<std::string> description_template;
    /// "builtin" or a template file.
    std::string templates = "builtin";
    /// Link prediction: sampled non-edges per positive pair.
    double negative_ratio = 1.0;

    PairKey key() const { return {task, dataset}; }
};

struct PipelineConfig {
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;
    unsigned threads = 1;
    TokenizerConfig tokenizer;
    /// Zero means natural logarithm.
    double log_base = 0.0;
    std::size_t token_limit = 256;
    SelectionConfig selection;
    std::vector<DatasetConfig> datasets;
    std::vector<TaskConfig> tasks;
    PackageRatio packages;
    AllocationOptions allocation;
    LlmClientConfig llm;
    /// Directory relative paths are resolved against.
    std::filesystem::path base_dir;

    /// Parses and validates; input files must exist. Throws ValidationError.
    static PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
    static PipelineConfig load(const std::filesystem::path& path);

    /// All semantically relevant settings with defaults filled in. Output
    /// location, thread count and request concurrency are left out.
    nlohmann::json canonical_json() const;
    /// Hex SHA-256 of canonical_json().dump().
    std::string hash() const;

    LogBase base() const { return log_base == 0.0 ? LogBase::natural() : LogBase(log_base); }
    Tokenizer make_tokenizer() const { return Tokenizer(tokenizer); }
    const DatasetConfig& dataset(std::string_view name) const;
};

std::string sha256_hex(std::string_view bytes);

/// A loaded graph with its energies.
struct DatasetContext {
    const DatasetConfig* config = nullptr;
    AttributedGraph graph;
    EnergyTable energies;
};

DatasetContext load_dataset(const PipelineConfig& cfg, const DatasetConfig& dataset);

struct NodeDescription {
    Selection selection;
    CompactDescription description;
};

/// Adaptive selection plus rendering for one node under `limit` tokens.
NodeDescription describe_node(const PipelineConfig& cfg, const DatasetContext& ctx,
                              const DescriptionRenderer& renderer, NodeIndex target,
                              std::size_t limit);

/// Two descriptions sharing `limit`: each side keeps its boilerplate and the
/// rest is split by allocate_multi_node_budget over the two energies.
std::array<NodeDescription, 2> describe_pair(const PipelineConfig& cfg, const DatasetContext& ctx,
                                             const DescriptionTemplate& tmpl, NodeIndex u,
                                             NodeIndex v, std::size_t limit);

/// Instances of one task, sorted by id. Node classification and
/// graph-to-text use nodes that carry a gold answer; link prediction uses
/// every distinct edge plus seeded non-edges.
std::vector<TaskInstance> build_instances(const PipelineConfig& cfg, const DatasetContext& ctx,
                                          const TaskConfig& task);

SplitResult<TaskInstance> split_instances(const PipelineConfig& cfg, const TaskConfig& task,
                                          std::vector<TaskInstance> instances);

/// Subcommand results. Each writes under cfg.output_dir and returns a short
/// human summary; failures throw graphcorpus::Error.
std::string run_ingest(const PipelineConfig& cfg);

struct DescribeRequest {
    std::string dataset;
    std::vector<std::string> node_ids;
    bool all = false;
};

struct DescribeOutcome {
    std::filesystem::path path;
    std::size_t written = 0;
    /// One message per node whose budget could not cover its boilerplate.
    std::vector<std::string> failures;
};

DescribeOutcome run_describe(const PipelineConfig& cfg, const DescribeRequest& request);

struct GenerateOutcome {
    AllocationPlan plan;
    std::filesystem::path manifest;
    std::size_t package_files = 0;
};

GenerateOutcome run_generate(const PipelineConfig& cfg);

std::string run_split(const PipelineConfig& cfg);

struct EvalRequest {
    Task task = Task::node_classification;
    std::string dataset;
    std::filesystem::path predictions;
    /// Defaults to the split command's test gold file.
    std::optional<std::filesystem::path> gold;
    std::optional<std::filesystem::path> report;
};

/// Joins predictions with gold by id and scores the matched ones.
nlohmann::ordered_json run_eval(const PipelineConfig& cfg, const EvalRequest& request);

} // namespace graphcorpus
