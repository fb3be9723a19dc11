#include "graphcorpus/pipeline.hpp"

#include "graphcorpus/error.hpp"
#include "graphcorpus/metrics.hpp"
#include "graphcorpus/parallel.hpp"
#include "graphcorpus/rng.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace graphcorpus {

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------- config

namespace {

fs::path resolve_path(const fs::path& base, const std::string& ref) {
    fs::path p(ref);
    return p.is_relative() ? base / p : p;
}

void require_file(const fs::path& p, std::string_view what) {
    if (!fs::is_regular_file(p))
        throw ValidationError(std::string(what) + " not found: " + p.string());
}

WeightCombine combine_from_string(const std::string& s) {
    if (s == "product") return WeightCombine::product;
    if (s == "sum") return WeightCombine::sum;
    throw ValidationError("allocation.combine must be \"product\" or \"sum\"");
}

std::string_view to_string(WeightCombine c) { return c == WeightCombine::product ? "product" : "sum"; }

} // namespace

PipelineConfig PipelineConfig::from_json(const json& j, const fs::path& base_dir) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    PipelineConfig c;
    c.base_dir = base_dir;
    try {
        if (!j.contains("seed")) throw ValidationError("config: seed is required");
        c.seed = j.at("seed").get<std::uint64_t>();
        c.output_dir = resolve_path(base_dir, j.value("output_dir", std::string("out")));
        c.threads = j.value("threads", 1u);
        if (c.threads == 0) throw ValidationError("config: threads must be positive");
        if (j.contains("tokenizer")) c.tokenizer = TokenizerConfig::from_json(j["tokenizer"]);
        if (j.contains("log_base")) {
            const auto& b = j["log_base"];
            if (b.is_string() && b.get<std::string>() == "e") c.log_base = 0.0;
            else c.log_base = b.get<double>();
        }
        (void)c.base();

        json sel = j.value("selection", json::object());
        c.token_limit = sel.value("token_limit", c.token_limit);
        sel.erase("token_limit");
        if (sel.contains("rng_seed"))
            throw ValidationError("config: selection seeds derive from the root seed");
        c.selection = SelectionConfig::from_json(sel);

        for (const auto& d : j.at("datasets")) {
            DatasetConfig ds;
            ds.name = d.at("name").get<std::string>();
            if (ds.name.empty()) throw ValidationError("config: dataset without a name");
            ds.nodes_ref = d.at("nodes").get<std::string>();
            ds.edges_ref = d.at("edges").get<std::string>();
            ds.nodes = resolve_path(base_dir, ds.nodes_ref);
            ds.edges = resolve_path(base_dir, ds.edges_ref);
            require_file(ds.nodes, "nodes file");
            require_file(ds.edges, "edges file");
            const auto& schema = d.at("schema");
            if (schema.is_string()) {
                const auto path = resolve_path(base_dir, schema.get<std::string>());
                require_file(path, "schema file");
                ds.schema = SchemaConfig::load(path);
            } else {
                ds.schema = SchemaConfig::from_json(schema);
            }
            if (d.contains("split")) {
                const auto& r = d["split"];
                if (!r.is_array() || r.size() != 3)
                    throw ValidationError("config: dataset split must be [train, val, test]");
                for (std::size_t i = 0; i < 3; ++i) ds.split_ratios[i] = r[i].get<std::uint64_t>();
                SplitSpec{ds.split_ratios}.validate();
            }
            ds.description_template = d.value("description_template", ds.description_template);
            (void)DescriptionTemplate::resolve(ds.description_template, base_dir);
            if (std::any_of(c.datasets.begin(), c.datasets.end(),
                            [&](const DatasetConfig& o) { return o.name == ds.name; }))
                throw ValidationError("config: duplicate dataset '" + ds.name + "'");
            c.datasets.push_back(std::move(ds));
        }

        for (const auto& t : j.value("tasks", json::array())) {
            TaskConfig tc;
            tc.task = task_from_string(t.at("task").get<std::string>());
            tc.dataset = t.at("dataset").get<std::string>();
            (void)c.dataset(tc.dataset);
            tc.label_space = t.value("label_space", tc.label_space);
            tc.gold_attribute = t.value("gold_attribute", tc.gold_attribute);
            if (t.contains("description_template")) {
                tc.description_template = t["description_template"].get<std::string>();
                (void)DescriptionTemplate::resolve(*tc.description_template, base_dir);
            }
            tc.templates = t.value("templates", tc.templates);
            (void)InstructionTemplates::resolve(tc.task, tc.templates, base_dir);
            tc.negative_ratio = t.value("negative_ratio", tc.negative_ratio);
            if (!(tc.negative_ratio >= 0.0) || !std::isfinite(tc.negative_ratio))
                throw ValidationError("config: negative_ratio must be >= 0");
            if (std::any_of(c.tasks.begin(), c.tasks.end(),
                            [&](const TaskConfig& o) { return o.key() == tc.key(); }))
                throw ValidationError("config: duplicate task " + to_string(tc.key()));
            c.tasks.push_back(std::move(tc));
        }
        std::sort(c.tasks.begin(), c.tasks.end(),
                  [](const TaskConfig& a, const TaskConfig& b) { return a.key() < b.key(); });

        const json pk = j.value("packages", json::object());
        c.packages.standard = pk.value("standard", c.packages.standard);
        c.packages.cot = pk.value("cot", c.packages.cot);
        if (c.packages.standard == 0) throw ValidationError("config: packages.standard must be positive");

        const json al = j.value("allocation", json::object());
        c.allocation.total_packages = al.value("total_packages", std::uint64_t{0});
        c.allocation.min_packages = al.value("min_packages", c.allocation.min_packages);
        c.allocation.combine = combine_from_string(al.value("combine", std::string("product")));

        if (j.contains("llm")) c.llm = LlmClientConfig::from_json(j["llm"]);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config " + path.string() + ": " + e.what());
    }
    return from_json(j, fs::absolute(path).parent_path());
}

const DatasetConfig& PipelineConfig::dataset(std::string_view name) const {
    for (const auto& d : datasets)
        if (d.name == name) return d;
    throw ValidationError("unknown dataset '" + std::string(name) + "'");
}

json PipelineConfig::canonical_json() const {
    json j;
    j["seed"] = seed;
    j["tokenizer"] = tokenizer.to_json();
    j["log_base"] = log_base == 0.0 ? json("e") : json(log_base);
    json sel = selection.to_json();
    sel.erase("rng_seed");
    sel["token_limit"] = token_limit;
    j["selection"] = sel;
    j["datasets"] = json::array();
    for (const auto& d : datasets)
        j["datasets"].push_back(
            {{"name", d.name},
             {"nodes", d.nodes_ref},
             {"edges", d.edges_ref},
             {"schema", d.schema.to_json()},
             {"split", d.split_ratios},
             {"description_template",
              DescriptionTemplate::resolve(d.description_template, base_dir).to_json()}});
    j["tasks"] = json::array();
    for (const auto& t : tasks) {
        json tj = {{"task", std::string(graphcorpus::to_string(t.task))},
                   {"dataset", t.dataset},
                   {"label_space", t.label_space},
                   {"gold_attribute", t.gold_attribute},
                   {"templates", InstructionTemplates::resolve(t.task, t.templates, base_dir).to_json()},
                   {"negative_ratio", t.negative_ratio}};
        if (t.description_template)
            tj["description_template"] =
                DescriptionTemplate::resolve(*t.description_template, base_dir).to_json();
        j["tasks"].push_back(std::move(tj));
    }
    j["packages"] = {{"standard", packages.standard}, {"cot", packages.cot}};
    j["allocation"] = {{"total_packages", allocation.total_packages},
                       {"min_packages", allocation.min_packages},
                       {"combine", std::string(to_string(allocation.combine))}};
    j["llm"] = {{"mode", llm.mode == LlmMode::remote ? "remote" : "offline-stub"},
                {"endpoint", llm.endpoint},
                {"model", llm.model_name},
                {"temperature", llm.temperature},
                {"max_output_tokens", llm.max_output_tokens}};
    return j;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::runtime, "SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string PipelineConfig::hash() const { return sha256_hex(canonical_json().dump()); }

// ---------------------------------------------------------------- descriptions

DatasetContext load_dataset(const PipelineConfig& cfg, const DatasetConfig& dataset) {
    DatasetContext ctx;
    ctx.config = &dataset;
    ctx.graph = load_graph(dataset.nodes, dataset.edges, dataset.schema, dataset.name);
    ctx.energies = compute_energies(ctx.graph, cfg.make_tokenizer(), cfg.base(), cfg.threads);
    return ctx;
}

namespace {

SelectionConfig selection_for(const PipelineConfig& cfg, const DatasetContext& ctx) {
    SelectionConfig sc = cfg.selection;
    sc.rng_seed = derive_seed(cfg.seed, "selection", ctx.graph.dataset_name());
    return sc;
}

} // namespace

NodeDescription describe_node(const PipelineConfig& cfg, const DatasetContext& ctx,
                              const DescriptionRenderer& renderer, NodeIndex target,
                              std::size_t limit) {
    NodeDescription d;
    d.selection = select_for_target(ctx.graph, ctx.energies, target, limit, selection_for(cfg, ctx),
                                    renderer);
    d.description = renderer.render(target, d.selection);
    if (d.description.token_count > limit)
        throw Error(ErrorKind::runtime, "description of '" + ctx.graph.node(target).id +
                                            "' exceeds its budget");
    return d;
}

std::array<NodeDescription, 2> describe_pair(const PipelineConfig& cfg, const DatasetContext& ctx,
                                             const DescriptionTemplate& tmpl, NodeIndex u,
                                             NodeIndex v, std::size_t limit) {
    const Tokenizer tok = cfg.make_tokenizer();
    const DescriptionRenderer first(ctx.graph, tmpl, tok, " 1");
    const DescriptionRenderer second(ctx.graph, tmpl, tok, " 2");
    const std::size_t bu = first.boilerplate_cost(u);
    const std::size_t bv = second.boilerplate_cost(v);
    if (limit < bu + bv)
        throw BudgetTooSmallError(ctx.graph.node(u).id + "|" + ctx.graph.node(v).id, limit, bu + bv);
    const NodeEnergy pair[2] = {ctx.energies[u], ctx.energies[v]};
    const auto shares =
        allocate_multi_node_budget(pair, limit - bu - bv, cfg.selection.softmax_temperature);
    return {describe_node(cfg, ctx, first, u, bu + shares[0]),
            describe_node(cfg, ctx, second, v, bv + shares[1])};
}

namespace {

std::vector<std::string> key_entities(const DescriptionRenderer& r, const Selection& sel) {
    std::vector<std::string> out;
    std::set<NodeIndex> seen;
    auto add = [&](NodeIndex v) {
        if (seen.insert(v).second) out.push_back(r.display_name(v));
    };
    for (const auto& m : sel.neighbors.members) add(m.node);
    for (const auto& w : sel.walks)
        for (const auto& s : w.steps) add(s.node);
    return out;
}

DescriptionTemplate template_for(const PipelineConfig& cfg, const DatasetContext& ctx,
                                 const TaskConfig& task) {
    return DescriptionTemplate::resolve(task.description_template.value_or(ctx.config->description_template),
                                        cfg.base_dir);
}

std::vector<std::string> label_space_for(const DatasetContext& ctx, const TaskConfig& task) {
    if (!task.label_space.empty()) return task.label_space;
    std::set<std::string> labels;
    for (const auto& n : ctx.graph.nodes())
        if (n.label) labels.insert(*n.label);
    return {labels.begin(), labels.end()};
}

std::vector<TaskInstance> node_instances(const PipelineConfig& cfg, const DatasetContext& ctx,
                                         const TaskConfig& task) {
    const auto& g = ctx.graph;
    const DescriptionRenderer renderer(g, template_for(cfg, ctx, task), cfg.make_tokenizer());
    const auto labels = task.task == Task::node_classification ? label_space_for(ctx, task)
                                                               : std::vector<std::string>{};

    std::vector<NodeIndex> targets;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const Node& n = g.node(v);
        const bool has_gold = task.task == Task::graph_to_text && !task.gold_attribute.empty()
                                  ? n.attribute(task.gold_attribute) != nullptr
                                  : n.label.has_value();
        if (has_gold) targets.push_back(v);
    }

    std::vector<TaskInstance> out(targets.size());
    parallel_for(targets.size(), cfg.threads, [&](std::size_t i) {
        const NodeIndex v = targets[i];
        const Node& n = g.node(v);
        const auto d = describe_node(cfg, ctx, renderer, v, cfg.token_limit);
        TaskInstance& in = out[i];
        in.id = n.id;
        in.task = task.task;
        in.dataset = g.dataset_name();
        in.node_type = n.node_type;
        in.descriptions = {d.description.text};
        in.title = renderer.display_name(v);
        in.key_entities = key_entities(renderer, d.selection);
        in.label_space = labels;
        in.gold = task.task == Task::graph_to_text && !task.gold_attribute.empty()
                      ? *n.attribute(task.gold_attribute)
                      : *n.label;
    });
    return out;
}

std::vector<TaskInstance> pair_instances(const PipelineConfig& cfg, const DatasetContext& ctx,
                                         const TaskConfig& task) {
    const auto& g = ctx.graph;
    std::set<std::pair<NodeIndex, NodeIndex>> positives;
    for (const auto& e : g.edges())
        if (e.src != e.dst) positives.emplace(std::min(e.src, e.dst), std::max(e.src, e.dst));

    const auto n = static_cast<std::uint64_t>(g.node_count());
    const std::uint64_t possible = n < 2 ? 0 : n * (n - 1) / 2 - positives.size();
    const auto wanted = static_cast<std::uint64_t>(
        std::llround(task.negative_ratio * static_cast<double>(positives.size())));
    if (wanted > possible)
        throw InsufficientDataError("link prediction on '" + g.dataset_name() + "': " +
                                    std::to_string(wanted) + " negatives requested, " +
                                    std::to_string(possible) + " non-edges exist");
    std::set<std::pair<NodeIndex, NodeIndex>> negatives;
    Rng rng(derive_seed(cfg.seed, "negatives", g.dataset_name()));
    while (negatives.size() < wanted) {
        auto a = static_cast<NodeIndex>(rng.uniform_index(n));
        auto b = static_cast<NodeIndex>(rng.uniform_index(n));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!positives.contains({a, b})) negatives.emplace(a, b);
    }

    std::vector<std::pair<std::pair<NodeIndex, NodeIndex>, bool>> pairs;
    for (const auto& p : positives) pairs.push_back({p, true});
    for (const auto& p : negatives) pairs.push_back({p, false});

    const auto tmpl = template_for(cfg, ctx, task);
    const DescriptionRenderer names(g, tmpl, cfg.make_tokenizer());
    std::vector<TaskInstance> out(pairs.size());
    parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
        const auto [u, v] = pairs[i].first;
        const auto d = describe_pair(cfg, ctx, tmpl, u, v, cfg.token_limit);
        TaskInstance& in = out[i];
        in.id = g.node(u).id + "|" + g.node(v).id;
        in.task = Task::link_prediction;
        in.dataset = g.dataset_name();
        in.node_type = g.node(u).node_type;
        in.descriptions = {d[0].description.text, d[1].description.text};
        in.title = names.display_name(u);
        in.key_entities = {names.display_name(u), names.display_name(v)};
        for (const auto& s : {d[0].selection, d[1].selection})
            for (auto& name : key_entities(names, s))
                if (std::find(in.key_entities.begin(), in.key_entities.end(), name) ==
                    in.key_entities.end())
                    in.key_entities.push_back(std::move(name));
        in.label_space = {"no", "yes"};
        in.gold = pairs[i].second ? "yes" : "no";
    });
    return out;
}

} // namespace

std::vector<TaskInstance> build_instances(const PipelineConfig& cfg, const DatasetContext& ctx,
                                          const TaskConfig& task) {
    auto out = task.task == Task::link_prediction ? pair_instances(cfg, ctx, task)
                                                  : node_instances(cfg, ctx, task);
    std::sort(out.begin(), out.end(),
              [](const TaskInstance& a, const TaskInstance& b) { return a.id < b.id; });
    return out;
}

SplitResult<TaskInstance> split_instances(const PipelineConfig& cfg, const TaskConfig& task,
                                          std::vector<TaskInstance> instances) {
    SplitSpec spec;
    spec.ratios = cfg.dataset(task.dataset).split_ratios;
    spec.seed = derive_seed(cfg.seed, "split", to_string(task.key()));
    spec.unit = task.task == Task::node_classification ? SplitUnit::node
                : task.task == Task::link_prediction   ? SplitUnit::record
                                                       : SplitUnit::graph;
    if (instances.empty())
        throw InsufficientDataError("no gold-labelled instances for " + to_string(task.key()));
    return split(std::move(instances), spec);
}

// ---------------------------------------------------------------- commands

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::runtime, "cannot write " + path.string());
    out << text;
    if (!out.flush()) throw Error(ErrorKind::runtime, "write failed: " + path.string());
}

class DatasetCache {
public:
    explicit DatasetCache(const PipelineConfig& cfg) : cfg_(cfg) {}
    const DatasetContext& get(const std::string& name) {
        auto it = loaded_.find(name);
        if (it == loaded_.end()) it = loaded_.emplace(name, load_dataset(cfg_, cfg_.dataset(name))).first;
        return it->second;
    }

private:
    const PipelineConfig& cfg_;
    std::map<std::string, DatasetContext> loaded_;
};

} // namespace

std::string run_ingest(const PipelineConfig& cfg) {
    std::ostringstream summary;
    for (const auto& ds : cfg.datasets) {
        const auto ctx = load_dataset(cfg, ds);
        const auto dir = cfg.output_dir / "ingest" / ds.name;
        std::ostringstream energies;
        write_energies_jsonl(ctx.graph, ctx.energies, energies);
        write_text(dir / "energies.jsonl", energies.str());

        std::set<std::string> classes;
        std::size_t labeled = 0;
        for (const auto& n : ctx.graph.nodes())
            if (n.label) {
                ++labeled;
                classes.insert(*n.label);
            }
        ojson stats;
        stats["dataset"] = ds.name;
        stats["nodes"] = ctx.graph.node_count();
        stats["edges"] = ctx.graph.edge_count();
        stats["labeled_nodes"] = labeled;
        stats["classes"] = classes.size();
        stats["relations"] = ctx.graph.relations().size();
        stats["total_energy"] = ctx.energies.total();
        if (auto ref = known_dataset_stats(ds.name)) {
            const bool match = ref->nodes == ctx.graph.node_count() && ref->edges == ctx.graph.edge_count() &&
                               ref->labeled_nodes == labeled && ref->classes == classes.size();
            stats["reference"] = {{"nodes", ref->nodes},
                                  {"edges", ref->edges},
                                  {"labeled_nodes", ref->labeled_nodes},
                                  {"classes", ref->classes},
                                  {"matches", match}};
        }
        write_text(dir / "stats.json", stats.dump(2) + "\n");
        summary << ds.name << ": " << ctx.graph.node_count() << " nodes, " << ctx.graph.edge_count()
                << " edges, " << labeled << " labeled, total energy " << ctx.energies.total() << "\n";
    }
    return summary.str();
}

DescribeOutcome run_describe(const PipelineConfig& cfg, const DescribeRequest& request) {
    const auto& ds = cfg.dataset(request.dataset);
    if (!request.all && request.node_ids.empty())
        throw ValidationError("describe: pass --all or at least one --node");
    const auto ctx = load_dataset(cfg, ds);

    std::vector<NodeIndex> targets;
    if (request.all) {
        for (NodeIndex v = 0; v < ctx.graph.node_count(); ++v) targets.push_back(v);
    } else {
        for (const auto& id : request.node_ids) targets.push_back(ctx.graph.require(id));
    }

    const DescriptionRenderer renderer(
        ctx.graph, DescriptionTemplate::resolve(ds.description_template, cfg.base_dir),
        cfg.make_tokenizer());
    std::vector<std::string> lines(targets.size());
    std::vector<std::string> failures(targets.size());
    parallel_for(targets.size(), cfg.threads, [&](std::size_t i) {
        try {
            const auto d = describe_node(cfg, ctx, renderer, targets[i], cfg.token_limit);
            ojson j = description_to_json(ctx.graph, d.description);
            j["token_limit"] = cfg.token_limit;
            j["selection"] = selection_to_json(ctx.graph, d.selection);
            lines[i] = j.dump();
        } catch (const BudgetTooSmallError& e) {
            failures[i] = e.what();
        }
    });

    DescribeOutcome outcome;
    outcome.path = cfg.output_dir / "descriptions" / (ds.name + ".jsonl");
    std::vector<std::string> ok;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (failures[i].empty()) ok.push_back(std::move(lines[i]));
        else outcome.failures.push_back(std::move(failures[i]));
    }
    write_lines(outcome.path, ok);
    outcome.written = ok.size();
    return outcome;
}

GenerateOutcome run_generate(const PipelineConfig& cfg) {
    if (cfg.tasks.empty()) throw ValidationError("generate: no tasks configured");
    DatasetCache cache(cfg);
    const Tokenizer tok = cfg.make_tokenizer();

    struct PairState {
        const TaskConfig* task;
        InstructionTemplates templates;
        std::vector<TaskInstance> train;
        std::vector<InstructionRecord> standard;
    };
    std::vector<PairState> states;
    ComplexityProfile profile;
    std::vector<PairKey> pairs;
    for (const auto& t : cfg.tasks) {
        const auto& ctx = cache.get(t.dataset);
        PairState st{&t, InstructionTemplates::resolve(t.task, t.templates, cfg.base_dir), {}, {}};
        st.train = split_instances(cfg, t, build_instances(cfg, ctx, t)).train;
        if (st.train.empty())
            throw InsufficientDataError("no training instances for " + to_string(t.key()));
        for (const auto& in : st.train) st.standard.push_back(render_standard(in, st.templates));
        profile.task_complexity[t.key()] = task_complexity(st.standard, tok);
        profile.dataset_complexity[t.dataset] = dataset_complexity(ctx.energies);
        pairs.push_back(t.key());
        states.push_back(std::move(st));
    }

    GenerateOutcome outcome;
    outcome.plan = allocation_plan(profile, pairs, cfg.allocation);
    const LlmClient client(cfg.llm);

    std::error_code ec;
    fs::remove_all(cfg.output_dir / "packages", ec);

    ojson manifest;
    manifest["config_hash"] = cfg.hash();
    manifest["seed"] = cfg.seed;
    manifest["package_ratio"] = {{"standard", cfg.packages.standard}, {"cot", cfg.packages.cot}};
    manifest["total_packages"] = outcome.plan.total;
    manifest["pairs"] = ojson::array();

    for (auto& st : states) {
        const PairKey key = st.task->key();
        const std::string name = to_string(key);
        const std::uint64_t count = outcome.plan.counts.at(key);
        const std::size_t need_standard = count * cfg.packages.standard;
        const std::size_t need_cot = count * cfg.packages.cot;
        if (st.train.size() < need_standard)
            throw InsufficientDataError("insufficient gold labels for " + name + ": " +
                                        std::to_string(count) + " packages need " +
                                        std::to_string(need_standard) + " standard records, " +
                                        std::to_string(st.train.size()) + " available");

        std::vector<std::size_t> order(st.train.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        const std::uint64_t generate_seed = derive_seed(cfg.seed, "generate", name);
        Rng(generate_seed).shuffle(std::span(order));

        std::vector<InstructionRecord> standard;
        for (std::size_t i = 0; i < need_standard; ++i) standard.push_back(st.standard[order[i]]);

        std::vector<const TaskInstance*> cot_sources;
        for (std::size_t i = 0; i < order.size() && cot_sources.size() < need_cot; ++i) {
            const auto& in = st.train[order[i]];
            if (in.task != Task::link_prediction || in.gold == "yes") cot_sources.push_back(&in);
        }
        if (cot_sources.size() < need_cot)
            throw InsufficientDataError("insufficient CoT sources for " + name + ": need " +
                                        std::to_string(need_cot) + ", have " +
                                        std::to_string(cot_sources.size()));
        std::vector<CotPrompt> prompts;
        for (const auto* in : cot_sources) prompts.push_back(render_cot_prompt(*in, st.templates));
        const auto bodies = client.distill_batch(prompts);
        std::vector<InstructionRecord> cot;
        for (std::size_t i = 0; i < cot_sources.size(); ++i)
            cot.push_back(render_cot_record(*cot_sources[i], st.templates, bodies[i]));

        const std::uint64_t package_seed = derive_seed(cfg.seed, "packages", name);
        const auto packages = assemble_packages(std::move(standard), std::move(cot), cfg.packages, package_seed);
        if (packages.size() != count)
            throw Error(ErrorKind::runtime, "package count mismatch for " + name);

        ojson entry;
        entry["task"] = to_string(key.task);
        entry["dataset"] = key.dataset;
        entry["packages"] = packages.size();
        entry["standard_records"] = need_standard;
        entry["cot_records"] = need_cot;
        entry["train_instances"] = st.train.size();
        entry["task_complexity"] = profile.task_complexity.at(key);
        entry["dataset_complexity"] = profile.dataset_complexity.at(key.dataset);
        entry["seeds"] = {{"generate", generate_seed}, {"packages", package_seed}};
        entry["files"] = ojson::array();
        const fs::path dir = fs::path("packages") / std::string(to_string(key.task)) / key.dataset;
        for (std::size_t p = 0; p < packages.size(); ++p) {
            char file[32];
            std::snprintf(file, sizeof file, "package_%03zu.jsonl", p + 1);
            const fs::path rel = dir / file;
            emit_jsonl(packages[p].records, cfg.output_dir / rel);
            entry["files"].push_back({{"path", rel.generic_string()},
                                      {"standard", packages[p].standard_count},
                                      {"cot", packages[p].cot_count}});
            ++outcome.package_files;
        }
        manifest["pairs"].push_back(std::move(entry));
    }

    write_text(cfg.output_dir / "allocation.json", outcome.plan.to_json().dump(2) + "\n");
    outcome.manifest = cfg.output_dir / "manifest.json";
    write_text(outcome.manifest, manifest.dump(2) + "\n");
    return outcome;
}

std::string run_split(const PipelineConfig& cfg) {
    if (cfg.tasks.empty()) throw ValidationError("split: no tasks configured");
    DatasetCache cache(cfg);
    std::ostringstream summary;
    for (const auto& t : cfg.tasks) {
        const auto& ctx = cache.get(t.dataset);
        const auto templates = InstructionTemplates::resolve(t.task, t.templates, cfg.base_dir);
        auto parts = split_instances(cfg, t, build_instances(cfg, ctx, t));
        const fs::path dir = cfg.output_dir / "splits" / t.dataset / std::string(to_string(t.task));
        const std::pair<const char*, const std::vector<TaskInstance>*> named[] = {
            {"train", &parts.train}, {"val", &parts.val}, {"test", &parts.test}};
        for (const auto& [part, items] : named) {
            std::vector<InstructionRecord> records;
            std::vector<std::string> gold;
            for (const auto& in : *items) {
                records.push_back(render_standard(in, templates));
                ojson g;
                g["id"] = in.id;
                g["output"] = in.gold;
                gold.push_back(g.dump());
            }
            emit_jsonl(records, dir / (std::string(part) + ".jsonl"));
            write_lines(dir / (std::string(part) + "_gold.jsonl"), gold);
        }
        summary << to_string(t.key()) << ": train " << parts.train.size() << ", val "
                << parts.val.size() << ", test " << parts.test.size() << "\n";
    }
    return summary.str();
}

namespace {

std::vector<std::pair<std::string, std::string>> read_id_pairs(const fs::path& path,
                                                               std::string_view value_field) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            const auto j = json::parse(line);
            rows.emplace_back(j.at("id").get<std::string>(),
                              j.at(std::string(value_field)).get<std::string>());
        } catch (const json::exception& e) {
            throw ParseError(path, lineno, e.what());
        }
    }
    return rows;
}

} // namespace

ojson run_eval(const PipelineConfig& cfg, const EvalRequest& request) {
    const TaskConfig* task = nullptr;
    for (const auto& t : cfg.tasks)
        if (t.task == request.task && t.dataset == request.dataset) task = &t;
    if (!task)
        throw ValidationError("eval: task " + to_string(PairKey{request.task, request.dataset}) +
                              " is not configured");

    const fs::path gold_path = request.gold.value_or(cfg.output_dir / "splits" / request.dataset /
                                                     std::string(to_string(request.task)) /
                                                     "test_gold.jsonl");
    if (!fs::is_regular_file(gold_path))
        throw ValidationError("eval: gold file not found: " + gold_path.string() +
                              " (run the split command first)");
    const auto gold = read_id_pairs(gold_path, "output");
    const auto preds = read_id_pairs(request.predictions, "prediction");

    std::map<std::string, std::string> by_id;
    for (const auto& [id, p] : preds)
        if (!by_id.emplace(id, p).second)
            throw ValidationError("eval: duplicate prediction id '" + id + "'");
    std::set<std::string> gold_ids;
    std::vector<std::pair<std::string, std::string>> matched;
    std::size_t missing = 0;
    for (const auto& [id, g] : gold) {
        gold_ids.insert(id);
        if (auto it = by_id.find(id); it != by_id.end()) matched.emplace_back(g, it->second);
        else ++missing;
    }
    std::size_t unmatched = 0;
    for (const auto& [id, p] : preds)
        if (!gold_ids.contains(id)) ++unmatched;
    if (matched.empty()) throw ValidationError("eval: no prediction matches a gold id");

    ojson report;
    report["task"] = to_string(request.task);
    report["dataset"] = request.dataset;
    report["matched"] = matched.size();
    report["unmatched_predictions"] = unmatched;
    report["missing_predictions"] = missing;
    ojson metrics;
    if (request.task == Task::graph_to_text) {
        std::vector<TextPair> pairs;
        for (const auto& [g, p] : matched) pairs.push_back({p, {g}});
        metrics["bleu4"] = bleu4(pairs);
        metrics["meteor_lite"] = meteor_lite(pairs);
        metrics["rouge_l"] = rouge_l(pairs);
        metrics["chrf_pp"] = chrf_pp(pairs);
    } else {
        ClassificationEval ev;
        for (const auto& [g, p] : matched) {
            ev.gold.push_back(g);
            ev.predicted.push_back(p);
        }
        if (request.task == Task::link_prediction) ev.label_set = {"no", "yes"};
        else ev.label_set = task->label_space;
        const auto s = f1_suite(ev);
        metrics["macro_f1"] = s.macro;
        metrics["micro_f1"] = s.micro;
        metrics["weighted_f1"] = s.weighted;
        metrics["accuracy"] = s.accuracy;
    }
    report["metrics"] = metrics;

    const fs::path out = request.report.value_or(cfg.output_dir / "eval" / request.dataset /
                                                 (std::string(to_string(request.task)) + ".json"));
    write_text(out, report.dump(2) + "\n");
    return report;
}

} // namespace graphcorpus
