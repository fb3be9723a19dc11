#include "graphcorpus/description.hpp"
#include "graphcorpus/energy.hpp"
#include "graphcorpus/metrics.hpp"
#include "graphcorpus/rng.hpp"
#include "graphcorpus/selection.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

namespace gc = graphcorpus;

namespace {

const std::vector<std::string> kWords = {
    "graph", "neural", "learning", "model", "sparse", "attention", "kernel", "embedding",
    "retrieval", "language", "semantic", "query", "index", "schema", "benchmark", "inference"};

std::string sentence(gc::Rng& rng, std::size_t lo, std::size_t hi) {
    const auto len = lo + rng.uniform_index(hi - lo + 1);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += (i ? " " : "") + kWords[rng.uniform_index(kWords.size())];
    return s;
}

gc::AttributedGraph make_graph(std::size_t n, std::size_t edges_per_node) {
    gc::Rng rng(n);
    gc::GraphBuilder b("bench", gc::SchemaConfig{.attribute_fields = {"title", "abstract"}});
    for (std::size_t i = 0; i < n; ++i)
        b.add_node({"n" + std::to_string(i), "PAPER", {{"title", sentence(rng, 4, 10)}, {"abstract", sentence(rng, 20, 60)}},
                    std::nullopt});
    for (std::size_t e = 0; e < n * edges_per_node; ++e)
        b.add_edge("n" + std::to_string(rng.uniform_index(n)), "n" + std::to_string(rng.uniform_index(n)), "CITES", true);
    return std::move(b).build();
}

void BM_NodeEnergy(benchmark::State& state) {
    gc::Rng rng(1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(1024);
    for (auto& [t, d] : pairs) {
        t = rng.uniform_index(4000);
        d = rng.uniform_index(100000);
    }
    for (auto _ : state)
        for (const auto& [t, d] : pairs) benchmark::DoNotOptimize(gc::node_energy(t, d));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_NodeEnergy);

void BM_ComputeEnergies(benchmark::State& state) {
    const auto g = make_graph(static_cast<std::size_t>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(gc::compute_energies(g, gc::Tokenizer{}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComputeEnergies)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DescribeNode(benchmark::State& state) {
    const auto g = make_graph(2000, 5);
    const auto energies = gc::compute_energies(g, gc::Tokenizer{});
    const gc::DescriptionRenderer r(g, gc::DescriptionTemplate::builtin("paper_title"), gc::Tokenizer{});
    const auto limit = static_cast<std::size_t>(state.range(0));
    gc::SelectionConfig cfg;
    gc::NodeIndex v = 0;
    for (auto _ : state) {
        const auto sel = gc::select_for_target(g, energies, v, std::max(limit, r.boilerplate_cost(v)), cfg, r);
        benchmark::DoNotOptimize(r.render(v, sel));
        v = static_cast<gc::NodeIndex>((v + 1) % g.node_count());
    }
}
BENCHMARK(BM_DescribeNode)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_CountTokens(benchmark::State& state) {
    gc::Rng rng(3);
    const auto text = sentence(rng, 200, 200);
    for (auto _ : state) benchmark::DoNotOptimize(gc::count_tokens(text, {}));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_CountTokens);

std::vector<gc::TextPair> text_pairs(std::size_t n) {
    gc::Rng rng(4);
    std::vector<gc::TextPair> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.push_back({sentence(rng, 80, 150), {sentence(rng, 80, 150)}});
    return pairs;
}

void BM_Bleu4(benchmark::State& state) {
    const auto pairs = text_pairs(100);
    for (auto _ : state) benchmark::DoNotOptimize(gc::bleu4(pairs));
}
BENCHMARK(BM_Bleu4)->Unit(benchmark::kMillisecond);

void BM_RougeL(benchmark::State& state) {
    const auto pairs = text_pairs(100);
    for (auto _ : state) benchmark::DoNotOptimize(gc::rouge_l(pairs));
}
BENCHMARK(BM_RougeL)->Unit(benchmark::kMillisecond);

void BM_ChrfPP(benchmark::State& state) {
    const auto pairs = text_pairs(100);
    for (auto _ : state) benchmark::DoNotOptimize(gc::chrf_pp(pairs));
}
BENCHMARK(BM_ChrfPP)->Unit(benchmark::kMillisecond);

void BM_F1Suite(benchmark::State& state) {
    gc::Rng rng(5);
    const std::vector<std::string> labels{"cs.AI", "cs.CL", "cs.DB", "cs.LG"};
    gc::ClassificationEval ev;
    ev.label_set = labels;
    for (int i = 0; i < 10000; ++i) {
        ev.gold.push_back(labels[rng.uniform_index(4)]);
        ev.predicted.push_back(labels[rng.uniform_index(4)]);
    }
    for (auto _ : state) benchmark::DoNotOptimize(gc::f1_suite(ev));
}
BENCHMARK(BM_F1Suite)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
