#include "graphcorpus/allocate.hpp"
#include "graphcorpus/error.hpp"
#include "graphcorpus/rng.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace gc = graphcorpus;

namespace {

const gc::PairKey nc_cora{gc::Task::node_classification, "cora"};
const gc::PairKey lp_cora{gc::Task::link_prediction, "cora"};
const gc::PairKey g2t_agenda{gc::Task::graph_to_text, "agenda"};

std::uint64_t sum(const gc::AllocationPlan& p) {
    std::uint64_t s = 0;
    for (const auto& [k, v] : p.counts) s += v;
    return s;
}

} // namespace

TEST(Allocate, TaskComplexityIsMeanOutputTokens) {
    std::vector<gc::InstructionRecord> recs(2);
    recs[0].output = "a b c";
    recs[1].output = "one";
    EXPECT_DOUBLE_EQ(gc::task_complexity(recs), 2.0);
    EXPECT_THROW((void)gc::task_complexity({}), gc::ValidationError);
}

TEST(Allocate, DatasetComplexityIsTotalEnergy) {
    const auto g = gc::testing::load_fixture("fuzzy_case");
    EXPECT_EQ(gc::dataset_complexity(gc::compute_energies(g, gc::Tokenizer{})), 126u);
}

TEST(Allocate, MinimumThenProportional) {
    // two pairs on one dataset, task complexities 1 and 3 -> weights 1/4 and 3/4
    const auto oracle = gc::testing::load_json(gc::testing::oracle_data_dir() / "apportion_cases.json")["allocation_example"];
    gc::ComplexityProfile prof;
    prof.task_complexity[lp_cora] = oracle["weights"][0].get<double>();
    prof.task_complexity[nc_cora] = oracle["weights"][1].get<double>();
    prof.dataset_complexity["cora"] = 500;
    const std::vector<gc::PairKey> pairs{nc_cora, lp_cora};
    const auto plan = gc::allocation_plan(prof, pairs, {oracle["total"].get<std::uint64_t>(), oracle["min"].get<std::uint64_t>()});
    EXPECT_EQ(plan.counts.at(lp_cora), oracle["counts"][0].get<std::uint64_t>());
    EXPECT_EQ(plan.counts.at(nc_cora), oracle["counts"][1].get<std::uint64_t>());
    EXPECT_DOUBLE_EQ(plan.weights.at(nc_cora), 0.75);
    EXPECT_FALSE(plan.uniform_fallback);
}

TEST(Allocate, ErrorsAndFallback) {
    gc::ComplexityProfile prof;
    prof.task_complexity[nc_cora] = 0;
    prof.task_complexity[lp_cora] = 0;
    prof.dataset_complexity["cora"] = 0;
    const std::vector<gc::PairKey> pairs{nc_cora, lp_cora};
    EXPECT_THROW((void)gc::allocation_plan(prof, pairs, {1, 1}), gc::ValidationError);
    const auto plan = gc::allocation_plan(prof, pairs, {5, 1});
    EXPECT_TRUE(plan.uniform_fallback);
    EXPECT_EQ(sum(plan), 5u);
    // equal remainders go to the lower pair in sorted order
    EXPECT_EQ(plan.counts.at(lp_cora), 3u);
    const std::vector<gc::PairKey> unknown{g2t_agenda};
    EXPECT_THROW((void)gc::allocation_plan(prof, unknown, {5, 1}), gc::ValidationError);
    const std::vector<gc::PairKey> dup{nc_cora, nc_cora};
    EXPECT_THROW((void)gc::allocation_plan(prof, dup, {5, 1}), gc::ValidationError);
}

TEST(Allocate, PropertiesOnRandomProfiles) {
    gc::Rng rng(17);
    const std::vector<std::string> datasets{"arxiv", "cora", "agenda", "scierc"};
    const std::vector<gc::Task> tasks{gc::Task::node_classification, gc::Task::link_prediction,
                                      gc::Task::graph_to_text};
    for (int round = 0; round < 200; ++round) {
        gc::ComplexityProfile prof;
        std::vector<gc::PairKey> pairs;
        for (const auto& d : datasets) {
            prof.dataset_complexity[d] = 1 + rng.uniform_index(100000);
            for (auto t : tasks)
                if (rng.uniform_index(2) == 0) {
                    pairs.push_back({t, d});
                    prof.task_complexity[pairs.back()] = 1.0 + static_cast<double>(rng.uniform_index(300));
                }
        }
        if (pairs.empty()) continue;
        const auto total = pairs.size() + rng.uniform_index(200);
        const auto combine = rng.uniform_index(2) ? gc::WeightCombine::product : gc::WeightCombine::sum;
        const auto plan = gc::allocation_plan(prof, pairs, {total, 1, combine});
        EXPECT_EQ(sum(plan), total);
        double wsum = 0;
        for (const auto& [k, c] : plan.counts) {
            EXPECT_GE(c, 1u);
            wsum += plan.weights.at(k);
            // largest remainder keeps every pair within one of its quota
            const double quota = 1.0 + plan.weights.at(k) * static_cast<double>(total - pairs.size());
            EXPECT_LT(std::abs(static_cast<double>(c) - quota), 1.0 + 1e-9);
        }
        EXPECT_NEAR(wsum, 1.0, 1e-9);

        // scaling one signal uniformly changes nothing
        auto scaled = prof;
        for (auto& [k, v] : scaled.task_complexity) v *= 4.0;
        for (auto& [k, v] : scaled.dataset_complexity) v *= 3;
        EXPECT_EQ(gc::allocation_plan(scaled, pairs, {total, 1, combine}).counts, plan.counts);

        // a heavier pair never receives fewer packages
        const auto bigger = gc::allocation_plan(prof, pairs, {total * 2, 1, combine});
        for (const auto& [k, c] : plan.counts)
            for (const auto& [k2, c2] : plan.counts)
                if (plan.weights.at(k) > plan.weights.at(k2) + 1e-12) EXPECT_GE(bigger.counts.at(k), bigger.counts.at(k2));
    }
}

TEST(Allocate, PlanJson) {
    gc::ComplexityProfile prof;
    prof.task_complexity[nc_cora] = 1;
    prof.dataset_complexity["cora"] = 1;
    const std::vector<gc::PairKey> pairs{nc_cora};
    const auto j = gc::allocation_plan(prof, pairs, {3, 1}).to_json();
    EXPECT_EQ(j["total"], 3);
    EXPECT_EQ(j["pairs"][0]["task"], "node_classification");
    EXPECT_EQ(j["pairs"][0]["packages"], 3);
}
