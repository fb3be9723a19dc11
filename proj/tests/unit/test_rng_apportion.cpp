#include "graphcorpus/apportion.hpp"
#include "graphcorpus/rng.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace gc = graphcorpus;

TEST(Rng, DerivedSeedsDependOnEveryPart) {
    EXPECT_EQ(gc::derive_seed(7, "walks", "n01"), gc::derive_seed(7, "walks", "n01"));
    EXPECT_NE(gc::derive_seed(7, "walks", "n01"), gc::derive_seed(8, "walks", "n01"));
    EXPECT_NE(gc::derive_seed(7, "walks", "n01"), gc::derive_seed(7, "split", "n01"));
    EXPECT_NE(gc::derive_seed(7, "walks", "n01"), gc::derive_seed(7, "walks", "n02"));
}

TEST(Rng, UniformIndexStaysInRangeAndCoversIt) {
    gc::Rng rng(1);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) ++hits[rng.uniform_index(7)];
    for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Rng, ShuffleIsAPermutationAndSeeded) {
    std::vector<int> a(100), b;
    std::iota(a.begin(), a.end(), 0);
    b = a;
    gc::Rng(3).shuffle(std::span(a));
    gc::Rng(3).shuffle(std::span(b));
    EXPECT_EQ(a, b);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(Apportion, MatchesExactRationalOracle) {
    const auto data = gc::testing::load_json(gc::testing::oracle_data_dir() / "apportion_cases.json");
    for (const auto& c : data["integer_cases"]) {
        const auto w = c["weights"].get<std::vector<std::uint64_t>>();
        const auto total = c["total"].get<std::uint64_t>();
        EXPECT_EQ(gc::largest_remainder(std::span<const std::uint64_t>(w), total),
                  c["seats"].get<std::vector<std::uint64_t>>());
        std::vector<double> wd(w.begin(), w.end());
        EXPECT_EQ(gc::largest_remainder(std::span<const double>(wd), total),
                  c["seats"].get<std::vector<std::uint64_t>>());
    }
}

TEST(Apportion, TieRankDecidesEqualRemainders) {
    const std::vector<double> w{1, 1};
    const std::vector<std::size_t> rank{1, 0};
    EXPECT_EQ(gc::largest_remainder(w, 1), (std::vector<std::uint64_t>{1, 0}));
    EXPECT_EQ(gc::largest_remainder(w, 1, rank), (std::vector<std::uint64_t>{0, 1}));
}

TEST(Apportion, AlwaysSumsToTotal) {
    gc::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        std::vector<double> w(1 + rng.uniform_index(12));
        for (auto& x : w) x = static_cast<double>(rng.uniform_index(1000000)) / 7.0;
        w[0] += 1e-3;
        const auto total = rng.uniform_index(100000);
        const auto seats = gc::largest_remainder(w, total);
        EXPECT_EQ(std::accumulate(seats.begin(), seats.end(), std::uint64_t{0}), total);
    }
}
