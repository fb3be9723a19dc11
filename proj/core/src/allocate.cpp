#include "graphcorpus/allocate.hpp"

#include "graphcorpus/apportion.hpp"
#include "graphcorpus/error.hpp"

#include <algorithm>
#include <numeric>

namespace graphcorpus {

std::string to_string(const PairKey& key) {
    return std::string(to_string(key.task)) + "/" + key.dataset;
}

double task_complexity(std::span<const InstructionRecord> records, const Tokenizer& tokenizer) {
    if (records.empty()) throw ValidationError("task_complexity: no records");
    long double sum = 0;
    for (const auto& r : records) sum += static_cast<long double>(tokenizer.count(r.output));
    return static_cast<double>(sum / static_cast<long double>(records.size()));
}

std::uint64_t dataset_complexity(const EnergyTable& energies) { return energies.total(); }

nlohmann::ordered_json AllocationPlan::to_json() const {
    nlohmann::ordered_json j;
    j["total"] = total;
    j["uniform_fallback"] = uniform_fallback;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& [key, count] : counts) {
        nlohmann::ordered_json p;
        p["task"] = to_string(key.task);
        p["dataset"] = key.dataset;
        p["weight"] = weights.at(key);
        p["packages"] = count;
        j["pairs"].push_back(std::move(p));
    }
    return j;
}

AllocationPlan allocation_plan(const ComplexityProfile& profile, std::span<const PairKey> active_pairs,
                               const AllocationOptions& options) {
    if (active_pairs.empty()) throw ValidationError("allocation: no active pairs");
    std::vector<PairKey> pairs(active_pairs.begin(), active_pairs.end());
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
        throw ValidationError("allocation: duplicate active pair");

    const auto n = static_cast<std::uint64_t>(pairs.size());
    if (options.total_packages < n * options.min_packages)
        throw ValidationError("allocation: " + std::to_string(options.total_packages) +
                              " packages cannot give " + std::to_string(pairs.size()) +
                              " pairs at least " + std::to_string(options.min_packages) + " each");

    std::vector<long double> tc, dc;
    for (const auto& key : pairs) {
        auto t = profile.task_complexity.find(key);
        if (t == profile.task_complexity.end())
            throw ValidationError("allocation: no task complexity for " + to_string(key));
        if (!(t->second >= 0.0))
            throw ValidationError("allocation: negative task complexity for " + to_string(key));
        auto d = profile.dataset_complexity.find(key.dataset);
        if (d == profile.dataset_complexity.end())
            throw ValidationError("allocation: no dataset complexity for " + key.dataset);
        tc.push_back(t->second);
        dc.push_back(static_cast<long double>(d->second));
    }
    auto normalize = [](std::vector<long double>& v) {
        const long double s = std::accumulate(v.begin(), v.end(), 0.0L);
        if (s > 0)
            for (auto& x : v) x /= s;
    };
    normalize(tc);
    normalize(dc);

    std::vector<double> weights(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        weights[i] = static_cast<double>(options.combine == WeightCombine::product
                                             ? tc[i] * dc[i]
                                             : (tc[i] + dc[i]) / 2);

    AllocationPlan plan;
    plan.total = options.total_packages;
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(wsum > 0)) {
        plan.uniform_fallback = true;
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(pairs.size()));
    } else {
        for (auto& w : weights) w /= wsum;
    }

    const std::uint64_t remaining = options.total_packages - n * options.min_packages;
    std::vector<std::uint64_t> extra(pairs.size(), 0);
    if (remaining > 0) extra = largest_remainder(weights, remaining);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        plan.counts[pairs[i]] = options.min_packages + extra[i];
        plan.weights[pairs[i]] = weights[i];
    }
    return plan;
}

} // namespace graphcorpus
