#include "graphcorpus/apportion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace graphcorpus {

__extension__ using uint128 = unsigned __int128;
namespace {

std::vector<std::size_t> ranks_or_identity(std::span<const std::size_t> tie_rank, std::size_t n) {
    if (tie_rank.empty()) {
        std::vector<std::size_t> r(n);
        std::iota(r.begin(), r.end(), std::size_t{0});
        return r;
    }
    if (tie_rank.size() != n) throw std::invalid_argument("tie_rank size mismatch");
    return {tie_rank.begin(), tie_rank.end()};
}

} // namespace

std::vector<std::uint64_t> largest_remainder(std::span<const double> weights, std::uint64_t total,
                                             std::span<const std::size_t> tie_rank) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("largest_remainder: no weights");
    long double sum = 0;
    for (double w : weights) {
        if (!(w >= 0) || !std::isfinite(w)) throw std::invalid_argument("largest_remainder: bad weight");
        sum += w;
    }
    if (!(sum > 0)) throw std::invalid_argument("largest_remainder: weights sum to zero");
    const auto rank = ranks_or_identity(tie_rank, n);

    std::vector<std::uint64_t> seats(n);
    std::vector<long double> remainder(n);
    std::uint64_t assigned = 0;
    // Remainders are kept as total * w mod sum; fmod is exact, so weights
    // with integral products tie exactly where the rational quotas do.
    for (std::size_t i = 0; i < n; ++i) {
        const long double num = static_cast<long double>(total) * weights[i];
        remainder[i] = std::fmod(num, sum);
        seats[i] = static_cast<std::uint64_t>(std::llround((num - remainder[i]) / sum));
        assigned += seats[i];
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return rank[a] < rank[b];
    });

    // Rounding in the quotas can leave the floors one unit off in either
    // direction; both cases are settled through the remainder order.
    std::size_t k = 0;
    while (assigned < total) {
        ++seats[order[k % n]];
        ++assigned;
        ++k;
    }
    for (std::size_t j = n; assigned > total;) {
        j = (j == 0 ? n : j) - 1;
        if (seats[order[j]] > 0) {
            --seats[order[j]];
            --assigned;
        }
    }
    return seats;
}

std::vector<std::uint64_t> largest_remainder(std::span<const std::uint64_t> weights,
                                             std::uint64_t total,
                                             std::span<const std::size_t> tie_rank) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("largest_remainder: no weights");
    uint128 sum = 0;
    for (auto w : weights) sum += w;
    if (sum == 0) throw std::invalid_argument("largest_remainder: weights sum to zero");
    const auto rank = ranks_or_identity(tie_rank, n);

    std::vector<std::uint64_t> seats(n);
    std::vector<uint128> remainder(n);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        uint128 num = static_cast<uint128>(total) * weights[i];
        seats[i] = static_cast<std::uint64_t>(num / sum);
        remainder[i] = num % sum;
        assigned += seats[i];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return rank[a] < rank[b];
    });
    // exact arithmetic: leftover < n
    for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++seats[order[k]];
    return seats;
}

} // namespace graphcorpus
