#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace graphcorpus {

/// Largest-remainder (Hamilton) apportionment of `total` units in proportion
/// to `weights`. Each entry first receives the floor of its quota; leftover
/// units go to the largest fractional remainders. Equal remainders are
/// resolved by `tie_rank` (lower rank wins); an empty `tie_rank` means the
/// input order. The result always sums to `total`.
///
/// Weights must be non-negative with a positive sum.
std::vector<std::uint64_t> largest_remainder(std::span<const double> weights, std::uint64_t total,
                                             std::span<const std::size_t> tie_rank = {});

/// Exact integer variant: quotas and remainders are computed as rationals.
std::vector<std::uint64_t> largest_remainder(std::span<const std::uint64_t> weights,
                                             std::uint64_t total,
                                             std::span<const std::size_t> tie_rank = {});

} // namespace graphcorpus
