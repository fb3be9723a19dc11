#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace graphcorpus {

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent stream seed from the root seed, a component label
/// and an entity id, so results never depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::string_view entity = {}) noexcept;

/// mt19937_64 with portable bounded draws. The standard distributions are
/// implementation-defined, so they are avoided to keep output identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n);

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(uniform_index(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace graphcorpus
