#include "graphcorpus/rng.hpp"

#include <limits>

namespace graphcorpus {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::string_view entity) noexcept {
    std::uint64_t h = splitmix64(root);
    h = splitmix64(h ^ fnv1a64(label));
    // length prefix keeps ("ab", "c") and ("a", "bc") apart
    h = splitmix64(h ^ label.size());
    return splitmix64(h ^ fnv1a64(entity));
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    // rejection sampling on the top of the range
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

} // namespace graphcorpus
