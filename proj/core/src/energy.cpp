#include "graphcorpus/energy.hpp"

#include "graphcorpus/error.hpp"
#include "graphcorpus/parallel.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace graphcorpus {

__extension__ using uint128 = unsigned __int128;

LogBase::LogBase(double base) : base_(base) {
    if (!std::isfinite(base) || !(base > 1.0))
        throw ValidationError("log base must be a finite number > 1, got " + std::to_string(base));
}

LogBase LogBase::natural() {
    LogBase b(std::exp(1.0));
    b.natural_ = true;
    return b;
}

namespace {

// floor(e^k) for k = 0..44. e^k is irrational for k > 0, so x <= e^k holds
// exactly when x <= floor(e^k).
constexpr std::uint64_t kFloorExp[] = {
    1ull, 2ull, 7ull, 20ull, 54ull, 148ull, 403ull, 1096ull, 2980ull, 8103ull, 22026ull, 59874ull,
    162754ull, 442413ull, 1202604ull, 3269017ull, 8886110ull, 24154952ull, 65659969ull,
    178482300ull, 485165195ull, 1318815734ull, 3584912846ull, 9744803446ull, 26489122129ull,
    72004899337ull, 195729609428ull, 532048240601ull, 1446257064291ull, 3931334297144ull,
    10686474581524ull, 29048849665247ull, 78962960182680ull, 214643579785916ull,
    583461742527454ull, 1586013452313430ull, 4311231547115195ull, 11719142372802611ull,
    31855931757113756ull, 86593400423993746ull, 235385266837019985ull, 639843493530054949ull,
    1739274941520501047ull, 4727839468229346561ull, 12851600114359308275ull};

} // namespace

std::uint64_t ceil_log(std::uint64_t x, LogBase base) {
    if (x <= 1) return 0;
    if (base.is_natural()) {
        std::uint64_t k = 0;
        while (k < std::size(kFloorExp) && x > kFloorExp[k]) ++k;
        return k;
    }
    const double b = base.value();
    if (b == std::floor(b) && b <= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
        // integer base: exact power comparison
        const auto ib = static_cast<std::uint64_t>(b);
        std::uint64_t k = 0;
        uint128 p = 1;
        while (p < x) {
            p *= ib;
            ++k;
        }
        return k;
    }
    // Real base: estimate, then settle the boundary against base^k >= x in
    // extended precision.
    const long double lx = std::log(static_cast<long double>(x));
    const long double lb = std::log(static_cast<long double>(b));
    auto k = static_cast<std::int64_t>(std::ceil(lx / lb));
    auto reaches = [&](std::int64_t kk) { return static_cast<long double>(kk) * lb >= lx; };
    while (k > 0 && reaches(k - 1)) --k;
    while (!reaches(k)) ++k;
    return static_cast<std::uint64_t>(k);
}

std::uint64_t node_energy(std::uint64_t token_count, std::uint64_t degree, LogBase base) {
    if (token_count == 0 || degree == 0) return 0;
    return token_count * ceil_log(degree + 1, base);
}

std::uint64_t EnergyTable::total() const {
    return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const NodeEnergy& e) { return acc + e.energy; });
}

std::string node_text(const Node& node) {
    std::string text;
    for (const auto& [field, value] : node.attributes) {
        if (!text.empty()) text.push_back(' ');
        text += value;
    }
    return text;
}

EnergyTable compute_energies(const AttributedGraph& graph, const Tokenizer& tokenizer, LogBase base,
                             unsigned threads) {
    std::vector<NodeEnergy> entries(graph.node_count());
    parallel_for(entries.size(), threads, [&](std::size_t i) {
        const auto v = static_cast<NodeIndex>(i);
        NodeEnergy e;
        e.node = v;
        e.token_count = tokenizer.count(node_text(graph.node(v)));
        e.degree = graph.degree(v);
        e.energy = node_energy(e.token_count, e.degree, base);
        entries[i] = e;
    });
    return EnergyTable(std::move(entries));
}

void write_energies_jsonl(const AttributedGraph& graph, const EnergyTable& energies,
                          std::ostream& out) {
    for (const auto& e : energies.entries()) {
        nlohmann::ordered_json j;
        j["node"] = graph.node(e.node).id;
        j["token_count"] = e.token_count;
        j["degree"] = e.degree;
        j["energy"] = e.energy;
        out << j.dump() << '\n';
    }
}

} // namespace graphcorpus
