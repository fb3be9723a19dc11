#include "graphcorpus/corpus.hpp"

#include "graphcorpus/apportion.hpp"

#include <fstream>
#include <ostream>

namespace graphcorpus {

std::string_view to_string(SplitUnit unit) {
    switch (unit) {
    case SplitUnit::node: return "node";
    case SplitUnit::graph: return "graph";
    case SplitUnit::record: return "record";
    }
    return "?";
}

SplitUnit split_unit_from_string(std::string_view name) {
    for (auto u : {SplitUnit::node, SplitUnit::graph, SplitUnit::record})
        if (to_string(u) == name) return u;
    throw ValidationError("unknown split unit '" + std::string(name) + "'");
}

void SplitSpec::validate() const {
    if (ratios[0] + ratios[1] + ratios[2] == 0) throw ValidationError("split ratios sum to zero");
}

SplitSpec SplitSpec::from_json(const nlohmann::json& j) {
    SplitSpec s;
    try {
        const auto& r = j.at("ratios");
        if (!r.is_array() || r.size() != 3)
            throw ValidationError("split ratios must be [train, val, test]");
        for (std::size_t i = 0; i < 3; ++i) s.ratios[i] = r[i].get<std::uint64_t>();
        s.seed = j.value("seed", s.seed);
        s.unit = split_unit_from_string(j.value("unit", std::string("node")));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("split spec: ") + e.what());
    }
    s.validate();
    return s;
}

nlohmann::json SplitSpec::to_json() const {
    return {{"ratios", ratios}, {"seed", seed}, {"unit", std::string(to_string(unit))}};
}

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitSpec& spec) {
    spec.validate();
    const auto seats = largest_remainder(std::span<const std::uint64_t>(spec.ratios), n);
    return {static_cast<std::size_t>(seats[0]), static_cast<std::size_t>(seats[1]),
            static_cast<std::size_t>(seats[2])};
}

std::size_t emit_jsonl(std::span<const InstructionRecord> records, std::ostream& out) {
    for (const auto& r : records) out << record_to_json(r).dump() << '\n';
    return records.size();
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::runtime, "cannot create " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::runtime, "cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw Error(ErrorKind::runtime, "write failed: " + path.string());
}

} // namespace

std::size_t emit_jsonl(std::span<const InstructionRecord> records, const std::filesystem::path& path) {
    auto out = open_output(path);
    const auto n = emit_jsonl(records, out);
    finish(out, path);
    return n;
}

void write_lines(const std::filesystem::path& path, std::span<const std::string> lines) {
    auto out = open_output(path);
    for (const auto& line : lines) out << line << '\n';
    finish(out, path);
}

std::vector<InstructionRecord> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::vector<InstructionRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path, lineno, e.what());
        } catch (const ValidationError& e) {
            throw ParseError(path, lineno, e.what());
        }
    }
    return records;
}

} // namespace graphcorpus
