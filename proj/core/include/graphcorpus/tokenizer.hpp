#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace graphcorpus {

enum class TokenizerMode {
    /// Maximal runs of letters, digits, marks and '_'; CJK ideographs and
    /// kana stand alone; every punctuation or symbol character is its own
    /// token when punctuation is counted.
    unicode_words,
    /// Whitespace-separated chunks. With punctuation off, chunks made only of
    /// punctuation are dropped.
    whitespace,
};

struct TokenizerConfig {
    TokenizerMode mode = TokenizerMode::unicode_words;
    bool count_punctuation = true;

    static TokenizerConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

std::size_t count_tokens(std::string_view text, const TokenizerConfig& cfg);
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& cfg);

/// Token counter used throughout the pipeline. Wraps the built-in
/// segmentation or an external counting callback (e.g. a model tokenizer).
class Tokenizer {
public:
    using CountFn = std::function<std::size_t(std::string_view)>;

    Tokenizer() = default;
    explicit Tokenizer(TokenizerConfig cfg) : cfg_(cfg) {}
    explicit Tokenizer(CountFn external) : external_(std::move(external)) {}

    std::size_t count(std::string_view text) const {
        return external_ ? external_(text) : count_tokens(text, cfg_);
    }
    const TokenizerConfig& config() const noexcept { return cfg_; }
    bool is_external() const noexcept { return static_cast<bool>(external_); }

private:
    TokenizerConfig cfg_;
    CountFn external_;
};

/// Decodes UTF-8; invalid sequences become U+FFFD.
std::u32string decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);

/// Simple case folding: ASCII, Latin-1, Greek and Cyrillic capitals.
std::string to_lower(std::string_view text);

} // namespace graphcorpus
