#include "graphcorpus/tokenizer.hpp"

#include "graphcorpus/error.hpp"

namespace graphcorpus {
namespace {

enum class CharClass { space, word, standalone, punct };

constexpr bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

CharClass classify(char32_t c) {
    if (c < 0x80) {
        if (c == ' ' || (c >= 0x09 && c <= 0x0D)) return CharClass::space;
        if (c < 0x20 || c == 0x7F) return CharClass::space;
        if ((c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_')
            return CharClass::word;
        return CharClass::punct;
    }
    if (c == 0x85 || c == 0xA0 || c == 0x1680 || in(c, 0x2000, 0x200D) || c == 0x2028 ||
        c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000 || c == 0xFEFF || in(c, 0x80, 0x9F))
        return CharClass::space;
    if (in(c, 0xA1, 0xBF)) {
        switch (c) {
        case 0xAA: case 0xB2: case 0xB3: case 0xB5: case 0xB9: case 0xBA:
        case 0xBC: case 0xBD: case 0xBE:
            return CharClass::word;
        default:
            return CharClass::punct;
        }
    }
    if (c == 0xD7 || c == 0xF7) return CharClass::punct;
    if (in(c, 0x2010, 0x2027) || in(c, 0x2030, 0x205E) || in(c, 0x20A0, 0x20CF) ||
        in(c, 0x2190, 0x23FF) || in(c, 0x2500, 0x27BF) || in(c, 0x2E00, 0x2E7F) ||
        in(c, 0x3001, 0x3003) || in(c, 0x3008, 0x3011) || in(c, 0x3014, 0x301F) ||
        in(c, 0xFE10, 0xFE1F) || in(c, 0xFE30, 0xFE4F) || in(c, 0xFF01, 0xFF0F) ||
        in(c, 0xFF1A, 0xFF20) || in(c, 0xFF3B, 0xFF40) || in(c, 0xFF5B, 0xFF65) ||
        in(c, 0x1F000, 0x1FAFF))
        return CharClass::punct;
    if (in(c, 0x3040, 0x309F) || in(c, 0x3400, 0x4DBF) || in(c, 0x4E00, 0x9FFF) ||
        in(c, 0xF900, 0xFAFF) || in(c, 0x20000, 0x2FFFF))
        return CharClass::standalone;
    return CharClass::word;
}

// Decodes one code point starting at text[i]; advances i.
char32_t next_code_point(std::string_view text, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(len) > text.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(text[i + static_cast<std::size_t>(k)]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10FFFF || in(cp, 0xD800, 0xDFFF)) {
        ++i;
        return 0xFFFD;
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

// Emits [begin, end) byte ranges for each token.
template <class Emit>
void segment(std::string_view text, const TokenizerConfig& cfg, Emit&& emit) {
    const std::size_t n = text.size();
    std::size_t i = 0;
    if (cfg.mode == TokenizerMode::whitespace) {
        while (i < n) {
            std::size_t start = i;
            char32_t cp = next_code_point(text, i);
            if (classify(cp) == CharClass::space) continue;
            bool has_content = classify(cp) != CharClass::punct;
            std::size_t end = i;
            while (i < n) {
                std::size_t here = i;
                char32_t c = next_code_point(text, i);
                auto cls = classify(c);
                if (cls == CharClass::space) {
                    i = here;
                    break;
                }
                if (cls != CharClass::punct) has_content = true;
                end = i;
            }
            if (has_content || cfg.count_punctuation) emit(start, end);
        }
        return;
    }
    while (i < n) {
        std::size_t start = i;
        char32_t cp = next_code_point(text, i);
        switch (classify(cp)) {
        case CharClass::space:
            break;
        case CharClass::standalone:
            emit(start, i);
            break;
        case CharClass::punct:
            if (cfg.count_punctuation) emit(start, i);
            break;
        case CharClass::word: {
            std::size_t end = i;
            while (i < n) {
                std::size_t here = i;
                if (classify(next_code_point(text, i)) != CharClass::word) {
                    i = here;
                    break;
                }
                end = i;
            }
            emit(start, end);
            break;
        }
        }
    }
}

} // namespace

TokenizerConfig TokenizerConfig::from_json(const nlohmann::json& j) {
    TokenizerConfig cfg;
    if (!j.is_object()) throw ValidationError("tokenizer config must be an object");
    if (auto it = j.find("mode"); it != j.end()) {
        auto mode = it->get<std::string>();
        if (mode == "unicode-words") cfg.mode = TokenizerMode::unicode_words;
        else if (mode == "whitespace") cfg.mode = TokenizerMode::whitespace;
        else throw ValidationError("unknown tokenizer mode '" + mode + "'");
    }
    if (auto it = j.find("count_punctuation"); it != j.end()) cfg.count_punctuation = it->get<bool>();
    return cfg;
}

nlohmann::json TokenizerConfig::to_json() const {
    return {{"mode", mode == TokenizerMode::unicode_words ? "unicode-words" : "whitespace"},
            {"count_punctuation", count_punctuation}};
}

std::size_t count_tokens(std::string_view text, const TokenizerConfig& cfg) {
    std::size_t count = 0;
    segment(text, cfg, [&](std::size_t, std::size_t) { ++count; });
    return count;
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& cfg) {
    std::vector<std::string> tokens;
    segment(text, cfg, [&](std::size_t b, std::size_t e) { tokens.emplace_back(text.substr(b, e - b)); });
    return tokens;
}

std::u32string decode_utf8(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) out.push_back(next_code_point(text, i));
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string to_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        if (static_cast<unsigned char>(text[i]) < 0x80) {
            char c = text[i++];
            out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
            continue;
        }
        char32_t cp = next_code_point(text, i);
        if ((in(cp, 0xC0, 0xDE) && cp != 0xD7) || (in(cp, 0x391, 0x3A9) && cp != 0x3A2) ||
            in(cp, 0x410, 0x42F))
            cp += 0x20;
        else if (in(cp, 0x400, 0x40F))
            cp += 0x50;
        append_utf8(out, cp);
    }
    return out;
}

} // namespace graphcorpus
