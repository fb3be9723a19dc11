#include "graphcorpus/tokenizer.hpp"

#include <gtest/gtest.h>

namespace gc = graphcorpus;

TEST(Tokenizer, UnicodeWordsSplitsPunctuation) {
    const gc::TokenizerConfig cfg;
    EXPECT_EQ(gc::tokenize("cs.LG, fuzzy-logic!", cfg),
              (std::vector<std::string>{"cs", ".", "LG", ",", "fuzzy", "-", "logic", "!"}));
    EXPECT_EQ(gc::count_tokens("", cfg), 0u);
    EXPECT_EQ(gc::count_tokens("   \t\n", cfg), 0u);
}

TEST(Tokenizer, PunctuationCanBeIgnored) {
    gc::TokenizerConfig cfg;
    cfg.count_punctuation = false;
    EXPECT_EQ(gc::count_tokens("cs.LG, fuzzy-logic!", cfg), 4u);
}

TEST(Tokenizer, NonAsciiScripts) {
    const gc::TokenizerConfig cfg;
    EXPECT_EQ(gc::tokenize("naïve Über", cfg), (std::vector<std::string>{"naïve", "Über"}));
    // each ideograph stands alone
    EXPECT_EQ(gc::count_tokens("图学习", cfg), 3u);
    EXPECT_EQ(gc::count_tokens("graph图", cfg), 2u);
}

TEST(Tokenizer, WhitespaceMode) {
    gc::TokenizerConfig cfg;
    cfg.mode = gc::TokenizerMode::whitespace;
    EXPECT_EQ(gc::count_tokens("a b,  c -- d", cfg), 5u);
    cfg.count_punctuation = false;
    EXPECT_EQ(gc::count_tokens("a b,  c -- d", cfg), 4u);
}

TEST(Tokenizer, ConfigJsonRoundTrip) {
    gc::TokenizerConfig cfg;
    cfg.mode = gc::TokenizerMode::whitespace;
    cfg.count_punctuation = false;
    EXPECT_EQ(gc::TokenizerConfig::from_json(cfg.to_json()), cfg);
}

TEST(Tokenizer, ExternalCounter) {
    const gc::Tokenizer tok([](std::string_view s) { return s.size(); });
    EXPECT_TRUE(tok.is_external());
    EXPECT_EQ(tok.count("abcd"), 4u);
}

TEST(Tokenizer, InvalidUtf8DoesNotThrow) {
    const gc::TokenizerConfig cfg;
    EXPECT_NO_THROW((void)gc::count_tokens("ab\xff\xfe cd", cfg));
    EXPECT_EQ(gc::decode_utf8("\xC3\xA9"), std::u32string(U"é"));
}

TEST(Tokenizer, Lowercase) {
    EXPECT_EQ(gc::to_lower("ÜBER Graph ΣΑ"), "über graph σα");
}
