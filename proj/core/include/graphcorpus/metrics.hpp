#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graphcorpus {

struct ClassificationEval {
    std::vector<std::string> gold;
    std::vector<std::string> predicted;
    /// Predictions outside this set are scored as the class "other".
    std::vector<std::string> label_set;
};

struct ClassScore {
    std::size_t support = 0;
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t false_negative = 0;
    double f1 = 0.0;
};

struct F1Scores {
    double macro = 0.0;
    double micro = 0.0;
    double weighted = 0.0;
    double accuracy = 0.0;
    std::map<std::string, ClassScore> per_class;
};

inline constexpr std::string_view kOtherLabel = "other";

/// Macro and weighted averages run over classes with gold support only.
/// Throws ValidationError on empty or length-mismatched input.
F1Scores f1_suite(const ClassificationEval& eval);

struct TextPair {
    std::string candidate;
    std::vector<std::string> references;
};

/// Lowercased unicode-word tokens, punctuation included.
std::vector<std::string> metric_tokens(std::string_view text);

struct BleuOptions {
    /// Add one to numerator and denominator of the n >= 2 precisions.
    bool add_one_smoothing = false;
};

/// Corpus-level BLEU-4: clipped n-gram counts summed over the corpus,
/// closest reference length for the brevity penalty.
double bleu4(std::span<const TextPair> pairs, const BleuOptions& options = {});

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// LCS F1 per candidate, best reference, averaged over pairs.
double rouge_l(std::span<const TextPair> pairs);

/// chrF++ sentence score in [0, 1]: character 1..6-grams with whitespace
/// removed plus word 1..2-grams, beta 2, precision and recall averaged over
/// orders present on both sides. Best reference per candidate.
double chrf_pp_sentence(std::string_view candidate, std::span<const std::string> references);
/// Mean sentence chrF++ over pairs, computed on space-joined metric tokens.
double chrf_pp(std::span<const TextPair> pairs);

/// Exact-match unigram METEOR without stemming or synonyms. Alignment is
/// greedy: each candidate token takes the earliest unused equal reference
/// token. Fmean = 10PR / (R + 9P), penalty = 0.5 (chunks / matches)^3.
double meteor_lite_sentence(std::span<const std::string> candidate,
                            std::span<const std::string> reference);
double meteor_lite(std::span<const TextPair> pairs);

} // namespace graphcorpus
