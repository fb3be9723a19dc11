#include "graphcorpus/metrics.hpp"

#include "graphcorpus/error.hpp"
#include "graphcorpus/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <unordered_map>

namespace graphcorpus {

// ---------------------------------------------------------------- classification

F1Scores f1_suite(const ClassificationEval& eval) {
    if (eval.gold.empty()) throw ValidationError("f1_suite: no predictions");
    if (eval.gold.size() != eval.predicted.size())
        throw ValidationError("f1_suite: " + std::to_string(eval.gold.size()) + " gold labels but " +
                              std::to_string(eval.predicted.size()) + " predictions");

    std::set<std::string> labels(eval.label_set.begin(), eval.label_set.end());
    if (labels.empty()) labels.insert(eval.gold.begin(), eval.gold.end());

    F1Scores s;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < eval.gold.size(); ++i) {
        const std::string& g = eval.gold[i];
        const std::string p =
            labels.contains(eval.predicted[i]) ? eval.predicted[i] : std::string(kOtherLabel);
        ++s.per_class[g].support;
        if (g == p) {
            ++correct;
            ++s.per_class[g].true_positive;
        } else {
            ++s.per_class[g].false_negative;
            ++s.per_class[p].false_positive;
        }
    }

    const double n = static_cast<double>(eval.gold.size());
    std::size_t scored = 0;
    double macro = 0.0, weighted = 0.0;
    for (auto& [label, c] : s.per_class) {
        const auto denom = 2 * c.true_positive + c.false_positive + c.false_negative;
        c.f1 = denom == 0 ? 0.0 : 2.0 * static_cast<double>(c.true_positive) / static_cast<double>(denom);
        if (c.support == 0) continue;
        ++scored;
        macro += c.f1;
        weighted += c.f1 * static_cast<double>(c.support);
    }
    s.macro = macro / static_cast<double>(scored);
    s.weighted = weighted / n;
    const double wrong = n - static_cast<double>(correct);
    s.micro = 2.0 * static_cast<double>(correct) / (2.0 * static_cast<double>(correct) + 2.0 * wrong);
    s.accuracy = static_cast<double>(correct) / n;
    return s;
}

// ---------------------------------------------------------------- text

std::vector<std::string> metric_tokens(std::string_view text) {
    return tokenize(to_lower(text), TokenizerConfig{});
}

namespace {

void check_pairs(std::span<const TextPair> pairs, std::string_view metric) {
    if (pairs.empty()) throw ValidationError(std::string(metric) + ": no pairs");
    for (const auto& p : pairs)
        if (p.references.empty())
            throw ValidationError(std::string(metric) + ": candidate without reference");
}

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts ngrams(const std::vector<std::string>& tokens, std::size_t n) {
    NgramCounts counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (std::size_t k = 1; k < n; ++k) {
            key.push_back('\x1f');
            key += tokens[i + k];
        }
        ++counts[key];
    }
    return counts;
}

template <class F>
double mean_best(std::span<const TextPair> pairs, F&& score) {
    double total = 0.0;
    for (const auto& p : pairs) {
        const auto cand = metric_tokens(p.candidate);
        double best = 0.0;
        if (!cand.empty())
            for (const auto& r : p.references) best = std::max(best, score(cand, metric_tokens(r)));
        total += best;
    }
    return total / static_cast<double>(pairs.size());
}

} // namespace

double bleu4(std::span<const TextPair> pairs, const BleuOptions& options) {
    check_pairs(pairs, "bleu4");
    std::array<std::size_t, 4> matches{}, totals{};
    std::size_t cand_len = 0, ref_len = 0;
    for (const auto& p : pairs) {
        const auto cand = metric_tokens(p.candidate);
        std::vector<std::vector<std::string>> refs;
        for (const auto& r : p.references) refs.push_back(metric_tokens(r));

        cand_len += cand.size();
        std::size_t closest = refs.front().size();
        for (const auto& r : refs) {
            const auto d = [&](std::size_t len) {
                return len > cand.size() ? len - cand.size() : cand.size() - len;
            };
            if (d(r.size()) < d(closest) || (d(r.size()) == d(closest) && r.size() < closest))
                closest = r.size();
        }
        ref_len += closest;

        for (std::size_t n = 1; n <= 4; ++n) {
            const auto c = ngrams(cand, n);
            NgramCounts max_ref;
            for (const auto& r : refs)
                for (const auto& [g, k] : ngrams(r, n)) max_ref[g] = std::max(max_ref[g], k);
            for (const auto& [g, k] : c) {
                totals[n - 1] += k;
                if (auto it = max_ref.find(g); it != max_ref.end())
                    matches[n - 1] += std::min(k, it->second);
            }
        }
    }
    if (cand_len == 0) return 0.0;

    double log_sum = 0.0;
    for (std::size_t n = 0; n < 4; ++n) {
        double m = static_cast<double>(matches[n]), t = static_cast<double>(totals[n]);
        if (options.add_one_smoothing && n > 0) {
            m += 1.0;
            t += 1.0;
        }
        if (m == 0.0 || t == 0.0) return 0.0;
        log_sum += std::log(m / t);
    }
    const double c = static_cast<double>(cand_len), r = static_cast<double>(ref_len);
    const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
    return bp * std::exp(log_sum / 4.0);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double rouge_l(std::span<const TextPair> pairs) {
    check_pairs(pairs, "rouge_l");
    return mean_best(pairs, [](const std::vector<std::string>& c, const std::vector<std::string>& r) {
        const auto lcs = static_cast<double>(lcs_length(c, r));
        if (lcs == 0.0) return 0.0;
        const double p = lcs / static_cast<double>(c.size());
        const double rec = lcs / static_cast<double>(r.size());
        return 2 * p * rec / (p + rec);
    });
}

// ---------------------------------------------------------------- chrF++

namespace {

constexpr std::size_t kCharOrder = 6;
constexpr std::size_t kWordOrder = 2;
constexpr double kBeta = 2.0;

bool is_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f';
}

bool is_ascii_punct(char32_t c) {
    return c < 128 && std::u32string_view(U"!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~").find(c) !=
                          std::u32string_view::npos;
}

std::vector<std::u32string> split_ws(const std::u32string& s) {
    std::vector<std::u32string> words;
    std::u32string cur;
    for (char32_t c : s) {
        if (is_space(c)) {
            if (!cur.empty()) words.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    return words;
}

// Detaches one leading or trailing punctuation character from each word.
std::vector<std::u32string> chrf_words(const std::u32string& s) {
    std::vector<std::u32string> out;
    for (auto& w : split_ws(s)) {
        if (w.size() == 1) {
            out.push_back(w);
        } else if (is_ascii_punct(w.back())) {
            out.push_back(w.substr(0, w.size() - 1));
            out.push_back(w.substr(w.size() - 1));
        } else if (is_ascii_punct(w.front())) {
            out.push_back(w.substr(0, 1));
            out.push_back(w.substr(1));
        } else {
            out.push_back(w);
        }
    }
    return out;
}

using U32Counts = std::unordered_map<std::u32string, std::size_t>;

std::vector<U32Counts> chrf_ngrams(std::string_view text) {
    const std::u32string s = decode_utf8(text);
    std::u32string chars;
    for (char32_t c : s)
        if (!is_space(c)) chars.push_back(c);
    std::vector<U32Counts> out;
    for (std::size_t n = 1; n <= kCharOrder; ++n) {
        U32Counts c;
        for (std::size_t i = 0; i + n <= chars.size(); ++i) ++c[chars.substr(i, n)];
        out.push_back(std::move(c));
    }
    const auto words = chrf_words(s);
    for (std::size_t n = 1; n <= kWordOrder; ++n) {
        U32Counts c;
        for (std::size_t i = 0; i + n <= words.size(); ++i) {
            std::u32string key = words[i];
            for (std::size_t k = 1; k < n; ++k) {
                key.push_back(U' ');
                key += words[i + k];
            }
            ++c[key];
        }
        out.push_back(std::move(c));
    }
    return out;
}

double chrf_score(const std::vector<U32Counts>& hyp, const std::vector<U32Counts>& ref) {
    double avg_p = 0.0, avg_r = 0.0;
    std::size_t effective = 0;
    for (std::size_t i = 0; i < hyp.size(); ++i) {
        std::size_t n_hyp = 0, n_ref = 0, n_match = 0;
        for (const auto& [g, k] : hyp[i]) {
            n_hyp += k;
            if (auto it = ref[i].find(g); it != ref[i].end()) n_match += std::min(k, it->second);
        }
        if (ref[i].empty()) n_hyp = 0;
        for (const auto& [g, k] : ref[i]) n_ref += k;
        if (n_hyp > 0 && n_ref > 0) {
            avg_p += static_cast<double>(n_match) / static_cast<double>(n_hyp);
            avg_r += static_cast<double>(n_match) / static_cast<double>(n_ref);
            ++effective;
        }
    }
    if (effective == 0) return 0.0;
    avg_p /= static_cast<double>(effective);
    avg_r /= static_cast<double>(effective);
    if (avg_p + avg_r == 0.0) return 0.0;
    const double f = kBeta * kBeta;
    return (1 + f) * avg_p * avg_r / (f * avg_p + avg_r);
}

std::string joined_tokens(std::string_view text) {
    std::string out;
    for (const auto& t : metric_tokens(text)) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

} // namespace

double chrf_pp_sentence(std::string_view candidate, std::span<const std::string> references) {
    const auto hyp = chrf_ngrams(candidate);
    double best = 0.0;
    for (const auto& r : references) best = std::max(best, chrf_score(hyp, chrf_ngrams(r)));
    return best;
}

double chrf_pp(std::span<const TextPair> pairs) {
    check_pairs(pairs, "chrf_pp");
    double total = 0.0;
    for (const auto& p : pairs) {
        const std::string cand = joined_tokens(p.candidate);
        if (cand.empty()) continue;
        std::vector<std::string> refs;
        for (const auto& r : p.references) refs.push_back(joined_tokens(r));
        total += chrf_pp_sentence(cand, refs);
    }
    return total / static_cast<double>(pairs.size());
}

// ---------------------------------------------------------------- METEOR-lite

double meteor_lite_sentence(std::span<const std::string> candidate,
                            std::span<const std::string> reference) {
    if (candidate.empty() || reference.empty()) return 0.0;
    std::vector<bool> used(reference.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> alignment;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        for (std::size_t j = 0; j < reference.size(); ++j) {
            if (!used[j] && candidate[i] == reference[j]) {
                used[j] = true;
                alignment.emplace_back(i, j);
                break;
            }
        }
    }
    const auto m = static_cast<double>(alignment.size());
    if (m == 0.0) return 0.0;
    std::size_t chunks = 1;
    for (std::size_t k = 1; k < alignment.size(); ++k)
        if (alignment[k].first != alignment[k - 1].first + 1 ||
            alignment[k].second != alignment[k - 1].second + 1)
            ++chunks;
    const double p = m / static_cast<double>(candidate.size());
    const double r = m / static_cast<double>(reference.size());
    const double fmean = 10 * p * r / (r + 9 * p);
    const double penalty = 0.5 * std::pow(static_cast<double>(chunks) / m, 3.0);
    return fmean * (1 - penalty);
}

double meteor_lite(std::span<const TextPair> pairs) {
    check_pairs(pairs, "meteor_lite");
    return mean_best(pairs, [](const std::vector<std::string>& c, const std::vector<std::string>& r) {
        return meteor_lite_sentence(c, r);
    });
}

} // namespace graphcorpus
