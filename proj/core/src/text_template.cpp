#include "graphcorpus/text_template.hpp"

#include "graphcorpus/error.hpp"

namespace graphcorpus {
namespace {

// Calls on_literal / on_placeholder for each piece of the template.
template <class Literal, class Placeholder>
void scan(std::string_view text, Literal&& on_literal, Placeholder&& on_placeholder) {
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t open = text.find("{{", i);
        if (open == std::string_view::npos) {
            on_literal(text.substr(i));
            return;
        }
        // "{{{x}}}": the first brace is literal
        while (open + 2 < text.size() && text[open + 2] == '{') ++open;
        on_literal(text.substr(i, open - i));
        std::size_t close = text.find("}}", open + 2);
        if (close == std::string_view::npos)
            throw ValidationError("unterminated placeholder in template: " + std::string(text));
        on_placeholder(text.substr(open + 2, close - open - 2));
        i = close + 2;
    }
}

} // namespace

std::string fill_template(std::string_view text, const PlaceholderLookup& lookup) {
    std::string out;
    out.reserve(text.size());
    scan(
        text, [&](std::string_view lit) { out.append(lit); },
        [&](std::string_view name) {
            auto value = lookup(name);
            if (!value) throw ValidationError("unknown placeholder '{{" + std::string(name) + "}}'");
            out.append(*value);
        });
    return out;
}

std::vector<std::string> template_placeholders(std::string_view text) {
    std::vector<std::string> names;
    scan(text, [](std::string_view) {}, [&](std::string_view name) { names.emplace_back(name); });
    return names;
}

} // namespace graphcorpus
