#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphcorpus {

/// Resolves a placeholder name to its text, or nullopt when the name is unknown.
using PlaceholderLookup = std::function<std::optional<std::string>(std::string_view)>;

/// Substitutes `{{name}}` placeholders. Single braces are literal, so
/// "{{{entries}}}" renders the entries wrapped in one pair of braces.
/// Throws ValidationError on an unknown or unterminated placeholder.
std::string fill_template(std::string_view text, const PlaceholderLookup& lookup);

/// Placeholder names in order of appearance.
std::vector<std::string> template_placeholders(std::string_view text);

} // namespace graphcorpus
