// Single-attribute matcher shared by sketch-rule atoms and PoS filters:
// a literal (`Na`), a trailing-star prefix (`N*`), an alternation of those
// (`(D|SHI)`), or the wildcard `_`. Tags stay opaque otherwise.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexcontrast {

struct Token;

struct TagPattern {
    struct Alt {
        std::string text;
        bool prefix = false;

        bool operator==(const Alt&) const = default;
    };

    bool wildcard = false;
    std::vector<Alt> alts;

    bool operator==(const TagPattern&) const = default;

    // nullopt on syntax errors (empty text, bad parens, empty alternative,
    // bare `*`).
    static std::optional<TagPattern> parse(std::string_view text);

    bool matches_tag(std::string_view tag) const;
    // Rule atoms match the tag first and fall back to the surface form, so a
    // pattern such as `把*` can anchor a construction by its marker word.
    bool matches_token(const Token& tok) const;

    // Canonical form: single-element alternations lose their parentheses.
    std::string render() const;
};

}  // namespace lexcontrast
