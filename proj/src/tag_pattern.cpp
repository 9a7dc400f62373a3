#include "lexcontrast/tag_pattern.hpp"

#include "lexcontrast/corpus.hpp"

namespace lexcontrast {

namespace {

std::optional<TagPattern::Alt> parse_alt(std::string_view text) {
    TagPattern::Alt alt;
    if (!text.empty() && text.back() == '*') {
        alt.prefix = true;
        text.remove_suffix(1);
    }
    if (text.empty()) return std::nullopt;  // bare `*` or empty alternative
    if (text.find_first_of("()|*_") != std::string_view::npos) return std::nullopt;
    alt.text = std::string(text);
    return alt;
}

}  // namespace

std::optional<TagPattern> TagPattern::parse(std::string_view text) {
    TagPattern p;
    if (text == "_") {
        p.wildcard = true;
        return p;
    }
    if (text.empty()) return std::nullopt;
    if (text.front() == '(') {
        if (text.back() != ')' || text.size() < 3) return std::nullopt;
        std::string_view body = text.substr(1, text.size() - 2);
        while (true) {
            std::size_t bar = body.find('|');
            std::string_view elem = bar == std::string_view::npos ? body : body.substr(0, bar);
            auto alt = parse_alt(elem);
            if (!alt) return std::nullopt;
            p.alts.push_back(std::move(*alt));
            if (bar == std::string_view::npos) break;
            body.remove_prefix(bar + 1);
        }
        return p;
    }
    auto alt = parse_alt(text);
    if (!alt) return std::nullopt;
    p.alts.push_back(std::move(*alt));
    return p;
}

bool TagPattern::matches_tag(std::string_view tag) const {
    if (wildcard) return true;
    for (const Alt& a : alts) {
        if (a.prefix ? tag.starts_with(a.text) : tag == a.text) return true;
    }
    return false;
}

bool TagPattern::matches_token(const Token& tok) const {
    if (wildcard) return true;
    for (const Alt& a : alts) {
        if (a.prefix) {
            if (std::string_view(tok.pos).starts_with(a.text)) return true;
            if (std::string_view(tok.surface).starts_with(a.text)) return true;
        } else {
            if (tok.pos == a.text || tok.surface == a.text) return true;
        }
    }
    return false;
}

std::string TagPattern::render() const {
    if (wildcard) return "_";
    std::string out;
    if (alts.size() > 1) out += '(';
    for (std::size_t i = 0; i < alts.size(); ++i) {
        if (i > 0) out += '|';
        out += alts[i].text;
        if (alts[i].prefix) out += '*';
    }
    if (alts.size() > 1) out += ')';
    return out;
}

}  // namespace lexcontrast
