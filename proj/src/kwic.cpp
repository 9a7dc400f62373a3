#include "lexcontrast/kwic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lexcontrast {

namespace {

// left context, walking backwards across sentences when allowed
std::vector<Token> gather_left(const Corpus& corpus, const TokenRef& ref,
                               std::uint32_t width, bool cross_sentence) {
    std::vector<Token> out;
    const Document& doc = corpus.documents[ref.document];
    std::size_t sent = ref.sentence;
    std::size_t pos = ref.offset;
    while (out.size() < width) {
        if (pos > 0) {
            --pos;
            out.push_back(doc.sentences[sent].tokens[pos]);
            continue;
        }
        if (!cross_sentence || sent == 0) break;
        --sent;
        pos = doc.sentences[sent].tokens.size();
        if (pos == 0) continue;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<Token> gather_right(const Corpus& corpus, const TokenRef& ref,
                                std::uint32_t width, bool cross_sentence) {
    std::vector<Token> out;
    const Document& doc = corpus.documents[ref.document];
    std::size_t sent = ref.sentence;
    std::size_t pos = ref.offset + 1;
    while (out.size() < width) {
        const auto& tokens = doc.sentences[sent].tokens;
        if (pos < tokens.size()) {
            out.push_back(tokens[pos]);
            ++pos;
            continue;
        }
        if (!cross_sentence || sent + 1 >= doc.sentences.size()) break;
        ++sent;
        pos = 0;
    }
    return out;
}

std::size_t codepoints(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

std::string join_tokens(const std::vector<Token>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out += ' ';
        out += tokens[i].surface;
    }
    return out;
}

}  // namespace

std::vector<KWICLine> concordance(const FrequencyIndex& index, const Corpus& corpus,
                                  std::string_view node, const ConcordanceOptions& opts) {
    if (opts.max_lines < 1)
        throw std::invalid_argument("concordance: max_lines must be at least 1");
    std::vector<KWICLine> out;
    for (const TokenRef& ref : positions(index, node)) {
        const Token& tok = corpus.token_at(ref);
        if (opts.pos_filter && tok.pos != *opts.pos_filter) continue;
        KWICLine line;
        line.left = gather_left(corpus, ref, opts.width, opts.cross_sentence);
        line.node = tok;
        line.right = gather_right(corpus, ref, opts.width, opts.cross_sentence);
        line.location = ref;
        out.push_back(std::move(line));
        if (out.size() >= opts.max_lines) break;
    }
    return out;
}

std::string render_kwic(const std::vector<KWICLine>& lines, unsigned gutter,
                        bool show_pos) {
    std::ostringstream out;
    for (const KWICLine& line : lines) {
        std::string left = join_tokens(line.left);
        std::size_t w = codepoints(left);
        for (std::size_t i = w; i < gutter; ++i) out << ' ';
        out << left << ' ' << line.node.surface;
        if (show_pos) out << '/' << line.node.pos;
        std::string right = join_tokens(line.right);
        if (!right.empty()) out << ' ' << right;
        out << '\n';
    }
    return out.str();
}

std::string render_kwic_tsv(const std::vector<KWICLine>& lines, bool show_pos) {
    std::ostringstream out;
    for (const KWICLine& line : lines) {
        out << join_tokens(line.left) << '\t' << line.node.surface;
        if (show_pos) out << '/' << line.node.pos;
        out << '\t' << join_tokens(line.right) << '\t' << line.location.document << ':'
            << line.location.sentence << ':' << line.location.offset << '\n';
    }
    return out.str();
}

}  // namespace lexcontrast
