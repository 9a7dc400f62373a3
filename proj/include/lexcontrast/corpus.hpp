// Vertical tagged-corpus data model and parser.
//
// The interchange format is line-oriented UTF-8: one token per line as
// `surface<TAB>pos[<TAB>extra...]`, a blank line ends a sentence, `#` starts
// a comment, and a comment of the form `# doc: <id>` opens a new document.
// Columns beyond the second are carried through verbatim and ignored by all
// statistics.

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexcontrast {

struct Token {
    std::string surface;
    std::string pos;
    std::string extra;  // third column onward, verbatim (may contain tabs)

    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::vector<Token> tokens;

    bool operator==(const Sentence&) const = default;
};

struct Document {
    std::string id;            // from `# doc: <id>`, empty for the implicit first document
    bool has_marker = false;   // whether the document was opened by a marker line
    std::vector<Sentence> sentences;

    bool operator==(const Document&) const = default;
};

// Position of a token inside a corpus.
struct TokenRef {
    std::uint32_t document = 0;
    std::uint32_t sentence = 0;
    std::uint32_t offset = 0;

    auto operator<=>(const TokenRef&) const = default;
};

// A corpus is immutable once built. `token_count` equals the sum of all
// sentence lengths, except for metadata-only corpora (name plus a declared
// token count, no text), which exist so keyness can be computed from
// published frequency tables when the underlying text is not available.
struct Corpus {
    std::string name;
    std::vector<Document> documents;
    std::uint64_t token_count = 0;
    bool metadata_only = false;

    static Corpus make_metadata_only(std::string name, std::uint64_t token_count);

    const Sentence& sentence_at(const TokenRef& ref) const;
    const Token& token_at(const TokenRef& ref) const;

    bool same_tokens(const Corpus& other) const;  // token-for-token equality
};

struct Diagnostic {
    std::size_t line = 0;    // 1-based
    std::size_t column = 0;  // 1-based, 0 when not applicable
    std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diags,
                               const std::string& source_name);

struct CorpusParseResult {
    Corpus corpus;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

// Malformed lines produce a diagnostic and are skipped; the parse never
// throws on bad content. Unreadable files throw std::runtime_error.
CorpusParseResult parse_vertical(std::istream& in, std::string corpus_name);
CorpusParseResult parse_vertical_text(std::string_view text, std::string corpus_name);
CorpusParseResult parse_vertical_file(const std::string& path, std::string corpus_name);

void write_vertical(const Corpus& corpus, std::ostream& out);
std::string to_vertical(const Corpus& corpus);

struct CorpusSummary {
    std::uint64_t tokens = 0;
    std::uint64_t sentences = 0;
    std::uint64_t documents = 0;
    std::uint64_t distinct_surfaces = 0;
    // Sorted by descending count, ties broken lexicographically (byte order).
    std::vector<std::pair<std::string, std::uint64_t>> tag_inventory;
};

CorpusSummary corpus_summary(const Corpus& corpus);

}  // namespace lexcontrast
