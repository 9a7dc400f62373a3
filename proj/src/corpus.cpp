#include "lexcontrast/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lexcontrast {

namespace {

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

bool has_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// `# doc: <id>` opens a new document; any other `#` line is a plain comment.
bool parse_doc_marker(std::string_view line, std::string& id_out) {
    std::string_view rest = line.substr(1);
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
    if (!rest.starts_with("doc:")) return false;
    id_out = std::string(trim(rest.substr(4)));
    return true;
}

struct Builder {
    Corpus corpus;
    std::vector<Diagnostic> diagnostics;
    Sentence pending;
    bool have_document = false;

    void ensure_document() {
        if (!have_document) {
            corpus.documents.push_back(Document{});
            have_document = true;
        }
    }

    void flush_sentence() {
        if (pending.tokens.empty()) return;
        ensure_document();
        corpus.token_count += pending.tokens.size();
        corpus.documents.back().sentences.push_back(std::move(pending));
        pending = Sentence{};
    }

    void open_document(std::string id) {
        flush_sentence();
        corpus.documents.push_back(Document{std::move(id), true, {}});
        have_document = true;
    }

    void token_line(std::string_view line, std::size_t lineno) {
        auto fail = [&](std::string msg) {
            diagnostics.push_back({lineno, 0, std::move(msg)});
        };
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            fail("malformed line: expected at least 2 tab-separated fields");
            return;
        }
        std::string_view surface = line.substr(0, tab);
        std::string_view rest = line.substr(tab + 1);
        std::size_t tab2 = rest.find('\t');
        std::string_view pos = tab2 == std::string_view::npos ? rest : rest.substr(0, tab2);
        std::string_view extra = tab2 == std::string_view::npos ? std::string_view{} : rest.substr(tab2 + 1);

        if (surface.empty()) { fail("empty surface field"); return; }
        if (pos.empty()) { fail("empty pos field"); return; }
        if (has_whitespace(surface)) { fail("whitespace in surface field"); return; }
        if (has_whitespace(pos)) { fail("whitespace in pos field"); return; }

        pending.tokens.push_back(Token{std::string(surface), std::string(pos), std::string(extra)});
    }
};

}  // namespace

Corpus Corpus::make_metadata_only(std::string name, std::uint64_t token_count) {
    Corpus c;
    c.name = std::move(name);
    c.token_count = token_count;
    c.metadata_only = true;
    return c;
}

const Sentence& Corpus::sentence_at(const TokenRef& ref) const {
    return documents.at(ref.document).sentences.at(ref.sentence);
}

const Token& Corpus::token_at(const TokenRef& ref) const {
    return sentence_at(ref).tokens.at(ref.offset);
}

bool Corpus::same_tokens(const Corpus& other) const {
    if (documents.size() != other.documents.size()) return false;
    for (std::size_t d = 0; d < documents.size(); ++d)
        if (documents[d].sentences != other.documents[d].sentences) return false;
    return true;
}

CorpusParseResult parse_vertical(std::istream& in, std::string corpus_name) {
    Builder b;
    b.corpus.name = std::move(corpus_name);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) {
            b.flush_sentence();
            continue;
        }
        if (line.front() == '#') {
            std::string id;
            if (parse_doc_marker(line, id)) b.open_document(std::move(id));
            continue;
        }
        b.token_line(line, lineno);
    }
    b.flush_sentence();
    return CorpusParseResult{std::move(b.corpus), std::move(b.diagnostics)};
}

CorpusParseResult parse_vertical_text(std::string_view text, std::string corpus_name) {
    std::istringstream in{std::string(text)};
    return parse_vertical(in, std::move(corpus_name));
}

CorpusParseResult parse_vertical_file(const std::string& path, std::string corpus_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read corpus file: " + path);
    return parse_vertical(in, std::move(corpus_name));
}

void write_vertical(const Corpus& corpus, std::ostream& out) {
    for (const Document& doc : corpus.documents) {
        if (doc.has_marker) {
            out << "# doc:";
            if (!doc.id.empty()) out << ' ' << doc.id;
            out << '\n';
        }
        bool first_sentence = true;
        for (const Sentence& sent : doc.sentences) {
            if (!first_sentence) out << '\n';
            first_sentence = false;
            for (const Token& tok : sent.tokens) {
                out << tok.surface << '\t' << tok.pos;
                if (!tok.extra.empty()) out << '\t' << tok.extra;
                out << '\n';
            }
        }
    }
}

std::string to_vertical(const Corpus& corpus) {
    std::ostringstream out;
    write_vertical(corpus, out);
    return out.str();
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags,
                               const std::string& source_name) {
    std::ostringstream out;
    for (const Diagnostic& d : diags) {
        out << source_name << ':' << d.line;
        if (d.column > 0) out << ':' << d.column;
        out << ": " << d.message << '\n';
    }
    return out.str();
}

CorpusSummary corpus_summary(const Corpus& corpus) {
    CorpusSummary s;
    s.tokens = corpus.token_count;
    s.documents = corpus.documents.size();
    std::set<std::string> surfaces;
    std::map<std::string, std::uint64_t> tags;
    for (const Document& doc : corpus.documents) {
        s.sentences += doc.sentences.size();
        for (const Sentence& sent : doc.sentences) {
            for (const Token& tok : sent.tokens) {
                surfaces.insert(tok.surface);
                ++tags[tok.pos];
            }
        }
    }
    s.distinct_surfaces = surfaces.size();
    s.tag_inventory.assign(tags.begin(), tags.end());
    std::stable_sort(s.tag_inventory.begin(), s.tag_inventory.end(),
                     [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                     });
    return s;
}

}  // namespace lexcontrast
